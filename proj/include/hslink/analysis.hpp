#pragma once

#include <json.hpp>

#include "hslink/config.hpp"
#include "hslink/report.hpp"

namespace hslink {

struct AnalysisOutcome {
  nlohmann::json report;
  OutputFiles files;  // report.json and CSV tables per the output formats
  int exit_code = 0;  // 0: all audits pass, 1: an audit failed
};

/// Runs the requested analyses in dependency order and assembles the
/// report and output file contents. No file system side effects; callers
/// persist the files with write_output_files. Throws ConfigError for
/// invalid configuration and NumericalError / DomainError when a stage
/// fails numerically.
AnalysisOutcome run_analysis(const Config& config);

}  // namespace hslink

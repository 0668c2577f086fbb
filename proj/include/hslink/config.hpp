#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hslink/families.hpp"

namespace hslink {

/// Parsed analysis configuration. The on-disk format is line-oriented
/// sections of key = value pairs:
///
///   # comment
///   [immersion]
///   name = homogeneous_torus
///   q = 1/6 1/3 1/2        # vectors are whitespace-separated, fractions ok
///   a = 2 -1 0
///   b = 1 1 -1
///   chart = raw
///
///   [grid]
///   resolution = 64 64      # one entry per link dimension, or one for all
///
///   [tolerances]
///   legendrian = 1e-10      # overrides for named thresholds
///
///   [analyses]
///   run = invariants stationarity hopf hodge classify
///
///   [search]
///   targets = legendrian minimal
///   optimize_weights = false
///   max_iterations = 1000
///   seed = 1
///
///   [output]
///   directory = out
///   formats = json csv
struct Config {
  std::string immersion_name;
  CatalogParams immersion_params;
  std::vector<int> grid = {64, 64};
  std::map<std::string, double> tolerance_overrides;
  std::set<std::string> analyses = {"invariants", "stationarity", "hopf",
                                    "hodge", "classify"};
  SearchTargets search_targets{true, false};
  bool search_optimize_weights = false;
  int search_max_iterations = 1000;
  std::uint64_t seed = 1;
  std::string output_directory;
  bool json_output = true;
  bool csv_output = true;
  int threads = 1;
};

/// Known tolerance names and their default values; config files and --tol
/// flags may only reference these.
const std::map<std::string, double>& tolerance_registry();

/// Resolved thresholds: registry defaults with the overrides applied.
std::map<std::string, double> resolve_tolerances(const Config& config);

/// Parses configuration text. Throws ConfigError on grammar violations,
/// unknown sections/keys/analysis names, resolutions below 8, or unknown
/// tolerance names.
Config parse_config(const std::string& text);

/// Reads and parses a config file; file-system errors become ConfigError.
Config load_config(const std::string& path);

}  // namespace hslink

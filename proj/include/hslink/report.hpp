#pragma once

#include <map>
#include <string>
#include <vector>

namespace hslink {

/// Locale-independent decimal rendering with 17 significant digits
/// (scientific form), enough to round-trip any double bit-exactly.
std::string format_double(double value);

/// One CSV table: a header row and numeric sample rows, rendered with
/// format_double. Every row must match the header width.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::string render() const;
};

/// Analysis artifacts ready to be written: file name -> file content.
using OutputFiles = std::map<std::string, std::string>;

/// Writes each file under the directory, creating it if needed.
/// Filesystem failures throw Error.
void write_output_files(const std::string& directory,
                        const OutputFiles& files);

}  // namespace hslink

#include "hslink/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "hslink/errors.hpp"

namespace hslink {

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::scientific, 16);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buffer, ptr);
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const std::vector<double>& row : rows) {
    if (row.size() != header.size())
      throw Error("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_output_files(const std::string& directory,
                        const OutputFiles& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error("cannot create output directory: " + directory);
  for (const auto& [name, content] : files) {
    const fs::path path = fs::path(directory) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path.string());
    out << content;
    if (!out) throw Error("failed writing output file: " + path.string());
  }
}

}  // namespace hslink

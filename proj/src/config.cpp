#include "hslink/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hslink/errors.hpp"

namespace hslink {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> words;
  std::istringstream stream(s);
  std::string word;
  while (stream >> word) words.push_back(word);
  return words;
}

double parse_number(const std::string& word, const std::string& context) {
  const auto parse_part = [&](const std::string& part) {
    double value = 0;
    const char* begin = part.data();
    const char* end = begin + part.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
      throw ConfigError("cannot parse number '" + part + "' in " + context);
    return value;
  };
  const auto slash = word.find('/');
  if (slash == std::string::npos) return parse_part(word);
  const double denom = parse_part(word.substr(slash + 1));
  if (denom == 0) throw ConfigError("zero denominator in " + context);
  return parse_part(word.substr(0, slash)) / denom;
}

bool parse_bool(const std::string& word, const std::string& context) {
  if (word == "true") return true;
  if (word == "false") return false;
  throw ConfigError("expected true or false for " + context + ", got '" +
                    word + "'");
}

bool looks_numeric(const std::vector<std::string>& words) {
  for (const std::string& w : words) {
    const char c = w[0];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
          c == '+' || c == '.'))
      return false;
  }
  return !words.empty();
}

const std::set<std::string> kAnalysisNames = {
    "invariants", "stationarity", "hopf", "hodge", "classify", "search"};

}  // namespace

const std::map<std::string, double>& tolerance_registry() {
  static const std::map<std::string, double> registry = {
      {"identity", tolerances::kIdentity},
      {"exact", tolerances::kExact},
      {"finite_diff", tolerances::kFiniteDiff},
      {"legendrian", tolerances::kLegendrian},
      {"coarse_scan", tolerances::kCoarseScan},
      {"newton", tolerances::kNewton},
      {"isothermal", tolerances::kIsothermal},
      {"search", tolerances::kSearch},
  };
  return registry;
}

std::map<std::string, double> resolve_tolerances(const Config& config) {
  std::map<std::string, double> resolved = tolerance_registry();
  for (const auto& [name, value] : config.tolerance_overrides)
    resolved[name] = value;
  return resolved;
}

Config parse_config(const std::string& text) {
  Config config;
  std::string section;
  std::istringstream stream(text);
  std::string raw;
  int lineno = 0;
  bool analyses_given = false;

  while (std::getline(stream, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header at " + where);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "immersion" && section != "grid" &&
          section != "tolerances" && section != "analyses" &&
          section != "search" && section != "output")
        throw ConfigError("unknown section [" + section + "] at " + where);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at " + where);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("empty key or value at " + where);
    if (section.empty())
      throw ConfigError("entry outside any section at " + where);

    if (section == "immersion") {
      if (key == "name") {
        config.immersion_name = value;
      } else {
        const std::vector<std::string> words = split_words(value);
        if (looks_numeric(words)) {
          std::vector<double> numbers;
          for (const std::string& w : words)
            numbers.push_back(parse_number(w, where));
          config.immersion_params.vectors[key] = std::move(numbers);
        } else if (words.size() == 1) {
          config.immersion_params.strings[key] = words[0];
        } else {
          throw ConfigError("parameter '" + key + "' at " + where +
                            " is neither a number list nor a single word");
        }
      }
    } else if (section == "grid") {
      if (key != "resolution")
        throw ConfigError("unknown grid key '" + key + "' at " + where);
      config.grid.clear();
      for (const std::string& w : split_words(value)) {
        const double res = parse_number(w, where);
        if (res != std::floor(res) || res < 8)
          throw ConfigError("grid resolutions must be integers >= 8 (" +
                            where + ")");
        config.grid.push_back(static_cast<int>(res));
      }
      if (config.grid.empty())
        throw ConfigError("empty grid resolution at " + where);
    } else if (section == "tolerances") {
      if (!tolerance_registry().count(key))
        throw ConfigError("unknown tolerance '" + key + "' at " + where);
      config.tolerance_overrides[key] = parse_number(value, where);
    } else if (section == "analyses") {
      if (key != "run")
        throw ConfigError("unknown analyses key '" + key + "' at " + where);
      analyses_given = true;
      config.analyses.clear();
      for (const std::string& w : split_words(value)) {
        if (w == "all") {
          config.analyses = kAnalysisNames;
        } else if (kAnalysisNames.count(w)) {
          config.analyses.insert(w);
        } else {
          throw ConfigError("unknown analysis '" + w + "' at " + where);
        }
      }
    } else if (section == "search") {
      if (key == "targets") {
        config.search_targets = {};
        for (const std::string& w : split_words(value)) {
          if (w == "legendrian")
            config.search_targets.legendrian = true;
          else if (w == "minimal")
            config.search_targets.minimal = true;
          else
            throw ConfigError("unknown search target '" + w + "' at " +
                              where);
        }
      } else if (key == "optimize_weights") {
        config.search_optimize_weights = parse_bool(value, where);
      } else if (key == "max_iterations") {
        const double iters = parse_number(value, where);
        if (iters != std::floor(iters) || iters < 1)
          throw ConfigError("max_iterations must be a positive integer (" +
                            where + ")");
        config.search_max_iterations = static_cast<int>(iters);
      } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(parse_number(value, where));
      } else {
        throw ConfigError("unknown search key '" + key + "' at " + where);
      }
    } else {  // output
      if (key == "directory") {
        config.output_directory = value;
      } else if (key == "formats") {
        config.json_output = config.csv_output = false;
        for (const std::string& w : split_words(value)) {
          if (w == "json")
            config.json_output = true;
          else if (w == "csv")
            config.csv_output = true;
          else
            throw ConfigError("unknown output format '" + w + "' at " +
                              where);
        }
      } else {
        throw ConfigError("unknown output key '" + key + "' at " + where);
      }
    }
  }

  if (config.immersion_name.empty())
    throw ConfigError("config must set [immersion] name");
  if (analyses_given && config.analyses.empty())
    throw ConfigError("analyses run list is empty");
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace hslink

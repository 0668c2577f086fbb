#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hslink/analysis.hpp"
#include "hslink/config.hpp"
#include "hslink/errors.hpp"
#include "hslink/families.hpp"

namespace {

using namespace hslink;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tol_overrides;
  int threads = 1;
};

void attach_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("config,--config", args.config_path,
                  "analysis config file")
      ->required();
  sub->add_option("--out", args.out_dir, "output directory");
  sub->add_option("--seed", args.seed, "seed recorded in the report");
  sub->add_option("--tol", args.tol_overrides,
                  "tolerance override name=value (repeatable)");
  sub->add_option("--threads", args.threads, "worker thread count")
      ->check(CLI::PositiveNumber);
}

Config load_with_overrides(const CommonArgs& args) {
  Config config = load_config(args.config_path);
  if (args.seed) config.seed = *args.seed;
  for (const std::string& item : args.tol_overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw ConfigError("--tol expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    if (!tolerance_registry().count(name))
      throw ConfigError("unknown tolerance '" + name + "'");
    try {
      config.tolerance_overrides[name] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse tolerance value in '" + item + "'");
    }
  }
  if (!args.out_dir.empty()) config.output_directory = args.out_dir;
  if (config.output_directory.empty()) {
    const char* env = std::getenv("HSLINK_OUT_DIR");
    config.output_directory = env ? env : ".";
  }
  config.threads = args.threads;
  return config;
}

int finish(const Config& config, const AnalysisOutcome& outcome) {
  write_output_files(config.output_directory, outcome.files);
  std::cout << "wrote " << outcome.files.size() << " file(s) to "
            << config.output_directory << "\n";
  return outcome.exit_code;
}

int cmd_analyze(const CommonArgs& args) {
  const Config config = load_with_overrides(args);
  const AnalysisOutcome outcome = run_analysis(config);
  if (outcome.report.contains("flags")) {
    std::cout << "flags:";
    for (const auto& [name, entry] : outcome.report["flags"].items())
      std::cout << ' ' << name << '='
                << entry["flag"].get<std::string>();
    std::cout << "\n";
  }
  std::cout << "audits " << (outcome.exit_code == 0 ? "PASS" : "FAIL")
            << "\n";
  return finish(config, outcome);
}

int cmd_scan(const CommonArgs& args) {
  Config config = load_with_overrides(args);
  config.analyses = {"hopf"};
  const AnalysisOutcome outcome = run_analysis(config);
  if (outcome.report.at("hopf").is_string()) {
    std::cout << outcome.report.at("hopf").get<std::string>() << "\n";
    return finish(config, outcome);
  }
  const auto& scan = outcome.report.at("hopf").at("scan");
  if (scan.at("everywhere_legendrian").get<bool>()) {
    std::cout << "link is Legendrian everywhere (max f = "
              << scan.at("f_max").get<double>() << ")\n";
  } else {
    const auto& points = scan.at("points");
    std::cout << points.size() << " Legendrian point(s), f range ["
              << scan.at("f_min").get<double>() << ", "
              << scan.at("f_max").get<double>() << "]\n";
    for (const auto& p : points)
      std::cout << "  t = (" << p.at("location")[0].get<double>() << ", "
                << p.at("location")[1].get<double>()
                << ")  multiplicity " << p.at("multiplicity").get<int>()
                << "  index " << p.at("index_prju").get<int>()
                << "  residual " << p.at("residual").get<double>() << "\n";
  }
  return finish(config, outcome);
}

int cmd_audit(const CommonArgs& args) {
  Config config = load_with_overrides(args);
  config.analyses = {"hopf"};
  const AnalysisOutcome outcome = run_analysis(config);
  if (outcome.report.at("hopf").is_string()) {
    std::cout << outcome.report.at("hopf").get<std::string>() << "\n";
    return finish(config, outcome);
  }
  const auto& audit = outcome.report.at("hopf").at("index_audit");
  if (!audit.at("applicable").get<bool>()) {
    std::cout << "genus unknown, audit not applicable\n";
    return finish(config, outcome);
  }
  const auto& scan = outcome.report.at("hopf").at("scan");
  const bool pass = audit.at("pass").get<bool>();
  if (scan.at("everywhere_legendrian").get<bool>()) {
    std::cout << "Legendrian everywhere (vacuous), χ = "
              << audit.at("euler_characteristic").get<int>() << ", audit "
              << (pass ? "PASS" : "FAIL") << "\n";
  } else {
    std::cout << scan.at("points").size() << " Legendrian points, χ = "
              << audit.at("euler_characteristic").get<int>() << ", audit "
              << (pass ? "PASS" : "FAIL") << "\n";
  }
  return finish(config, outcome);
}

int cmd_search(const CommonArgs& args) {
  Config config = load_with_overrides(args);
  config.analyses = {"classify", "search"};
  const AnalysisOutcome outcome = run_analysis(config);
  const auto& search = outcome.report.at("search");
  if (search.is_string()) {
    std::cout << search.get<std::string>() << "\n";
  } else {
    std::cout << (search.at("converged").get<bool>() ? "converged"
                                                     : "did not converge")
              << " after " << search.at("iterations").get<int>()
              << " iteration(s), residual "
              << search.at("residual").get<double>() << "\n";
    std::cout << "q =";
    for (const auto& v : search.at("q")) std::cout << ' ' << v.get<double>();
    std::cout << "\n";
  }
  return finish(config, outcome);
}

int cmd_catalog() {
  for (const CatalogEntry& entry : catalog_entries())
    std::cout << entry.name << "\n    " << entry.params_help << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numerical toolkit for immersed links in odd spheres: isotropy, "
      "Hamiltonian stationarity, Hopf zeros and Lagrangian angles"};
  app.require_subcommand(1);

  CommonArgs analyze_args, scan_args, audit_args, search_args;
  attach_common(app.add_subcommand("analyze", "run the configured analyses"),
                analyze_args);
  attach_common(app.add_subcommand(
                    "scan-legendrian",
                    "scan the deviation f for isolated Legendrian points"),
                scan_args);
  attach_common(app.add_subcommand(
                    "audit-index",
                    "check the Poincaré–Hopf index count of Pr Ju"),
                audit_args);
  attach_common(app.add_subcommand(
                    "search", "damped least-squares search over the "
                              "homogeneous torus family"),
                search_args);
  app.add_subcommand("catalog", "list built-in immersions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("analyze")) return cmd_analyze(analyze_args);
    if (app.got_subcommand("scan-legendrian")) return cmd_scan(scan_args);
    if (app.got_subcommand("audit-index")) return cmd_audit(audit_args);
    if (app.got_subcommand("search")) return cmd_search(search_args);
    return cmd_catalog();
  } catch (const hslink::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

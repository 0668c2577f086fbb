#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hslink/config.hpp"
#include "hslink/errors.hpp"

using namespace hslink;

TEST_CASE("full config round trip") {
  const Config c = parse_config(R"(
# homogeneous torus with fractional weights
[immersion]
name = homogeneous_torus
q = 1/6 1/3 1/2
a = 2 -1 0
b = 1 1 -1
chart = raw

[grid]
resolution = 32 16

[tolerances]
legendrian = 1e-9   # loosen just this one

[analyses]
run = invariants hopf

[search]
targets = legendrian minimal
optimize_weights = true
max_iterations = 250
seed = 42

[output]
directory = results
formats = json
)");
  CHECK(c.immersion_name == "homogeneous_torus");
  REQUIRE(c.immersion_params.vectors.count("q") == 1);
  CHECK(c.immersion_params.vectors.at("q")[0] == doctest::Approx(1.0 / 6));
  CHECK(c.immersion_params.vectors.at("q")[2] == doctest::Approx(0.5));
  CHECK(c.immersion_params.vectors.at("a") ==
        std::vector<double>{2, -1, 0});
  CHECK(c.immersion_params.strings.at("chart") == "raw");
  CHECK(c.grid == std::vector<int>{32, 16});
  CHECK(c.tolerance_overrides.at("legendrian") == doctest::Approx(1e-9));
  CHECK(c.analyses == std::set<std::string>{"invariants", "hopf"});
  CHECK(c.search_targets.legendrian);
  CHECK(c.search_targets.minimal);
  CHECK(c.search_optimize_weights);
  CHECK(c.search_max_iterations == 250);
  CHECK(c.seed == 42);
  CHECK(c.output_directory == "results");
  CHECK(c.json_output);
  CHECK_FALSE(c.csv_output);
}

TEST_CASE("defaults when sections are omitted") {
  const Config c = parse_config("[immersion]\nname = clifford_torus\n");
  CHECK(c.grid == std::vector<int>{64, 64});
  CHECK(c.analyses.count("stationarity") == 1);
  CHECK(c.analyses.count("search") == 0);
  CHECK(c.json_output);
  CHECK(c.csv_output);
  CHECK(c.seed == 1);
}

TEST_CASE("run = all expands to every analysis") {
  const Config c = parse_config(
      "[immersion]\nname = clifford_torus\n[analyses]\nrun = all\n");
  CHECK(c.analyses.size() == 6);
  CHECK(c.analyses.count("search") == 1);
}

TEST_CASE("grammar violations carry line numbers") {
  const auto message_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };

  CHECK(message_of("[immersion]\nname = x\n[grid\n") ==
        "malformed section header at line 3");
  CHECK(message_of("[physics]\n").find("unknown section") == 0);
  CHECK(message_of("[immersion]\nname\n").find("expected key = value") == 0);
  CHECK(message_of("[immersion]\nname =\n").find("empty key or value") == 0);
  CHECK(message_of("name = x\n").find("entry outside any section") == 0);
  CHECK(message_of("[grid]\nspacing = 3\n[immersion]\nname = x\n")
            .find("unknown grid key") == 0);
  CHECK(message_of("[immersion]\nname = x\n[grid]\nresolution = 4\n")
            .find("grid resolutions must be integers >= 8") == 0);
  CHECK(message_of("[immersion]\nname = x\n[grid]\nresolution = 16.5\n")
            .find("grid resolutions must be integers >= 8") == 0);
  CHECK(message_of("[immersion]\nname = x\n[tolerances]\nfoo = 1\n")
            .find("unknown tolerance") == 0);
  CHECK(message_of("[immersion]\nname = x\n[analyses]\nrun = spectra\n")
            .find("unknown analysis") == 0);
  CHECK(message_of("[immersion]\nname = x\n[search]\ntargets = flat\n")
            .find("unknown search target") == 0);
  CHECK(message_of("[immersion]\nname = x\n[search]\nmax_iterations = 0\n")
            .find("max_iterations must be a positive integer") == 0);
  CHECK(message_of("[immersion]\nname = x\n[output]\nformats = yaml\n")
            .find("unknown output format") == 0);
  CHECK(message_of("[immersion]\nname = x\nq = 1/0\n")
            .find("zero denominator") == 0);
  CHECK(message_of("[immersion]\nname = x\nq = 1 2e\n")
            .find("cannot parse number") == 0);
  CHECK(message_of("[output]\ndirectory = x\n")
            .find("config must set [immersion] name") == 0);
}

TEST_CASE("multi-word string parameters are rejected") {
  CHECK_THROWS_AS(
      parse_config("[immersion]\nname = x\nchart = one two\n"), ConfigError);
}

TEST_CASE("tolerance registry resolves overrides") {
  Config c;
  c.tolerance_overrides["newton"] = 1e-8;
  const auto tol = resolve_tolerances(c);
  CHECK(tol.at("newton") == doctest::Approx(1e-8));
  CHECK(tol.at("identity") == doctest::Approx(1e-10));
  CHECK(tolerance_registry().at("newton") == doctest::Approx(1e-12));
}

TEST_CASE("load_config reads files and reports missing ones") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "hslink_cfg_test.ini";
  {
    std::ofstream out(path);
    out << "[immersion]\nname = s3_torus\n";
  }
  const Config c = load_config(path.string());
  CHECK(c.immersion_name == "s3_torus");
  fs::remove(path);
  CHECK_THROWS_AS(load_config(path.string()), ConfigError);
}

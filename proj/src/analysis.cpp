#include "hslink/analysis.hpp"

#include <chrono>
#include <cmath>
#include <optional>

#include "hslink/ambient.hpp"
#include "hslink/errors.hpp"
#include "hslink/geometry.hpp"
#include "hslink/hodge.hpp"
#include "hslink/hopf.hpp"
#include "hslink/parallel.hpp"
#include "hslink/stationarity.hpp"

namespace hslink {

namespace {

using nlohmann::json;

json flag_entry(double residual, const std::string& tol_name, double tol) {
  return json{{"flag", flag_name(flag_from_residual(residual, tol))},
              {"residual", residual},
              {"tolerance_name", tol_name},
              {"tolerance", tol}};
}

/// Everything the grid sweep measures at one parameter point.
struct FieldSweep {
  GridSpec grid;
  std::vector<Eigen::VectorXd> points;
  std::vector<Eigen::VectorXd> alpha;
  std::vector<double> f, S1, S2, div_ju, isotropy, hbar2;
  std::vector<double> unit_error, tangency;

  double max(const std::vector<double>& v) const {
    double worst = 0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
  }
  double min_of(const std::vector<double>& v) const {
    double best = v.empty() ? 0 : v[0];
    for (double x : v) best = std::min(best, x);
    return best;
  }
  double max_of(const std::vector<double>& v) const {
    double best = v.empty() ? 0 : v[0];
    for (double x : v) best = std::max(best, x);
    return best;
  }
};

FieldSweep sweep_fields(const Immersion& imm, const GridSpec& grid,
                        int threads) {
  FieldSweep sweep;
  sweep.grid = grid;
  const long total = grid.total();
  sweep.points.resize(total);
  sweep.alpha.resize(total);
  sweep.f.resize(total);
  sweep.S1.resize(total);
  sweep.S2.resize(total);
  sweep.div_ju.resize(total);
  sweep.isotropy.resize(total);
  sweep.hbar2.resize(total);
  sweep.unit_error.resize(total);
  sweep.tangency.resize(total);

  parallel_for(total, threads, [&](long flat) {
    const Eigen::VectorXd t =
        imm.domain().grid_point(grid, grid.unflatten(flat));
    const Jet jet = imm.jet(t, std::min(3, imm.max_jet_order()));
    sweep.points[flat] = t;
    sweep.alpha[flat] = contact_form(jet);
    sweep.f[flat] = isotropy_deviation(jet);
    sweep.isotropy[flat] = isotropy_residual(jet);
    sweep.div_ju[flat] = div_Ju(jet);
    const StationarityResidual sr = stationarity_residuals(imm, t);
    sweep.S1[flat] = sr.S1;
    sweep.S2[flat] = sr.S2;
    const AmbientVector hbar = sphere_mean_curvature(jet);
    sweep.hbar2[flat] = hbar.squaredNorm();
    sweep.unit_error[flat] = std::abs(jet.u.norm() - 1);
    double tang = 0;
    for (int i = 0; i < jet.dim(); ++i)
      tang = std::max(tang, std::abs(jet.u.dot(jet.d1(i))));
    sweep.tangency[flat] = tang;
  });
  return sweep;
}

class StageTimer {
 public:
  StageTimer(json& timings, std::string name)
      : timings_(timings), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    timings_[name_] =
        std::chrono::duration<double, std::milli>(elapsed).count();
  }

 private:
  json& timings_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

bool in_family(const std::string& name) {
  return name == "clifford_torus" || name == "s3_torus" ||
         name == "homogeneous_torus";
}

}  // namespace

AnalysisOutcome run_analysis(const Config& config) {
  const std::map<std::string, double> tol = resolve_tolerances(config);
  const auto imm =
      make_catalog_immersion(config.immersion_name, config.immersion_params);
  const int m = imm->link_dim();

  GridSpec grid;
  if (config.grid.size() == 1) {
    grid.res.assign(m, config.grid[0]);
  } else if (static_cast<int>(config.grid.size()) == m) {
    grid.res = config.grid;
  } else {
    throw ConfigError("grid resolution needs 1 or " + std::to_string(m) +
                      " entries for this immersion");
  }

  AnalysisOutcome outcome;
  json& report = outcome.report;
  report["schema_version"] = 1;
  report["seed"] = config.seed;
  report["immersion"] = {
      {"name", imm->name()},
      {"link_dim", m},
      {"complex_dim", imm->complex_dim()},
      {"sphere_dim", imm->ambient_dim() - 1},
      {"genus", imm->genus() ? json(*imm->genus()) : json(nullptr)},
  };
  report["grid"] = grid.res;
  report["tolerances"] = tol;
  report["analyses"] = config.analyses;
  report["timings"] = json::object();
  json audits = json::object();

  const bool want_fields = config.analyses.count("invariants") ||
                           config.analyses.count("stationarity") ||
                           config.analyses.count("hodge");
  std::optional<FieldSweep> sweep;
  if (want_fields) {
    StageTimer timer(report["timings"], "field_sweep");
    sweep = sweep_fields(*imm, grid, config.threads);
  }

  if (config.analyses.count("invariants")) {
    StageTimer timer(report["timings"], "invariants");
    const double unit = sweep->max(sweep->unit_error);
    const double tang = sweep->max(sweep->tangency);
    const bool pass = unit <= tol.at("exact") && tang <= tol.at("exact");
    report["invariants"] = {
        {"unit_norm", flag_entry(unit, "exact", tol.at("exact"))},
        {"tangency", flag_entry(tang, "exact", tol.at("exact"))},
    };
    audits["immersion_invariants"] = pass;
  }

  if (config.analyses.count("stationarity")) {
    StageTimer timer(report["timings"], "stationarity");
    const double max_iso = sweep->max(sweep->isotropy);
    const double max_s1 = sweep->max(sweep->S1);
    const double max_s2 = sweep->max(sweep->S2);
    const double max_div = sweep->max(sweep->div_ju);
    const double f_max = sweep->max_of(sweep->f);
    const double hbar_max = std::sqrt(sweep->max_of(sweep->hbar2));
    report["stationarity"] = {
        {"max_isotropy", max_iso},
        {"max_S1", max_s1},
        {"max_S2", max_s2},
        {"max_div_Ju", max_div},
        {"f_min", sweep->min_of(sweep->f)},
        {"f_max", f_max},
        {"hbar_norm_max", hbar_max},
        {"hbar_norm2_max", sweep->max_of(sweep->hbar2)},
    };
    report["flags"] = {
        {"isotropic",
         flag_entry(max_iso, "identity", tol.at("identity"))},
        {"hs_cone", flag_entry(std::max(max_s1, max_s2), "identity",
                               tol.at("identity"))},
        {"legendrian",
         flag_entry(f_max, "legendrian", tol.at("legendrian"))},
        {"minimal", flag_entry(hbar_max, "identity", tol.at("identity"))},
    };
  }

  std::optional<LegendrianScan> scan;
  if (config.analyses.count("hopf")) {
    StageTimer timer(report["timings"], "hopf");
    if (m != 2) {
      report["hopf"] = "not applicable: link is not a surface";
    } else {
      json hopf;
      const IsothermalCheck ic = isothermal_check(*imm, grid);
      hopf["isothermal"] = {
          {"max_residual", ic.max_residual},
          {"conformal_factor", ic.conformal_factor},
          {"flag", flag_name(flag_from_residual(ic.max_residual,
                                                tol.at("isothermal")))},
      };
      if (ic.isothermal(tol.at("isothermal"))) {
        double worst_cr = 0;
        std::vector<double> cr(grid.total());
        parallel_for(grid.total(), config.threads, [&](long flat) {
          const Eigen::VectorXd t =
              imm->domain().grid_point(grid, grid.unflatten(flat));
          cr[flat] = cauchy_riemann_residual(imm->jet(t, 2));
        });
        for (double x : cr) worst_cr = std::max(worst_cr, x);
        hopf["cauchy_riemann"] =
            flag_entry(worst_cr, "identity", tol.at("identity"));
      } else {
        hopf["cauchy_riemann"] = "gated: not isothermal";
      }
      const Eigen::VectorXd t0 = imm->domain().grid_point(grid, {0, 0});
      const std::complex<double> w = hopf_function(imm->jet(t0, 2));
      hopf["w_first_sample"] = {w.real(), w.imag()};

      ScanOptions sopts;
      sopts.sentinel_tol = tol.at("legendrian");
      sopts.coarse_tol = tol.at("coarse_scan");
      sopts.newton_tol = tol.at("newton");
      sopts.threads = config.threads;
      scan = find_legendrian_points(*imm, grid, sopts);
      json points = json::array();
      CsvTable point_table;
      point_table.header = {"t1", "t2", "residual", "refined",
                            "multiplicity", "index_prju"};
      for (const LegendrianPoint& p : scan->points) {
        points.push_back({{"location", {p.location.x(), p.location.y()}},
                          {"residual", p.residual},
                          {"refined", p.refined},
                          {"multiplicity", p.multiplicity},
                          {"index_prju", p.index_prju}});
        point_table.rows.push_back(
            {p.location.x(), p.location.y(), p.residual,
             p.refined ? 1.0 : 0.0, static_cast<double>(p.multiplicity),
             static_cast<double>(p.index_prju)});
      }
      hopf["scan"] = {
          {"everywhere_legendrian", scan->everywhere_legendrian},
          {"f_min", scan->min_f},
          {"f_max", scan->max_f},
          {"points", points},
      };
      const IndexAudit audit = poincare_hopf_audit(*scan, imm->genus());
      hopf["index_audit"] = {
          {"applicable", audit.applicable},
          {"vacuous", audit.vacuous},
          {"pass", audit.pass},
          {"sum_multiplicity", audit.sum_multiplicity},
          {"sum_index", audit.sum_index},
          {"euler_characteristic", audit.euler_characteristic},
      };
      if (audit.applicable) audits["poincare_hopf"] = audit.pass;
      if (config.csv_output)
        outcome.files["legendrian_points.csv"] = point_table.render();
      report["hopf"] = std::move(hopf);
    }
  }

  if (config.analyses.count("hodge")) {
    StageTimer timer(report["timings"], "hodge");
    json hodge;
    double worst_closedness = 0, max_dalpha = 0;
    double worst_route_diff = 0, max_coord = 0, max_closed = 0;
    std::vector<std::array<double, 5>> rows(grid.total());
    parallel_for(grid.total(), config.threads, [&](long flat) {
      const Eigen::VectorXd t =
          imm->domain().grid_point(grid, grid.unflatten(flat));
      const Jet jet = imm->jet(t, 2);
      const double da = d_alpha_residual(jet);
      const DeltaAlpha delta = delta_alpha(jet);
      rows[flat] = {std::abs(da - 2 * isotropy_residual(jet)), da,
                    delta.difference(), std::abs(delta.coordinate_route),
                    std::abs(delta.closed_form)};
    });
    for (const auto& row : rows) {
      worst_closedness = std::max(worst_closedness, row[0]);
      max_dalpha = std::max(max_dalpha, row[1]);
      worst_route_diff = std::max(worst_route_diff, row[2]);
      max_coord = std::max(max_coord, row[3]);
      max_closed = std::max(max_closed, row[4]);
    }
    hodge["d_alpha"] = {
        {"max", max_dalpha},
        {"identity_residual",
         flag_entry(worst_closedness, "exact", tol.at("exact"))},
    };
    hodge["delta_alpha"] = {
        {"route_difference",
         flag_entry(worst_route_diff, "identity", tol.at("identity"))},
        {"max_coordinate_route", max_coord},
        {"max_closed_form", max_closed},
    };
    audits["d_alpha_is_minus_2omega"] = worst_closedness <= tol.at("exact");
    audits["delta_alpha_routes_agree"] =
        worst_route_diff <= tol.at("identity");

    const double f_max = sweep->max_of(sweep->f);
    if (m != imm->complex_dim() - 1) {
      hodge["theta"] = "gated: link dimension is below n - 1";
    } else if (f_max > tol.at("legendrian")) {
      hodge["theta"] = "gated: not everywhere Legendrian";
    } else {
      const ThetaField tf = theta_field(*imm, grid, tol.at("legendrian"));
      const double gradient_check =
          angle_gradient_check(*imm, grid, tol.at("legendrian"));
      const HarmonicityReport harmonicity = theta_harmonicity(*imm, grid);
      json theta = {
          {"min", tf.min},
          {"max", tf.max},
          {"range", tf.max - tf.min},
          {"gradient_check",
           flag_entry(gradient_check, "finite_diff", tol.at("finite_diff"))},
          {"harmonicity_residual",
           flag_entry(harmonicity.max_residual, "identity",
                      tol.at("identity"))},
          {"jh_h_max", harmonicity.jh_h_max},
      };
      if (!harmonicity.periods.empty()) {
        theta["periods"] = harmonicity.periods;
        theta["period_refinement_delta"] =
            harmonicity.period_refinement_delta;
        CsvTable periods;
        periods.header = {"generator", "period"};
        for (std::size_t c = 0; c < harmonicity.periods.size(); ++c)
          periods.rows.push_back(
              {static_cast<double>(c), harmonicity.periods[c]});
        if (config.csv_output)
          outcome.files["periods.csv"] = periods.render();
      }
      if (config.csv_output) {
        CsvTable table;
        table.header = {"t1", "t2", "theta", "branch"};
        for (long flat = 0; flat < grid.total(); ++flat) {
          const Eigen::VectorXd t =
              imm->domain().grid_point(grid, grid.unflatten(flat));
          table.rows.push_back({t(0), t(1), tf.theta[flat],
                                static_cast<double>(tf.branch[flat])});
        }
        outcome.files["theta.csv"] = table.render();
      }
      hodge["theta"] = std::move(theta);
    }
    report["hodge"] = std::move(hodge);
  }

  if (config.analyses.count("classify")) {
    StageTimer timer(report["timings"], "classify");
    if (!in_family(config.immersion_name)) {
      report["classification"] =
          "not applicable: not in the homogeneous torus family";
    } else {
      const HomogeneousTorusParams params = catalog_torus_params(
          config.immersion_name, config.immersion_params);
      const FamilyClassification c = classify_family_member(params);
      report["classification"] = {
          {"isotropic", c.isotropic},
          {"legendrian", c.legendrian},
          {"minimal", c.minimal},
          {"f_value", c.f_value},
          {"hbar_norm2", c.hbar_norm2},
          {"lambda", {c.lambda(0), c.lambda(1), c.lambda(2)}},
          {"cross_check_residual", c.cross_check_residual},
      };
    }
  }

  if (config.analyses.count("search")) {
    StageTimer timer(report["timings"], "search");
    if (!in_family(config.immersion_name)) {
      report["search"] =
          "not applicable: not in the homogeneous torus family";
    } else {
      const HomogeneousTorusParams init = catalog_torus_params(
          config.immersion_name, config.immersion_params);
      SearchOptions sopts;
      sopts.targets = config.search_targets;
      sopts.optimize_weights = config.search_optimize_weights;
      sopts.max_iterations = config.search_max_iterations;
      sopts.tol = tol.at("search");
      const SearchResult result = search_legendrian_hs(init, sopts);
      report["search"] = {
          {"converged", result.converged},
          {"residual", result.residual},
          {"iterations", result.iterations},
          {"weights_snapped", result.weights_snapped},
          {"q", vector_json(result.params.q)},
          {"a", vector_json(result.params.a)},
          {"b", vector_json(result.params.b)},
      };
      if (config.csv_output) {
        CsvTable trace;
        trace.header = {"iteration", "residual", "damping"};
        for (const SearchTraceRow& row : result.trace)
          trace.rows.push_back({static_cast<double>(row.iteration),
                                row.residual, row.damping});
        outcome.files["search_trace.csv"] = trace.render();
      }
    }
  }

  if (config.csv_output && want_fields) {
    CsvTable fields;
    for (int i = 0; i < m; ++i)
      fields.header.push_back("t" + std::to_string(i + 1));
    fields.header.push_back("f");
    for (int i = 0; i < m; ++i)
      fields.header.push_back("alpha" + std::to_string(i + 1));
    fields.header.insert(fields.header.end(),
                         {"S1", "S2", "div_Ju", "hbar_norm2"});
    for (long flat = 0; flat < grid.total(); ++flat) {
      std::vector<double> row;
      for (int i = 0; i < m; ++i) row.push_back(sweep->points[flat](i));
      row.push_back(sweep->f[flat]);
      for (int i = 0; i < m; ++i) row.push_back(sweep->alpha[flat](i));
      row.push_back(sweep->S1[flat]);
      row.push_back(sweep->S2[flat]);
      row.push_back(sweep->div_ju[flat]);
      row.push_back(sweep->hbar2[flat]);
      fields.rows.push_back(std::move(row));
    }
    outcome.files["fields.csv"] = fields.render();
  }

  report["audits"] = audits;
  bool all_pass = true;
  for (const auto& [_, pass] : audits.items())
    all_pass = all_pass && pass.get<bool>();
  report["audits_pass"] = all_pass;
  outcome.exit_code = all_pass ? 0 : 1;

  if (config.json_output)
    outcome.files["report.json"] = report.dump(2) + "\n";
  return outcome;
}

}  // namespace hslink

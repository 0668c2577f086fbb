#include "hslink/families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hslink/errors.hpp"
#include "hslink/geometry.hpp"
#include "hslink/stationarity.hpp"

namespace hslink {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

Eigen::Vector2d weight(const HomogeneousTorusParams& p, int k) {
  return {p.a(k), p.b(k)};
}

}  // namespace

Eigen::Matrix2d HomogeneousTorusParams::metric() const {
  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector2d w = weight(*this, k);
    g += q(k) * w * w.transpose();
  }
  return g;
}

Eigen::Vector3d HomogeneousTorusParams::eigenvalues() const {
  const Eigen::Matrix2d g = metric();
  const double det = g.determinant();
  if (det < 1e-12)
    throw NumericalError("homogeneous torus metric is degenerate");
  const Eigen::Matrix2d ginv = g.inverse();
  Eigen::Vector3d lambda;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector2d w = weight(*this, k);
    lambda(k) = w.dot(ginv * w);
  }
  return lambda;
}

Eigen::Vector2d HomogeneousTorusParams::alpha() const {
  return {a.dot(q), b.dot(q)};
}

void HomogeneousTorusParams::validate() const {
  if (std::abs(q.sum() - 1.0) > 1e-14)
    throw DomainError("squared radii must sum to 1");
  if (q.minCoeff() < 0) throw DomainError("squared radii must be nonnegative");
  Eigen::Matrix<double, 2, 3> w;
  w.row(0) = a.transpose();
  w.row(1) = b.transpose();
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(w);
  if (svd.singularValues()(1) < 1e-10)
    throw DomainError("weight matrix [a; b] must have rank 2");
  const Eigen::Matrix2d g = metric();
  if (g.determinant() < 1e-12 || g.trace() <= 0)
    throw DomainError("induced metric is not positive definite");
}

std::unique_ptr<PhaseImmersion> HomogeneousTorusParams::to_immersion(
    const std::string& name) const {
  validate();
  std::vector<double> radii(3);
  std::vector<QuadraticPhase> phases(3);
  for (int k = 0; k < 3; ++k) {
    if (std::abs(a(k) - std::round(a(k))) > 1e-9 ||
        std::abs(b(k) - std::round(b(k))) > 1e-9)
      throw DomainError(
          "weights must be integers to close up into a torus immersion");
    radii[k] = std::sqrt(q(k));
    phases[k].lin = Eigen::Vector2d(std::round(a(k)), std::round(b(k)));
    phases[k].quad = Eigen::Matrix2d::Zero();
  }
  return std::make_unique<PhaseImmersion>(
      name, Domain::torus(kTwoPi * Eigen::Matrix2d::Identity()), radii,
      phases, 1);
}

HomogeneousTorusParams random_torus_params(Rng& rng) {
  HomogeneousTorusParams p;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Uniform draw on the simplex: differences of sorted uniforms.
    double u1 = rng.uniform(), u2 = rng.uniform();
    if (u1 > u2) std::swap(u1, u2);
    p.q = Eigen::Vector3d(u1, u2 - u1, 1 - u2);
    // Keep all components active so rank of the full weight matrix is the
    // right nondegeneracy condition.
    if (p.q.minCoeff() < 0.05) continue;
    for (int k = 0; k < 3; ++k) {
      p.a(k) = rng.uniform_int(-3, 3);
      p.b(k) = rng.uniform_int(-3, 3);
    }
    try {
      p.validate();
      return p;
    } catch (const DomainError&) {
      continue;
    }
  }
  throw NumericalError("failed to draw valid torus parameters");
}

FamilyClassification classify_family_member(const HomogeneousTorusParams& p,
                                            int grid_res) {
  p.validate();
  FamilyClassification out;
  out.lambda = p.eigenvalues();
  const Eigen::Vector2d alpha = p.alpha();
  out.legendrian = std::abs(alpha(0)) <= tolerances::kExact &&
                   std::abs(alpha(1)) <= tolerances::kExact;
  out.minimal = true;
  out.hbar_norm2 = 0;
  for (int k = 0; k < 3; ++k) {
    const double gap = 2 - out.lambda(k);
    out.hbar_norm2 += gap * gap * p.q(k);
    if (p.q(k) > 1e-12 && std::abs(gap) > tolerances::kExact)
      out.minimal = false;
  }
  out.f_value = alpha.dot(p.metric().inverse() * alpha);

  // Cross-check the algebra against the sampled geometry.
  const auto imm = p.to_immersion("family_member");
  const GridSpec grid{{grid_res, grid_res}};
  double worst = 0;
  for (long flat = 0; flat < grid.total(); ++flat) {
    const Eigen::VectorXd t =
        imm->domain().grid_point(grid, grid.unflatten(flat));
    const Jet jet = imm->jet(t, 3);
    worst = std::max(worst, isotropy_residual(jet));
    worst = std::max(worst,
                     (contact_form(jet) - alpha).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(isotropy_deviation(jet) - out.f_value));
    const StationarityResidual sr = stationarity_residuals(*imm, t);
    worst = std::max(worst, std::abs(sr.S1));
    worst = std::max(worst, std::abs(sr.S2));
  }
  out.cross_check_residual = worst;
  if (worst > 1e-10)
    throw NumericalError(
        "family classification disagrees with sampled residuals (" +
        std::to_string(worst) + ")");
  return out;
}

namespace {

Eigen::VectorXd simplex_project(const Eigen::VectorXd& v) {
  // Euclidean projection onto {q >= 0, sum q = 1}.
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0;
  double tau = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0) tau = candidate;
  }
  return (v.array() - tau).max(0.0);
}

struct ResidualMap {
  SearchTargets targets;
  bool optimize_weights = false;

  Eigen::VectorXd pack(const HomogeneousTorusParams& p) const {
    Eigen::VectorXd x(optimize_weights ? 9 : 3);
    x.head(3) = p.q;
    if (optimize_weights) {
      x.segment(3, 3) = p.a;
      x.tail(3) = p.b;
    }
    return x;
  }

  HomogeneousTorusParams unpack(const Eigen::VectorXd& x,
                                const HomogeneousTorusParams& base) const {
    HomogeneousTorusParams p = base;
    p.q = x.head(3);
    if (optimize_weights) {
      p.a = x.segment(3, 3);
      p.b = x.tail(3);
    }
    return p;
  }

  Eigen::VectorXd project(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out = x;
    out.head(3) = simplex_project(x.head(3));
    return out;
  }

  /// Residual vector; throws NumericalError when the metric degenerates.
  Eigen::VectorXd operator()(const HomogeneousTorusParams& p) const {
    Eigen::VectorXd r(size());
    Eigen::Index at = 0;
    if (targets.legendrian) {
      const Eigen::Vector2d alpha = p.alpha();
      r(at++) = alpha(0);
      r(at++) = alpha(1);
    }
    if (targets.minimal) {
      const Eigen::Vector3d lambda = p.eigenvalues();
      for (int k = 0; k < 3; ++k) r(at++) = lambda(k) - 2;
    }
    return r;
  }

  Eigen::Index size() const {
    return (targets.legendrian ? 2 : 0) + (targets.minimal ? 3 : 0);
  }
};

Eigen::MatrixXd central_jacobian(const ResidualMap& map,
                                 const HomogeneousTorusParams& base,
                                 const Eigen::VectorXd& x) {
  const double h = 1e-6;
  Eigen::MatrixXd jac(map.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    jac.col(j) = (map(map.unpack(xp, base)) - map(map.unpack(xm, base))) /
                 (2 * h);
  }
  return jac;
}

}  // namespace

SearchResult search_legendrian_hs(const HomogeneousTorusParams& init,
                                  const SearchOptions& opts) {
  SearchResult result;
  result.params = init;
  result.params.q = simplex_project(init.q);
  if (opts.targets.empty()) {
    result.converged = true;
    return result;
  }

  const ResidualMap map{opts.targets, opts.optimize_weights};
  Eigen::VectorXd x = map.pack(result.params);
  Eigen::VectorXd r = map(map.unpack(x, init));
  double norm = r.norm();
  double damping = opts.initial_damping;

  int iter = 0;
  for (; iter < opts.max_iterations && norm > opts.tol; ++iter) {
    const Eigen::MatrixXd jac = central_jacobian(map, init, x);
    const Eigen::MatrixXd normal =
        jac.transpose() * jac +
        damping * Eigen::MatrixXd::Identity(x.size(), x.size());
    const Eigen::VectorXd step = normal.ldlt().solve(-jac.transpose() * r);
    const Eigen::VectorXd candidate = map.project(x + step);
    bool downhill = false;
    Eigen::VectorXd r_new;
    try {
      r_new = map(map.unpack(candidate, init));
      downhill = r_new.norm() < norm;
    } catch (const NumericalError&) {
      downhill = false;  // degenerate metric: treat as an uphill step
    }
    if (downhill) {
      x = candidate;
      r = r_new;
      norm = r.norm();
      damping = std::max(damping / 2, 1e-12);
    } else {
      damping *= 2;
      if (damping > 1e12) break;
    }
    result.trace.push_back({iter + 1, norm, damping});
  }

  result.params = map.unpack(x, init);
  result.residual = norm;
  result.iterations = iter;
  result.converged = norm <= opts.tol;

  if (opts.optimize_weights && opts.snap_weights) {
    HomogeneousTorusParams snapped = result.params;
    snapped.a = snapped.a.array().round();
    snapped.b = snapped.b.array().round();
    SearchOptions requant = opts;
    requant.optimize_weights = false;
    requant.snap_weights = false;
    const SearchResult refit = search_legendrian_hs(snapped, requant);
    if (refit.converged) {
      result.params = refit.params;
      result.residual = refit.residual;
      result.converged = true;
      result.weights_snapped = true;
      result.trace.insert(result.trace.end(), refit.trace.begin(),
                          refit.trace.end());
    }
  }
  return result;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"great_sphere", "chart = latlong | mercator | rotated"},
      {"clifford_torus", "chart = raw | isothermal"},
      {"s3_torus", "chart = raw | isothermal"},
      {"homogeneous_torus",
       "q = q1 q2 q3 (sum 1), a = a1 a2 a3, b = b1 b2 b3 (integers), "
       "chart = raw | isothermal"},
  };
  return entries;
}

namespace {

std::string take_string(CatalogParams& params, const std::string& key,
                        const std::string& fallback) {
  const auto it = params.strings.find(key);
  if (it == params.strings.end()) return fallback;
  const std::string value = it->second;
  params.strings.erase(it);
  return value;
}

Eigen::Vector3d take_vector3(CatalogParams& params, const std::string& key) {
  const auto it = params.vectors.find(key);
  if (it == params.vectors.end())
    throw ConfigError("homogeneous_torus requires parameter '" + key + "'");
  if (it->second.size() != 3)
    throw ConfigError("parameter '" + key + "' must have 3 entries");
  const Eigen::Vector3d v(it->second[0], it->second[1], it->second[2]);
  params.vectors.erase(it);
  return v;
}

void reject_leftovers(const CatalogParams& params, const std::string& name) {
  for (const auto& [key, _] : params.vectors)
    throw ConfigError("unknown parameter '" + key + "' for " + name);
  for (const auto& [key, _] : params.strings)
    throw ConfigError("unknown parameter '" + key + "' for " + name);
}

std::unique_ptr<Immersion> with_chart(std::unique_ptr<PhaseImmersion> torus,
                                      const std::string& chart) {
  if (chart == "raw") return torus;
  if (chart == "isothermal") {
    auto variant = torus->isothermal_variant();
    if (!variant)
      throw ConfigError("no isothermal chart for this immersion");
    return variant;
  }
  throw ConfigError("unknown torus chart '" + chart +
                    "' (expected raw or isothermal)");
}

HomogeneousTorusParams named_params(const std::string& name) {
  HomogeneousTorusParams p;
  if (name == "clifford_torus") {
    p.q = Eigen::Vector3d(1. / 3, 1. / 3, 1. / 3);
    p.a = Eigen::Vector3d(1, 0, -1);
    p.b = Eigen::Vector3d(0, 1, -1);
  } else {  // s3_torus
    p.q = Eigen::Vector3d(0.5, 0.5, 0);
    p.a = Eigen::Vector3d(1, 0, 0);
    p.b = Eigen::Vector3d(0, 1, 0);
  }
  return p;
}

}  // namespace

HomogeneousTorusParams catalog_torus_params(const std::string& name,
                                            const CatalogParams& params) {
  if (name == "clifford_torus" || name == "s3_torus") return named_params(name);
  if (name == "homogeneous_torus") {
    CatalogParams rest = params;
    HomogeneousTorusParams p;
    p.q = take_vector3(rest, "q");
    p.a = take_vector3(rest, "a");
    p.b = take_vector3(rest, "b");
    return p;
  }
  throw ConfigError("'" + name +
                    "' is not in the homogeneous torus family");
}

std::unique_ptr<Immersion> make_catalog_immersion(const std::string& name,
                                                  const CatalogParams& params) {
  CatalogParams rest = params;
  if (name == "great_sphere") {
    const std::string chart = take_string(rest, "chart", "latlong");
    reject_leftovers(rest, name);
    try {
      return std::make_unique<GreatSphereImmersion>(chart);
    } catch (const DomainError& err) {
      throw ConfigError(err.what());
    }
  }
  if (name == "clifford_torus" || name == "s3_torus" ||
      name == "homogeneous_torus") {
    const HomogeneousTorusParams p = catalog_torus_params(name, rest);
    rest.vectors.erase("q");
    rest.vectors.erase("a");
    rest.vectors.erase("b");
    const std::string chart = take_string(rest, "chart", "raw");
    reject_leftovers(rest, name);
    try {
      return with_chart(p.to_immersion(name), chart);
    } catch (const DomainError& err) {
      throw ConfigError(err.what());
    }
  }
  throw ConfigError("unknown catalog immersion '" + name + "'");
}

}  // namespace hslink

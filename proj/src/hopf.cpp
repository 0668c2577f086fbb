#include "hslink/hopf.hpp"

#include <algorithm>
#include <cmath>

#include "hslink/ambient.hpp"
#include "hslink/errors.hpp"
#include "hslink/geometry.hpp"
#include "hslink/parallel.hpp"

namespace hslink {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

void require_surface(const Immersion& imm, const char* what) {
  if (imm.link_dim() != 2)
    throw DomainError(std::string(what) + " requires a surface link (m = 2)");
}

}  // namespace

IsothermalCheck isothermal_check(const Immersion& imm, const GridSpec& grid) {
  require_surface(imm, "isothermal_check");
  const long total = grid.total();
  std::vector<double> residual(total);
  IsothermalCheck out;
  for (long flat = 0; flat < total; ++flat) {
    const Eigen::VectorXd t =
        imm.domain().grid_point(grid, grid.unflatten(flat));
    const MetricData md = induced_metric(imm.jet(t, 2));
    residual[flat] = (std::abs(md.g(0, 0) - md.g(1, 1)) +
                      2 * std::abs(md.g(0, 1))) /
                     (md.g(0, 0) + md.g(1, 1));
    if (flat == 0) out.conformal_factor = md.g(0, 0);
  }
  out.max_residual = *std::max_element(residual.begin(), residual.end());
  return out;
}

std::complex<double> hopf_function(const Jet& jet) {
  if (jet.dim() != 2)
    throw DomainError("hopf_function requires a surface link (m = 2)");
  const Eigen::VectorXd alpha = contact_form(jet);
  return {alpha(0) / 2, -alpha(1) / 2};
}

double cauchy_riemann_residual(const Jet& jet) {
  if (jet.dim() != 2)
    throw DomainError("cauchy_riemann_residual requires a surface link");
  const Eigen::Matrix2d d = contact_form_jacobian(jet);
  // dw/dt_j = (d_j alpha_1 - i d_j alpha_2)/2; the zbar derivative is
  // (d_1 w + i d_2 w)/2.
  const std::complex<double> w1(d(0, 0) / 2, -d(1, 0) / 2);
  const std::complex<double> w2(d(0, 1) / 2, -d(1, 1) / 2);
  return std::abs((w1 + std::complex<double>(0, 1) * w2) / 2.0);
}

int winding_number(
    const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& field,
    const Eigen::Vector2d& center, double rho, int samples) {
  if (samples < 8) throw DomainError("winding_number needs at least 8 samples");
  std::vector<double> angle(samples);
  for (int j = 0; j < samples; ++j) {
    const double psi = kTwoPi * j / samples;
    const Eigen::Vector2d v = field(
        center + rho * Eigen::Vector2d(std::cos(psi), std::sin(psi)));
    if (v.norm() < 1e-13)
      throw AmbiguousWindingError(
          "field nearly vanishes on the winding circle");
    angle[j] = std::atan2(v.y(), v.x());
  }
  double total = 0;
  for (int j = 0; j < samples; ++j) {
    const double step =
        std::remainder(angle[(j + 1) % samples] - angle[j], kTwoPi);
    if (std::abs(step) > kTwoPi / 4)
      throw AmbiguousWindingError(
          "field direction jumps by more than a quarter turn between "
          "winding samples");
    total += step;
  }
  const double winding = total / kTwoPi;
  const double rounded = std::round(winding);
  if (std::abs(total - rounded * kTwoPi) > 0.1)
    throw AmbiguousWindingError(
        "total rotation is not close to a multiple of 2 pi");
  return static_cast<int>(rounded);
}

LegendrianPointIndex point_index(const Immersion& imm,
                                 const Eigen::Vector2d& center, double rho,
                                 int samples) {
  require_surface(imm, "point_index");
  const auto field = [&](const Eigen::Vector2d& t) {
    const Eigen::VectorXd alpha = contact_form(imm.jet(t, 2));
    return Eigen::Vector2d(alpha(0), -alpha(1));
  };
  LegendrianPointIndex idx;
  idx.multiplicity = winding_number(field, center, rho, samples);
  idx.index_prju = -idx.multiplicity;
  return idx;
}

namespace {

/// Newton iteration on alpha(t) = 0 from a grid candidate. Leaves the point
/// unrefined when the Jacobian degenerates or the iteration walks out of a
/// chart.
LegendrianPoint refine_candidate(const Immersion& imm, Eigen::Vector2d t,
                                 const ScanOptions& opts) {
  LegendrianPoint p;
  for (int iter = 0; iter < opts.newton_max_iterations; ++iter) {
    const Jet jet = imm.jet(t, 2);
    const Eigen::Vector2d alpha = contact_form(jet);
    if (alpha.lpNorm<Eigen::Infinity>() <= opts.newton_tol) {
      p.refined = true;
      break;
    }
    const Eigen::Matrix2d jac = contact_form_jacobian(jet);
    if (std::abs(jac.determinant()) < 1e-14) break;
    const Eigen::Vector2d next = t - jac.inverse() * alpha;
    if (!imm.domain().contains(next)) break;
    t = next;
  }
  p.location = t;
  p.residual = contact_form(imm.jet(t, 2)).lpNorm<Eigen::Infinity>();
  return p;
}

Eigen::Vector2d canonical_torus_point(const Domain& dom,
                                      const Eigen::Vector2d& t) {
  if (dom.kind() != Domain::Kind::torus) return t;
  Eigen::Vector2d frac = dom.lattice().inverse() * t;
  for (int d = 0; d < 2; ++d) frac(d) -= std::floor(frac(d));
  return dom.lattice() * frac;
}

}  // namespace

LegendrianScan find_legendrian_points(const Immersion& imm,
                                      const GridSpec& grid,
                                      const ScanOptions& opts) {
  require_surface(imm, "find_legendrian_points");
  const Domain& dom = imm.domain();
  const long total = grid.total();
  std::vector<double> f(total);
  parallel_for(total, opts.threads, [&](long flat) {
    const Eigen::VectorXd t = dom.grid_point(grid, grid.unflatten(flat));
    f[flat] = isotropy_deviation(imm.jet(t, 2));
  });

  LegendrianScan scan;
  scan.min_f = *std::min_element(f.begin(), f.end());
  scan.max_f = *std::max_element(f.begin(), f.end());
  if (scan.max_f <= opts.sentinel_tol) {
    scan.everywhere_legendrian = true;
    return scan;
  }

  const int n0 = grid.res[0], n1 = grid.res[1];
  const bool wrap = dom.kind() == Domain::Kind::torus;
  std::vector<Eigen::Vector2d> candidates;
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j) {
      const double fc = f[static_cast<long>(i) * n1 + j];
      if (fc >= opts.coarse_tol) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1 && is_min; ++dj) {
          if (di == 0 && dj == 0) continue;
          int ni = i + di, nj = j + dj;
          if (wrap) {
            ni = (ni + n0) % n0;
            nj = (nj + n1) % n1;
          } else if (ni < 0 || ni >= n0 || nj < 0 || nj >= n1) {
            continue;
          }
          if (f[static_cast<long>(ni) * n1 + nj] < fc) is_min = false;
        }
      if (is_min)
        candidates.push_back(dom.grid_point(grid, {i, j}));
    }

  const double cell = dom.min_cell_extent(grid);
  std::vector<LegendrianPoint> points;
  for (const Eigen::Vector2d& c : candidates) {
    LegendrianPoint p = refine_candidate(imm, c, opts);
    p.location = canonical_torus_point(dom, p.location);
    const bool duplicate =
        std::any_of(points.begin(), points.end(), [&](const auto& q) {
          return dom.wrap_difference(p.location, q.location).norm() < cell;
        });
    if (!duplicate) points.push_back(std::move(p));
  }

  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.location.x(), a.location.y()) <
           std::make_pair(b.location.x(), b.location.y());
  });
  for (LegendrianPoint& p : points) {
    const LegendrianPointIndex idx = point_index(imm, p.location, cell / 2,
                                                 opts.winding_samples);
    p.multiplicity = idx.multiplicity;
    p.index_prju = idx.index_prju;
  }
  scan.points = std::move(points);
  return scan;
}

IndexAudit poincare_hopf_audit(const LegendrianScan& scan,
                               std::optional<int> genus) {
  IndexAudit audit;
  if (!genus.has_value()) return audit;
  audit.applicable = true;
  audit.euler_characteristic = 2 - 2 * *genus;
  if (scan.everywhere_legendrian) {
    // The zero set is the whole surface: no isolated zeros to count.
    audit.vacuous = true;
    audit.pass = true;
    return audit;
  }
  for (const LegendrianPoint& p : scan.points) {
    audit.sum_multiplicity += p.multiplicity;
    audit.sum_index += p.index_prju;
  }
  audit.pass = audit.sum_index == audit.euler_characteristic &&
               audit.sum_multiplicity == 2 * *genus - 2;
  return audit;
}

}  // namespace hslink

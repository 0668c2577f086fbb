#include "hslink/hodge.hpp"

#include <cmath>

#include "hslink/ambient.hpp"
#include "hslink/errors.hpp"
#include "hslink/geometry.hpp"

namespace hslink {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace

Eigen::VectorXd alpha_form(const Jet& jet) { return contact_form(jet); }

double d_alpha_residual(const Jet& jet) {
  const Eigen::MatrixXd d = contact_form_jacobian(jet);
  double worst = 0;
  const int m = jet.dim();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      worst = std::max(worst, std::abs(d(i, j) - d(j, i)));
  return worst;
}

DeltaAlpha delta_alpha(const Jet& jet) {
  const int m = jet.dim();
  const MetricData md = induced_metric(jet);
  const Eigen::VectorXd alpha = contact_form(jet);
  const Eigen::MatrixXd dalpha = contact_form_jacobian(jet);

  // Coordinate route: -(1/sqrt g) d_j (sqrt g g^{jk} alpha_k), with
  // d_j sqrt(g)/sqrt(g) = tr(g^{-1} d_j g)/2 and
  // d_j g^{-1} = -g^{-1} (d_j g) g^{-1}.
  double div = 0;
  for (int j = 0; j < m; ++j) {
    Eigen::MatrixXd dg(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        dg(a, b) = jet.d2(a, j).dot(jet.d1(b)) + jet.d1(a).dot(jet.d2(b, j));
    const Eigen::MatrixXd dginv = -md.inverse * dg * md.inverse;
    const double dlog_sqrtg = 0.5 * (md.inverse * dg).trace();
    for (int k = 0; k < m; ++k) {
      div += dlog_sqrtg * md.inverse(j, k) * alpha(k) +
             dginv(j, k) * alpha(k) + md.inverse(j, k) * dalpha(k, j);
    }
  }

  DeltaAlpha out;
  out.coordinate_route = -div;
  out.closed_form = -apply_J(jet.u).dot(mean_curvature(jet));
  return out;
}

double lagrangian_angle(const Jet& jet, double tol) {
  const int m = jet.dim();
  const int n = static_cast<int>(jet.ambient_dim()) / 2;
  if (m != n - 1)
    throw DomainError(
        "lagrangian_angle requires a link of maximal dimension m = n - 1");
  const LegendrianResidual lr = legendrian_residual(jet);
  if (lr.norm > tol)
    throw NonLegendrianError(
        "lagrangian_angle is undefined away from Legendrian points "
        "(|alpha| = " +
        std::to_string(lr.norm) + ")");

  // Orthonormalize the coordinate tangent frame in R^{2n}, in coordinate
  // order, then read the frame as columns of a complex n x n matrix headed
  // by the position.
  std::vector<AmbientVector> frame;
  frame.reserve(m);
  for (int i = 0; i < m; ++i) {
    AmbientVector v = jet.d1(i);
    for (const AmbientVector& e : frame) v -= e.dot(v) * e;
    const double norm = v.norm();
    if (norm < 1e-10)
      throw NumericalError("degenerate tangent frame in lagrangian_angle");
    frame.push_back(v / norm);
  }
  Eigen::MatrixXcd mat(n, n);
  mat.col(0) = to_complex(jet.u);
  for (int i = 0; i < m; ++i) mat.col(i + 1) = to_complex(frame[i]);
  return -std::arg(mat.determinant());
}

namespace {

/// Unwraps theta at `target` against the already-unwrapped value at `ref`.
/// A branch step larger than a quarter turn is resolved by splitting the
/// parameter segment, up to a fixed depth.
double unwrap_step(const Immersion& imm, const Eigen::VectorXd& ref,
                   double theta_ref, const Eigen::VectorXd& target,
                   double tol, int depth) {
  const double raw = lagrangian_angle(imm.jet(target, 2), tol);
  const double delta = std::remainder(raw - theta_ref, kTwoPi);
  if (std::abs(delta) <= kTwoPi / 4 || depth <= 0) {
    if (std::abs(delta) > kTwoPi / 4)
      throw NumericalError(
          "theta branch ambiguous after refinement: angle jumps by more "
          "than a quarter turn over a refined segment");
    return theta_ref + delta;
  }
  const Eigen::VectorXd mid =
      ref + 0.5 * imm.domain().wrap_difference(target, ref);
  const double theta_mid =
      unwrap_step(imm, ref, theta_ref, mid, tol, depth - 1);
  return unwrap_step(imm, mid, theta_mid, target, tol, depth - 1);
}

}  // namespace

ThetaField theta_field(const Immersion& imm, const GridSpec& grid,
                       double tol) {
  if (imm.link_dim() != 2)
    throw DomainError("theta_field requires a surface link");
  const Domain& dom = imm.domain();
  const int n0 = grid.res[0], n1 = grid.res[1];
  ThetaField out;
  out.grid = grid;
  out.theta.resize(grid.total());
  out.branch.resize(grid.total());

  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j) {
      const long flat = static_cast<long>(i) * n1 + j;
      const Eigen::VectorXd t = dom.grid_point(grid, {i, j});
      double theta;
      if (i == 0 && j == 0) {
        theta = lagrangian_angle(imm.jet(t, 2), tol);
      } else if (j > 0) {
        const Eigen::VectorXd ref = dom.grid_point(grid, {i, j - 1});
        theta = unwrap_step(imm, ref, out.theta[flat - 1], t, tol, 8);
      } else {
        const Eigen::VectorXd ref = dom.grid_point(grid, {i - 1, 0});
        theta = unwrap_step(imm, ref, out.theta[flat - n1], t, tol, 8);
      }
      out.theta[flat] = theta;
      const double raw = lagrangian_angle(imm.jet(t, 2), tol);
      out.branch[flat] = static_cast<int>(std::lround((theta - raw) / kTwoPi));
    }
  out.min = *std::min_element(out.theta.begin(), out.theta.end());
  out.max = *std::max_element(out.theta.begin(), out.theta.end());
  return out;
}

double angle_gradient_check(const Immersion& imm, const GridSpec& grid,
                            double tol, double h) {
  const Domain& dom = imm.domain();
  const int m = imm.link_dim();
  double worst = 0;
  const long total = grid.total();
  for (long flat = 0; flat < total; ++flat) {
    const Eigen::VectorXd t = dom.grid_point(grid, grid.unflatten(flat));
    const Jet jet = imm.jet(t, 2);
    const AmbientVector jh = apply_J(mean_curvature(jet));
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd tp = t, tm = t;
      tp(i) += h;
      tm(i) -= h;
      const double dtheta =
          std::remainder(lagrangian_angle(imm.jet(tp, 2), tol) -
                             lagrangian_angle(imm.jet(tm, 2), tol),
                         kTwoPi) /
          (2 * h);
      worst = std::max(worst, std::abs(dtheta - jh.dot(jet.d1(i))));
    }
  }
  return worst;
}

namespace {

std::vector<double> beta_periods(const Immersion& imm, int nodes) {
  // Period of beta = <JH, .> along each lattice generator, trapezoid rule
  // on the closed loop tau -> base + tau * generator.
  const Domain& dom = imm.domain();
  std::vector<double> periods;
  for (int c = 0; c < dom.dim(); ++c) {
    const Eigen::VectorXd gen = dom.lattice().col(c);
    double sum = 0;
    for (int j = 0; j < nodes; ++j) {
      const Eigen::VectorXd t = (static_cast<double>(j) / nodes) * gen;
      const Jet jet = imm.jet(t, 2);
      const AmbientVector jh = apply_J(mean_curvature(jet));
      double integrand = 0;
      for (int i = 0; i < dom.dim(); ++i)
        integrand += jh.dot(jet.d1(i)) * gen(i);
      sum += integrand;
    }
    periods.push_back(sum / nodes);
  }
  return periods;
}

}  // namespace

HarmonicityReport theta_harmonicity(const Immersion& imm, const GridSpec& grid,
                                    int quadrature_nodes) {
  HarmonicityReport out;
  const Domain& dom = imm.domain();
  const long total = grid.total();
  for (long flat = 0; flat < total; ++flat) {
    const Eigen::VectorXd t = dom.grid_point(grid, grid.unflatten(flat));
    const Jet jet = imm.jet(t, 2);
    const AmbientVector hvec = mean_curvature(jet);
    const double jh_h = symplectic_pair(hvec, hvec);
    const double s1 = stationarity_S1(imm, t);
    out.max_residual = std::max(out.max_residual, std::abs(s1 + jh_h));
    out.jh_h_max = std::max(out.jh_h_max, std::abs(jh_h));
  }
  if (dom.kind() == Domain::Kind::torus) {
    out.periods = beta_periods(imm, quadrature_nodes);
    const std::vector<double> coarse =
        beta_periods(imm, std::max(2, quadrature_nodes / 2));
    for (std::size_t c = 0; c < out.periods.size(); ++c)
      out.period_refinement_delta =
          std::max(out.period_refinement_delta,
                   std::abs(out.periods[c] - coarse[c]));
  }
  return out;
}

}  // namespace hslink

#include "hslink/geometry.hpp"

#include <cmath>

#include "hslink/errors.hpp"

namespace hslink {

MetricData induced_metric(const Jet& jet) {
  const int m = jet.dim();
  MetricData md;
  md.g.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      md.g(i, j) = jet.d1(i).dot(jet.d1(j));
      md.g(j, i) = md.g(i, j);
    }
  md.det = md.g.determinant();
  if (!(md.det > 1e-14))
    throw NumericalError("degenerate induced metric (det = " +
                         std::to_string(md.det) + ")");
  md.inverse = md.g.inverse();
  return md;
}

namespace {

/// Contraction W = g^{ij} u_ij.
AmbientVector metric_trace_second(const Jet& jet, const MetricData& md) {
  AmbientVector w = AmbientVector::Zero(jet.ambient_dim());
  const int m = jet.dim();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) w += md.inverse(i, j) * jet.d2(i, j);
  return w;
}

}  // namespace

AmbientVector mean_curvature(const Jet& jet) {
  const MetricData md = induced_metric(jet);
  const AmbientVector w = metric_trace_second(jet, md);
  // Remove the component tangent to the link: coefficients of the
  // projection onto span{u_i} solve g c = <u_i, W>.
  const int m = jet.dim();
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs(i) = jet.d1(i).dot(w);
  const Eigen::VectorXd c = md.inverse * rhs;
  AmbientVector h = w;
  for (int i = 0; i < m; ++i) h -= c(i) * jet.d1(i);
  return h;
}

AmbientVector sphere_mean_curvature(const Jet& jet) {
  return mean_curvature(jet) + jet.dim() * jet.u;
}

std::vector<AmbientVector> second_fundamental_form(const Jet& jet) {
  const int m = jet.dim();
  // Frame {u, u_1, ..., u_m}: project each u_ij off its span with a single
  // Gram solve. u is orthogonal to the u_i analytically, but the solve does
  // not assume it.
  Eigen::MatrixXd gram(m + 1, m + 1);
  std::vector<const AmbientVector*> frame(m + 1);
  frame[0] = &jet.u;
  for (int i = 0; i < m; ++i) frame[i + 1] = &jet.d1(i);
  for (int a = 0; a <= m; ++a)
    for (int b = a; b <= m; ++b) {
      gram(a, b) = frame[a]->dot(*frame[b]);
      gram(b, a) = gram(a, b);
    }
  Eigen::LDLT<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success)
    throw NumericalError("degenerate frame in second fundamental form");

  std::vector<AmbientVector> result(detail::sym2_count(m));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const AmbientVector& uij = jet.d2(i, j);
      Eigen::VectorXd rhs(m + 1);
      for (int a = 0; a <= m; ++a) rhs(a) = frame[a]->dot(uij);
      const Eigen::VectorXd c = solver.solve(rhs);
      AmbientVector normal = uij;
      for (int a = 0; a <= m; ++a) normal -= c(a) * (*frame[a]);
      result[detail::sym2_index(m, i, j)] = std::move(normal);
    }
  return result;
}

AmbientVector trace_second_fundamental_form(const Jet& jet) {
  const MetricData md = induced_metric(jet);
  const auto a = second_fundamental_form(jet);
  AmbientVector tr = AmbientVector::Zero(jet.ambient_dim());
  const int m = jet.dim();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      tr += md.inverse(i, j) * a[detail::sym2_index(m, i, j)];
  return tr;
}

}  // namespace hslink

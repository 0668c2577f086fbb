#include "hslink/stationarity.hpp"

#include <cmath>

#include "hslink/ambient.hpp"
#include "hslink/numdiff.hpp"
#include "hslink/parallel.hpp"

namespace hslink {

double isotropy_residual(const Jet& jet) {
  const int m = jet.dim();
  double worst = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      worst = std::max(worst, std::abs(symplectic_pair(jet.d1(i), jet.d1(j))));
  return worst;
}

Eigen::VectorXd contact_form(const Jet& jet) {
  const int m = jet.dim();
  const AmbientVector ju = apply_J(jet.u);
  Eigen::VectorXd alpha(m);
  for (int i = 0; i < m; ++i) alpha(i) = ju.dot(jet.d1(i));
  return alpha;
}

Eigen::MatrixXd contact_form_jacobian(const Jet& jet) {
  const int m = jet.dim();
  const AmbientVector ju = apply_J(jet.u);
  Eigen::MatrixXd d(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      d(i, j) = symplectic_pair(jet.d1(j), jet.d1(i)) + ju.dot(jet.d2(i, j));
  return d;
}

LegendrianResidual legendrian_residual(const Jet& jet) {
  LegendrianResidual r;
  r.alpha = contact_form(jet);
  const MetricData md = induced_metric(jet);
  r.norm = std::sqrt(std::max(0.0, r.alpha.dot(md.inverse * r.alpha)));
  return r;
}

double isotropy_deviation(const Jet& jet) {
  const Eigen::VectorXd alpha = contact_form(jet);
  const MetricData md = induced_metric(jet);
  return alpha.dot(md.inverse * alpha);
}

Eigen::VectorXd project_Ju(const Jet& jet) {
  const MetricData md = induced_metric(jet);
  return md.inverse * contact_form(jet);
}

double div_Ju(const Jet& jet) {
  const MetricData md = induced_metric(jet);
  const int m = jet.dim();
  double div = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      div += md.inverse(i, j) * symplectic_pair(jet.d1(j), jet.d1(i));
  return div;
}

double stationarity_S2(const Jet& jet) {
  return symplectic_pair(mean_curvature(jet), jet.u);
}

namespace {

/// Mean curvature together with its first derivatives, from an order-3 jet.
/// Everything downstream of u_ij is differentiated exactly: the metric, its
/// inverse (via d g^{-1} = -g^{-1} (d g) g^{-1}), the contraction
/// W = g^{ij} u_ij, and the tangential projection coefficients.
void mean_curvature_with_derivatives(const Jet& jet, AmbientVector& h,
                                     std::vector<AmbientVector>& dh) {
  const int m = jet.dim();
  const MetricData md = induced_metric(jet);

  AmbientVector w = AmbientVector::Zero(jet.ambient_dim());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) w += md.inverse(i, j) * jet.d2(i, j);

  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs(i) = jet.d1(i).dot(w);
  const Eigen::VectorXd c = md.inverse * rhs;
  h = w;
  for (int i = 0; i < m; ++i) h -= c(i) * jet.d1(i);

  dh.assign(m, AmbientVector());
  for (int k = 0; k < m; ++k) {
    Eigen::MatrixXd dg(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        dg(a, b) = jet.d2(a, k).dot(jet.d1(b)) + jet.d1(a).dot(jet.d2(b, k));
    const Eigen::MatrixXd dginv = -md.inverse * dg * md.inverse;

    AmbientVector dw = AmbientVector::Zero(jet.ambient_dim());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        dw += dginv(i, j) * jet.d2(i, j) + md.inverse(i, j) * jet.d3(i, j, k);

    Eigen::VectorXd drhs(m);
    for (int i = 0; i < m; ++i)
      drhs(i) = jet.d2(i, k).dot(w) + jet.d1(i).dot(dw);
    const Eigen::VectorXd dc = dginv * rhs + md.inverse * drhs;

    dh[k] = dw;
    for (int i = 0; i < m; ++i)
      dh[k] -= dc(i) * jet.d1(i) + c(i) * jet.d2(i, k);
  }
}

double contract_dJH(const Jet& jet, const std::vector<AmbientVector>& dh) {
  const MetricData md = induced_metric(jet);
  const int m = jet.dim();
  double div = 0;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      div += md.inverse(i, k) * apply_J(dh[k]).dot(jet.d1(i));
  return div;
}

}  // namespace

double stationarity_S1(const Immersion& imm, const Eigen::VectorXd& t) {
  if (imm.max_jet_order() < 3) return stationarity_S1_fd(imm, t);
  const Jet jet = imm.jet(t, 3);
  AmbientVector h;
  std::vector<AmbientVector> dh;
  mean_curvature_with_derivatives(jet, h, dh);
  return contract_dJH(jet, dh);
}

double stationarity_S1_fd(const Immersion& imm, const Eigen::VectorXd& t,
                          double h) {
  const Jet jet = imm.jet(t, 2);
  const int m = jet.dim();
  const auto field = [&](const Eigen::VectorXd& p) {
    return mean_curvature(imm.jet(p, 2));
  };
  std::vector<AmbientVector> dh(m);
  for (int k = 0; k < m; ++k) dh[k] = numdiff::partial(field, t, k, h);
  return contract_dJH(jet, dh);
}

StationarityResidual stationarity_residuals(const Immersion& imm,
                                            const Eigen::VectorXd& t) {
  StationarityResidual r;
  r.S1 = stationarity_S1(imm, t);
  r.S2 = stationarity_S2(imm.jet(t, 2));
  return r;
}

ConeClassification hs_cone_classify(const Immersion& imm, const GridSpec& grid,
                                    double tol, int threads) {
  const long total = grid.total();
  std::vector<double> iso(total), s1(total), s2(total);
  parallel_for(total, threads, [&](long flat) {
    const Eigen::VectorXd t = imm.domain().grid_point(grid, grid.unflatten(flat));
    iso[flat] = isotropy_residual(imm.jet(t, 2));
    const StationarityResidual r = stationarity_residuals(imm, t);
    s1[flat] = r.S1;
    s2[flat] = r.S2;
  });
  ConeClassification out;
  for (long i = 0; i < total; ++i) {
    out.max_isotropy = std::max(out.max_isotropy, iso[i]);
    out.max_S1 = std::max(out.max_S1, std::abs(s1[i]));
    out.max_S2 = std::max(out.max_S2, std::abs(s2[i]));
  }
  out.isotropic = flag_from_residual(out.max_isotropy, tol);
  out.hamiltonian_stationary_cone =
      flag_from_residual(std::max(out.max_S1, out.max_S2), tol);
  return out;
}

}  // namespace hslink

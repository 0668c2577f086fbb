#pragma once

#include "hslink/geometry.hpp"
#include "hslink/immersion.hpp"
#include "hslink/tolerances.hpp"

namespace hslink {

/// max_{i<j} |<J u_i, u_j>|: deviation from isotropy of the tangent plane.
/// Zero (to rounding) iff the link is isotropic at the point. Always zero
/// for curves (m = 1).
double isotropy_residual(const Jet& jet);

/// Contact form coefficients alpha_i = <J u, u_i>. Every consumer of alpha
/// (Legendrian residuals, Hopf function, Hodge checks) routes through this
/// one arithmetic path.
Eigen::VectorXd contact_form(const Jet& jet);

/// Exact partials d alpha_i / d t_j = <J u_j, u_i> + <J u, u_ij>, as the
/// (i, j) entry. Both inner products are kept separate so that antisymmetry
/// checks compare genuinely different arithmetic.
Eigen::MatrixXd contact_form_jacobian(const Jet& jet);

/// The contact 1-form coefficients alpha_i = <J u, u_i> and their norm in
/// the induced metric, sqrt(g^{ij} alpha_i alpha_j). The link is Legendrian
/// at the point iff the norm vanishes.
struct LegendrianResidual {
  Eigen::VectorXd alpha;
  double norm = 0;
};
LegendrianResidual legendrian_residual(const Jet& jet);

/// Isotropy deviation f = g^{ij} alpha_i alpha_j = |J u^T|^2, the squared
/// norm of the tangential part of Ju. Takes values in [0, 1].
double isotropy_deviation(const Jet& jet);

/// Coefficients c^j of the tangential projection of Ju in the coordinate
/// frame: proj(Ju) = c^j u_j with c = g^{-1} alpha.
Eigen::VectorXd project_Ju(const Jet& jet);

/// Tangential divergence of the vector field Ju along the link,
/// g^{ij} <d_j(Ju), u_i> = g^{ij} <J u_j, u_i>. Vanishes identically on
/// isotropic links (skew contraction of a symmetric inverse metric).
double div_Ju(const Jet& jet);

/// S2 = <J H, u> with H the Laplace-Beltrami of the position. One of the
/// two scale components of Hamiltonian stationarity of the cone.
double stationarity_S2(const Jet& jet);

/// S1 = div_L(J H) = g^{ij} <d_j(J H), u_i>. Requires third derivatives;
/// when the immersion carries no third-order rules the derivative of H is
/// replaced by central differences of the exact order-2 field (step h,
/// error O(h^2)).
double stationarity_S1(const Immersion& imm, const Eigen::VectorXd& t);

/// Forced finite-difference route for S1, used for cross-validation.
double stationarity_S1_fd(const Immersion& imm, const Eigen::VectorXd& t,
                          double h = 1e-4);

struct StationarityResidual {
  double S1 = 0;
  double S2 = 0;

  /// Residual of div(JH) = 0 on the cone at radius r, which splits by
  /// scaling weight as -S2 / r^2 + S1 / r^3.
  double cone_residual(double r) const { return -S2 / (r * r) + S1 / (r * r * r); }
};

StationarityResidual stationarity_residuals(const Immersion& imm,
                                            const Eigen::VectorXd& t);

/// Grid classification of Hamiltonian stationarity of the cone over the
/// link. The flag uses hysteresis around tol: residuals below tol are a
/// pass, above 10 tol a fail, in between indeterminate.
struct ConeClassification {
  double max_isotropy = 0;
  double max_S1 = 0;
  double max_S2 = 0;
  Flag isotropic = Flag::indeterminate;
  Flag hamiltonian_stationary_cone = Flag::indeterminate;
};

ConeClassification hs_cone_classify(const Immersion& imm, const GridSpec& grid,
                                    double tol = tolerances::kIdentity,
                                    int threads = 1);

}  // namespace hslink

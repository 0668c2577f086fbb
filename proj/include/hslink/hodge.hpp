#pragma once

#include <vector>

#include "hslink/immersion.hpp"
#include "hslink/stationarity.hpp"

namespace hslink {

/// The contact 1-form alpha restricted to the link, coefficients
/// alpha_i = <Ju, u_i>: exactly the same arithmetic as
/// legendrian_residual's alpha.
Eigen::VectorXd alpha_form(const Jet& jet);

/// max_{i<j} |d_j alpha_i - d_i alpha_j|: closedness defect of alpha. On
/// any link this equals twice the isotropy residual (the identity
/// d alpha = -2 omega restricted to the link), which makes the pair of
/// computations a floating-point audit of each other.
double d_alpha_residual(const Jet& jet);

/// Codifferential of alpha along the link, by two routes:
///  - coordinate: -(1/sqrt g) d_j (sqrt g g^{jk} alpha_k), expanded through
///    exact derivatives of the metric and its inverse;
///  - closed form: -<Ju, Delta_g u> with Delta_g u the mean curvature.
/// Both vanish exactly when the cone is Hamiltonian stationary.
struct DeltaAlpha {
  double coordinate_route = 0;
  double closed_form = 0;
  double difference() const {
    return std::abs(coordinate_route - closed_form);
  }
};
DeltaAlpha delta_alpha(const Jet& jet);

/// Lagrangian angle theta = -arg det_C [u, e_1, ..., e_{n-1}] where the e_i
/// orthonormalize the coordinate tangent frame (Gram-Schmidt in coordinate
/// order, real inner product). The leading minus sign is the global
/// convention making d theta = <JH, .> on the catalog examples. Defined
/// only on Legendrian links of maximal dimension m = n - 1; throws
/// NonLegendrianError when |alpha| exceeds the gate tolerance.
double lagrangian_angle(const Jet& jet, double tol = tolerances::kLegendrian);

/// Grid of unwrapped Lagrangian angles. Unwrapping follows row-major order
/// (each sample continues from its left neighbor, rows continue from the
/// row above); jumps larger than a quarter turn trigger midpoint refinement
/// before a branch is chosen. branch holds the integer multiple of 2 pi
/// separating the unwrapped value from the principal one.
struct ThetaField {
  GridSpec grid;
  std::vector<double> theta;  // unwrapped, flat row-major
  std::vector<int> branch;
  double min = 0;
  double max = 0;
};
ThetaField theta_field(const Immersion& imm, const GridSpec& grid,
                       double tol = tolerances::kLegendrian);

/// max over grid samples and directions of |d_i theta - <JH, u_i>|, the
/// finite-difference check that the angle 1-form beta = <JH, .> is d theta.
/// Limited by the differencing step (error O(h^2), default h = 1e-4).
double angle_gradient_check(const Immersion& imm, const GridSpec& grid,
                            double tol = tolerances::kLegendrian,
                            double h = 1e-4);

/// Harmonicity of the angle form beta = <JH, .>: Delta theta =
/// div(JH) + <JH, H> must vanish on a Hamiltonian stationary cone. The
/// second term is also recorded separately (it is zero by J-orthogonality;
/// nonzero values indicate broken ambient algebra). On tori the periods of
/// beta along the lattice generators are integrated by the trapezoid rule
/// (exact for smooth periodic integrands up to spectral accuracy);
/// period_refinement_delta records the change when the node count halves.
struct HarmonicityReport {
  double max_residual = 0;
  double jh_h_max = 0;
  std::vector<double> periods;
  double period_refinement_delta = 0;
};
HarmonicityReport theta_harmonicity(const Immersion& imm, const GridSpec& grid,
                                    int quadrature_nodes = 1024);

}  // namespace hslink

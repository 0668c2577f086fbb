#pragma once

// Test-side constructions of the standard examples, built directly from
// PhaseImmersion with hand-written parameters. The catalog factory is tested
// against these.

#include <cmath>
#include <memory>

#include "hslink/immersion.hpp"

namespace fixtures {

constexpr double kPi = 3.14159265358979323846;

inline hslink::QuadraticPhase linear_phase(double a, double b) {
  hslink::QuadraticPhase p;
  p.lin = Eigen::Vector2d(a, b);
  p.quad = Eigen::Matrix2d::Zero();
  return p;
}

inline std::unique_ptr<hslink::PhaseImmersion> homogeneous_torus(
    const std::string& name, const Eigen::Vector3d& q,
    const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  std::vector<double> radii(3);
  std::vector<hslink::QuadraticPhase> phases(3);
  for (int k = 0; k < 3; ++k) {
    radii[k] = std::sqrt(q(k));
    phases[k] = linear_phase(a(k), b(k));
  }
  return std::make_unique<hslink::PhaseImmersion>(
      name, hslink::Domain::torus(2 * kPi * Eigen::Matrix2d::Identity()),
      radii, phases, 1);
}

inline std::unique_ptr<hslink::PhaseImmersion> clifford() {
  return homogeneous_torus("clifford_torus", {1. / 3, 1. / 3, 1. / 3},
                           {1, 0, -1}, {0, 1, -1});
}

inline std::unique_ptr<hslink::PhaseImmersion> s3() {
  return homogeneous_torus("s3_torus", {0.5, 0.5, 0}, {1, 0, 0}, {0, 1, 0});
}

inline std::unique_ptr<hslink::PhaseImmersion> nonminimal_torus() {
  return homogeneous_torus("nonminimal_torus", {1. / 6, 1. / 3, 1. / 2},
                           {2, -1, 0}, {1, 1, -1});
}

/// Unit-speed great circle (e^{is}, 0) in S^3 of C^2.
inline std::unique_ptr<hslink::PhaseImmersion> great_circle() {
  hslink::QuadraticPhase ph1, ph2;
  ph1.lin = Eigen::VectorXd::Constant(1, 1.0);
  ph1.quad = Eigen::MatrixXd::Zero(1, 1);
  ph2.lin = Eigen::VectorXd::Zero(1);
  ph2.quad = Eigen::MatrixXd::Zero(1, 1);
  Eigen::MatrixXd lattice(1, 1);
  lattice << 2 * kPi;
  return std::make_unique<hslink::PhaseImmersion>(
      "great_circle", hslink::Domain::torus(lattice),
      std::vector<double>{1, 0}, std::vector<hslink::QuadraticPhase>{ph1, ph2},
      std::nullopt);
}

/// Constant radii with quadratic phases chosen so that the contact
/// coefficients are exactly alpha = c (s - s0, -(t - t0)): a single simple
/// zero of the contact form at (s0, t0), winding +1 for (alpha_1, -alpha_2).
/// The map is isotropic by construction (constant radii). The slope c keeps
/// the deviation f below the coarse scan threshold in the cells adjacent to
/// the zero at the standard grid resolutions.
inline std::unique_ptr<hslink::PhaseImmersion> planted_zero(double s0 = 0.3,
                                                            double t0 = -0.2,
                                                            double c = 0.15) {
  const double q1 = 0.2, q2 = 0.3, q3 = 0.5;
  std::vector<double> radii = {std::sqrt(q1), std::sqrt(q2), std::sqrt(q3)};
  std::vector<hslink::QuadraticPhase> phases(3);
  phases[0].lin = Eigen::Vector2d(1, 0);
  phases[0].quad = Eigen::Matrix2d::Zero();
  phases[1].lin = Eigen::Vector2d(0, 1);
  phases[1].quad = Eigen::Matrix2d::Zero();
  // alpha_i = sum q_k d_i phi_k; with phi_1 = s, phi_2 = t the third phase
  // supplies the planted linear zero:
  //   q3 phi_3 = c (s - s0)^2/2 - q1 s - c (t - t0)^2/2 - q2 t.
  phases[2].lin = Eigen::Vector2d((-c * s0 - q1) / q3, (c * t0 - q2) / q3);
  phases[2].quad =
      (Eigen::Matrix2d() << c / q3, 0, 0, -c / q3).finished();
  return std::make_unique<hslink::PhaseImmersion>(
      "planted_zero",
      hslink::Domain::chart(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1)),
      radii, phases, std::nullopt);
}

}  // namespace fixtures

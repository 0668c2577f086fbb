#pragma once

#include <vector>

#include "hslink/jet.hpp"

namespace hslink {

/// Induced metric g_ij = <u_i, u_j> with its inverse and determinant.
struct MetricData {
  Eigen::MatrixXd g;
  Eigen::MatrixXd inverse;
  double det = 0;
};

/// Computes the induced metric from a jet. Throws NumericalError when the
/// metric is degenerate (det below 1e-14), which signals a bad chart point
/// rather than a recoverable condition.
MetricData induced_metric(const Jet& jet);

/// Laplace-Beltrami of the position, computed as the normal component of
/// g^{ij} u_ij (the tangential part is removed by a Gram solve against the
/// coordinate frame). For a link in the unit sphere this vector has radial
/// component <H, u> = -m exactly in the continuum.
AmbientVector mean_curvature(const Jet& jet);

/// Spherical mean curvature H + m u: the mean curvature of the link viewed
/// inside the unit sphere. Vanishes exactly for minimal links.
AmbientVector sphere_mean_curvature(const Jet& jet);

/// Second fundamental form with respect to the sphere: components of u_ij
/// orthogonal to both the position and the tangent frame, stored per sorted
/// index pair. Its metric trace equals sphere_mean_curvature.
std::vector<AmbientVector> second_fundamental_form(const Jet& jet);

/// g^{ij} A_ij, for auditing against sphere_mean_curvature.
AmbientVector trace_second_fundamental_form(const Jet& jet);

}  // namespace hslink

#pragma once

#include <functional>

#include <Eigen/Dense>

namespace hslink {

/// Central-difference helpers used by fallback paths when closed-form
/// derivative rules are unavailable. Error is O(h^2).
namespace numdiff {

using VectorField =
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// d/dt_i of a vector field, central stencil.
Eigen::VectorXd partial(const VectorField& f, const Eigen::VectorXd& t, int i,
                        double h);

/// d/dt_i of a scalar field, central stencil.
double partial_scalar(const std::function<double(const Eigen::VectorXd&)>& f,
                      const Eigen::VectorXd& t, int i, double h);

}  // namespace numdiff

}  // namespace hslink

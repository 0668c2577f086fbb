#include "hslink/domain.hpp"

#include <cmath>

#include "hslink/errors.hpp"

namespace hslink {

Domain Domain::torus(const Eigen::MatrixXd& lattice) {
  if (lattice.rows() != lattice.cols() || lattice.rows() == 0)
    throw DomainError("torus lattice must be square and non-empty");
  if (std::abs(lattice.determinant()) < 1e-12)
    throw DomainError("torus lattice is singular");
  Domain d;
  d.kind_ = Kind::torus;
  d.dim_ = static_cast<int>(lattice.rows());
  d.lattice_ = lattice;
  d.lattice_inv_ = lattice.inverse();
  return d;
}

Domain Domain::chart(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw DomainError("chart bounds must be non-empty and of equal size");
  if (((hi - lo).array() <= 0).any())
    throw DomainError("chart bounds must satisfy lo < hi");
  Domain d;
  d.kind_ = Kind::chart;
  d.dim_ = static_cast<int>(lo.size());
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

bool Domain::contains(const Eigen::VectorXd& t) const {
  if (t.size() != dim_) return false;
  if (kind_ == Kind::torus) return true;
  const double slack = 1e-9 * (hi_ - lo_).maxCoeff();
  return ((t - lo_).array() >= -slack).all() &&
         ((hi_ - t).array() >= -slack).all();
}

Eigen::VectorXd Domain::grid_point(const GridSpec& grid,
                                   const std::vector<int>& idx) const {
  if (static_cast<int>(grid.res.size()) != dim_ ||
      static_cast<int>(idx.size()) != dim_)
    throw DomainError("grid dimension does not match domain dimension");
  Eigen::VectorXd frac(dim_);
  for (int d = 0; d < dim_; ++d) {
    const double offset = (kind_ == Kind::chart) ? 0.5 : 0.0;
    frac(d) = (idx[d] + offset) / grid.res[d];
  }
  if (kind_ == Kind::torus) return lattice_ * frac;
  return lo_ + (hi_ - lo_).cwiseProduct(frac);
}

Eigen::VectorXd Domain::random_point(Rng& rng) const {
  Eigen::VectorXd frac(dim_);
  for (int d = 0; d < dim_; ++d) frac(d) = rng.uniform();
  if (kind_ == Kind::torus) return lattice_ * frac;
  // Keep random chart points away from the boundary for the same reason
  // grid samples are cell-centered.
  return lo_ + (hi_ - lo_).cwiseProduct(
                   Eigen::VectorXd::Constant(dim_, 0.05) + 0.9 * frac);
}

double Domain::min_cell_extent(const GridSpec& grid) const {
  double ext = std::numeric_limits<double>::infinity();
  for (int d = 0; d < dim_; ++d) {
    const double len = (kind_ == Kind::torus) ? lattice_.col(d).norm()
                                              : hi_(d) - lo_(d);
    ext = std::min(ext, len / grid.res[d]);
  }
  return ext;
}

Eigen::VectorXd Domain::wrap_difference(const Eigen::VectorXd& a,
                                        const Eigen::VectorXd& b) const {
  Eigen::VectorXd diff = a - b;
  if (kind_ == Kind::chart) return diff;
  Eigen::VectorXd frac = lattice_inv_ * diff;
  for (int d = 0; d < dim_; ++d) frac(d) -= std::round(frac(d));
  return lattice_ * frac;
}

}  // namespace hslink

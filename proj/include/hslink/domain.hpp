#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hslink/rng.hpp"

namespace hslink {

/// A rectangular sampling grid, one resolution per parameter dimension.
struct GridSpec {
  std::vector<int> res;

  long total() const {
    long t = 1;
    for (int r : res) t *= r;
    return t;
  }

  /// Multi-index of the flat sample number, row-major (last dim fastest).
  std::vector<int> unflatten(long flat) const {
    std::vector<int> idx(res.size());
    for (int d = static_cast<int>(res.size()) - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(flat % res[d]);
      flat /= res[d];
    }
    return idx;
  }
};

/// Parameter domain of an immersion: either a flat torus R^m / (lattice Z^m)
/// or a bounded coordinate chart (a box).
///
/// Grid sampling differs between the two: a torus is sampled at lattice
/// fractions j/N (corners; the opposite edge is the same point), while a
/// chart is sampled at cell centers (j + 1/2)/N so that scans stay clear of
/// box edges, where chart parametrizations may degenerate.
class Domain {
 public:
  enum class Kind { torus, chart };

  static Domain torus(const Eigen::MatrixXd& lattice);
  static Domain chart(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Eigen::MatrixXd& lattice() const { return lattice_; }
  const Eigen::VectorXd& lo() const { return lo_; }
  const Eigen::VectorXd& hi() const { return hi_; }

  /// Charts test box membership with a small slack; torus points are always
  /// inside.
  bool contains(const Eigen::VectorXd& t) const;

  Eigen::VectorXd grid_point(const GridSpec& grid,
                             const std::vector<int>& idx) const;

  Eigen::VectorXd random_point(Rng& rng) const;

  /// Shortest step in each grid direction; used to size refinement circles
  /// and deduplication radii.
  double min_cell_extent(const GridSpec& grid) const;

  /// Shortest representative of a - b (modulo the lattice on a torus).
  Eigen::VectorXd wrap_difference(const Eigen::VectorXd& a,
                                  const Eigen::VectorXd& b) const;

 private:
  Kind kind_ = Kind::chart;
  int dim_ = 0;
  Eigen::MatrixXd lattice_;      // columns are generators (torus)
  Eigen::MatrixXd lattice_inv_;  // cached inverse (torus)
  Eigen::VectorXd lo_, hi_;      // box bounds (chart)
};

}  // namespace hslink

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hslink/immersion.hpp"
#include "hslink/stationarity.hpp"

namespace hslink {

/// Largest relative deviation of the induced metric from a multiple of the
/// identity over the grid: max (|g11 - g22| + 2|g12|) / tr(g). Surface
/// links only.
struct IsothermalCheck {
  double max_residual = 0;
  double conformal_factor = 0;  // g11 at the first grid sample
  bool isothermal(double tol) const { return max_residual <= tol; }
};
IsothermalCheck isothermal_check(const Immersion& imm, const GridSpec& grid);

/// Hopf function w = (alpha_1 - i alpha_2)/2 = <Ju, u_z> for z = t_1 + i t_2.
/// Meaningful as a holomorphy witness only in isothermal coordinates.
std::complex<double> hopf_function(const Jet& jet);

/// |d w / d zbar| = |(d_1 w + i d_2 w)| / 2 with the alpha derivatives
/// expanded through exact second jets. Vanishes when w is holomorphic.
double cauchy_riemann_residual(const Jet& jet);

/// Winding number of a plane vector field around a circle of radius rho:
/// the total continuous angle swept by the field over the closed loop,
/// divided by 2 pi. Throws AmbiguousWindingError when the swept angle is
/// not within 0.1 rad of an integer multiple of 2 pi, when consecutive
/// samples jump by more than a half turn, or when the field nearly
/// vanishes on the circle.
int winding_number(
    const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& field,
    const Eigen::Vector2d& center, double rho, int samples = 64);

/// Index data of an isolated Legendrian point: the winding of
/// t -> (alpha_1, -alpha_2) on a small circle (the multiplicity k of the
/// Hopf zero) and the index -k of the projected field Pr Ju.
struct LegendrianPointIndex {
  int multiplicity = 0;
  int index_prju = 0;
};
LegendrianPointIndex point_index(const Immersion& imm,
                                 const Eigen::Vector2d& center, double rho,
                                 int samples = 64);

struct LegendrianPoint {
  Eigen::Vector2d location;
  double residual = 0;       // |alpha|_inf after refinement
  bool refined = false;      // Newton converged
  int multiplicity = 0;
  int index_prju = 0;
};

/// Result of scanning the deviation f over a grid. When max f stays below
/// the sentinel tolerance the link is flagged Legendrian everywhere and no
/// points are reported.
struct LegendrianScan {
  bool everywhere_legendrian = false;
  double min_f = 0;
  double max_f = 0;
  std::vector<LegendrianPoint> points;
};

struct ScanOptions {
  double sentinel_tol = tolerances::kLegendrian;
  double coarse_tol = tolerances::kCoarseScan;
  double newton_tol = tolerances::kNewton;
  int newton_max_iterations = 50;
  int winding_samples = 64;
  int threads = 1;
};

/// Finds isolated zeros of the contact form on a surface link: coarse grid
/// minima of f below the coarse tolerance, Newton-refined on alpha = 0,
/// deduplicated within one grid cell, each with its winding index.
LegendrianScan find_legendrian_points(const Immersion& imm,
                                      const GridSpec& grid,
                                      const ScanOptions& opts = {});

/// Poincare-Hopf accounting: for a surface of genus g the indices of
/// Pr Ju at isolated Legendrian points must sum to the Euler
/// characteristic 2 - 2g (equivalently the multiplicities sum to 2g - 2).
/// A link that is Legendrian everywhere passes vacuously. A genus-0 link
/// with a nonempty isolated zero list fails: no such configuration exists.
struct IndexAudit {
  bool applicable = false;  // genus known and scan available
  bool vacuous = false;     // everywhere Legendrian
  bool pass = false;
  int sum_multiplicity = 0;
  int sum_index = 0;
  int euler_characteristic = 0;
};
IndexAudit poincare_hopf_audit(const LegendrianScan& scan,
                               std::optional<int> genus);

}  // namespace hslink

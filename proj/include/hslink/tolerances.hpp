#pragma once

#include <string>

namespace hslink {

/// Tri-state outcome of a residual gate. Hysteresis keeps borderline
/// measurements from flapping between verdicts: residual <= tol is true,
/// residual >= 10 tol is false, anything between is indeterminate.
enum class Flag { false_, true_, indeterminate };

inline Flag flag_from_residual(double residual, double tol) {
  if (residual <= tol) return Flag::true_;
  if (residual >= 10 * tol) return Flag::false_;
  return Flag::indeterminate;
}

inline const char* flag_name(Flag f) {
  switch (f) {
    case Flag::true_: return "true";
    case Flag::false_: return "false";
    default: return "indeterminate";
  }
}

namespace tolerances {

/// Residuals of identities evaluated through a metric inverse or a
/// derivative chain (S1, S2, closedness, co-closedness agreement).
inline constexpr double kIdentity = 1e-10;

/// Residuals of directly assembled quantities (isotropy pairings, unit
/// norms, frozen-value comparisons).
inline constexpr double kExact = 1e-12;

/// Agreement between closed-form derivatives and central differences.
inline constexpr double kFiniteDiff = 1e-6;

/// Legendrian gates: sentinel for "f below threshold everywhere" and the
/// alpha-norm gate of the Lagrangian angle.
inline constexpr double kLegendrian = 1e-10;

/// Coarse grid threshold that nominates candidate zeros of f for Newton
/// refinement.
inline constexpr double kCoarseScan = 1e-4;

/// Newton refinement stopping criterion on |alpha|_inf.
inline constexpr double kNewton = 1e-12;

/// Relative off-diagonal metric residual below which a chart counts as
/// isothermal.
inline constexpr double kIsothermal = 1e-10;

/// Convergence threshold of the damped least-squares search.
inline constexpr double kSearch = 1e-8;

}  // namespace tolerances

}  // namespace hslink

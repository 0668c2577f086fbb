#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hslink/immersion.hpp"
#include "hslink/rng.hpp"
#include "hslink/tolerances.hpp"

namespace hslink {

/// Parameters of a homogeneous torus u(s,t) = (r_k e^{i(a_k s + b_k t)})_k
/// in S^5: squared radii q on the unit simplex and integer frequency
/// weights (a, b). The search relaxes the weights to reals; integrality is
/// only required to build a closed torus immersion.
struct HomogeneousTorusParams {
  Eigen::Vector3d q;
  Eigen::Vector3d a;
  Eigen::Vector3d b;

  /// Induced (constant) metric g = sum_k q_k w_k w_k^T, w_k = (a_k, b_k).
  Eigen::Matrix2d metric() const;

  /// Laplacian eigenvalue of the k-th phase: lambda_k = w_k^T g^{-1} w_k.
  Eigen::Vector3d eigenvalues() const;

  /// Contact coefficients alpha = (a . q, b . q), constant over the torus.
  Eigen::Vector2d alpha() const;

  /// Throws DomainError unless sum q = 1 within 1e-14 with q >= 0, the
  /// weight matrix [a; b] has rank 2, and the metric is positive definite.
  void validate() const;

  /// Builds the closed-torus immersion (lattice 2 pi Z^2, genus 1). The
  /// weights must be integers within 1e-9.
  std::unique_ptr<PhaseImmersion> to_immersion(const std::string& name) const;
};

HomogeneousTorusParams random_torus_params(Rng& rng);

/// Closed-form classification of a homogeneous torus, cross-checked
/// against grid sampling of the generic residual operations (throws
/// NumericalError if the algebra and the sampled geometry disagree beyond
/// 1e-10).
struct FamilyClassification {
  bool isotropic = true;  // structural: constant radii
  bool legendrian = false;
  bool minimal = false;  // lambda_k = 2 on active components (q_k > 0)
  double f_value = 0;    // constant deviation alpha^T g^{-1} alpha
  double hbar_norm2 = 0;  // |Hbar|^2 = sum (2 - lambda_k)^2 q_k
  Eigen::Vector3d lambda;
  double cross_check_residual = 0;
};
FamilyClassification classify_family_member(const HomogeneousTorusParams& p,
                                            int grid_res = 8);

/// Damped least-squares minimization of the squared target residuals
///   legendrian: (a . q, b . q)
///   minimal:    (lambda_k - 2) for k = 1, 2, 3
/// over q (and optionally the real-relaxed weights), with q projected back
/// onto the unit simplex after every step. Damping doubles on uphill
/// steps and halves on downhill ones.
struct SearchTargets {
  bool legendrian = false;
  bool minimal = false;
  bool empty() const { return !legendrian && !minimal; }
};

struct SearchOptions {
  SearchTargets targets;
  bool optimize_weights = false;
  int max_iterations = 1000;
  double tol = tolerances::kSearch;
  double initial_damping = 1e-3;
  /// Post-pass when weights are optimized: round them to integers, re-run
  /// the weight-fixed search on q, and keep the snapped parameters when
  /// they still meet the tolerance.
  bool snap_weights = true;
};

struct SearchTraceRow {
  int iteration = 0;
  double residual = 0;
  double damping = 0;
};

struct SearchResult {
  HomogeneousTorusParams params;
  double residual = 0;
  bool converged = false;
  int iterations = 0;
  bool weights_snapped = false;
  std::vector<SearchTraceRow> trace;
};

SearchResult search_legendrian_hs(const HomogeneousTorusParams& init,
                                  const SearchOptions& opts);

/// Catalog of named immersions. Parameters arrive as key -> vector-of-reals
/// and key -> string maps (the config file's native shapes).
struct CatalogParams {
  std::map<std::string, std::vector<double>> vectors;
  std::map<std::string, std::string> strings;
};

struct CatalogEntry {
  std::string name;
  std::string params_help;
};
const std::vector<CatalogEntry>& catalog_entries();

/// Builds a catalog immersion:
///   great_sphere       chart = latlong | mercator | rotated
///   clifford_torus     chart = raw | isothermal
///   s3_torus           chart = raw | isothermal
///   homogeneous_torus  q, a, b (3 reals each; a, b integral),
///                      chart = raw | isothermal
/// Throws ConfigError on an unknown name, unknown parameter key, or
/// invalid parameter values.
std::unique_ptr<Immersion> make_catalog_immersion(
    const std::string& name, const CatalogParams& params = {});

/// Family parameters behind a torus catalog name: the fixed values for
/// clifford_torus and s3_torus, or the q/a/b entries of homogeneous_torus.
/// Throws ConfigError for names outside the homogeneous family
/// (great_sphere) and for missing or malformed parameters.
HomogeneousTorusParams catalog_torus_params(const std::string& name,
                                            const CatalogParams& params = {});

}  // namespace hslink

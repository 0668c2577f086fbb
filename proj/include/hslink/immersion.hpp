#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hslink/domain.hpp"
#include "hslink/jet.hpp"

namespace hslink {

/// An immersed m-dimensional link in the unit sphere S^{2n-1} of C^n,
/// given by closed-form derivative rules up to some jet order.
///
/// Implementations must produce positions of unit length and first
/// derivatives tangent to the sphere; both are audited by the geometry
/// checks rather than trusted.
class Immersion {
 public:
  Immersion(std::string name, Domain domain, int complex_dim,
            std::optional<int> genus);
  virtual ~Immersion() = default;

  /// Evaluate the jet at a parameter point. order must be 2 or 3; requesting
  /// order 3 from an immersion without third-derivative rules is an error
  /// (callers that can fall back to differencing should check
  /// max_jet_order() first).
  Jet jet(const Eigen::VectorXd& t, int order) const;

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }
  int link_dim() const { return domain_.dim(); }
  int complex_dim() const { return n_; }
  int ambient_dim() const { return 2 * n_; }
  std::optional<int> genus() const { return genus_; }

  virtual int max_jet_order() const { return 3; }

  /// A reparametrization of the same link in isothermal coordinates, when
  /// one is available in closed form; null otherwise.
  virtual std::unique_ptr<Immersion> isothermal_variant() const {
    return nullptr;
  }

 protected:
  virtual Jet evaluate(const Eigen::VectorXd& t, int order) const = 0;

 private:
  std::string name_;
  Domain domain_;
  int n_;
  std::optional<int> genus_;
};

/// Free-function spelling of Immersion::jet.
inline Jet evaluate_jet(const Immersion& imm, const Eigen::VectorXd& t,
                        int order) {
  return imm.jet(t, order);
}

/// A phase in the exponent of one complex component: value
/// c0 + lin.t + t.quad.t/2 with constant symmetric quad (so third
/// derivatives vanish).
struct QuadraticPhase {
  double c0 = 0;
  Eigen::VectorXd lin;
  Eigen::MatrixXd quad;

  double value(const Eigen::VectorXd& t) const {
    return c0 + lin.dot(t) + 0.5 * t.dot(quad * t);
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& t) const {
    return lin + quad * t;
  }
};

/// Immersions of the form u_k = rho_k exp(i phi_k(t)) with constant radii
/// rho_k >= 0, sum rho_k^2 = 1, and quadratic phases. Every such map is
/// exactly isotropic: alpha_i = sum_k rho_k^2 d_i phi_k and
/// <J u_i, u_j> = 0 identically. Linear phases give the homogeneous tori;
/// quadratic terms plant controlled zeros of the contact form for index
/// fixtures.
class PhaseImmersion : public Immersion {
 public:
  PhaseImmersion(std::string name, Domain domain,
                 std::vector<double> radii,
                 std::vector<QuadraticPhase> phases,
                 std::optional<int> genus);

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<QuadraticPhase>& phases() const { return phases_; }

  /// For linear phases the induced metric is constant, and a linear change
  /// of parameters makes it conformally flat; returns null when any phase
  /// has a quadratic term or the domain is not a torus.
  std::unique_ptr<Immersion> isothermal_variant() const override;

 protected:
  Jet evaluate(const Eigen::VectorXd& t, int order) const override;

 private:
  std::vector<double> radii_;
  std::vector<QuadraticPhase> phases_;
};

/// The unit 2-sphere inside S^5 of C^3 (totally geodesic, everywhere
/// Legendrian). Three coordinate presentations are available:
///  - "latlong":  (lat, lon) chart, poles excluded by cell-centered grids;
///  - "mercator": isothermal coordinates, conformal factor sech^2(y);
///  - "rotated":  latlong composed with a quarter-turn about the y-axis,
///                placing the former poles on the equator for audits that
///                need a second chart covering them.
class GreatSphereImmersion : public Immersion {
 public:
  explicit GreatSphereImmersion(const std::string& chart = "latlong");

  std::unique_ptr<Immersion> isothermal_variant() const override;

 protected:
  Jet evaluate(const Eigen::VectorXd& t, int order) const override;

 private:
  enum class Chart { latlong, mercator, rotated };
  Chart chart_;
};

/// A non-isotropic test surface in S^5: u(s, t) = (cos s, sin s e^{it}, 0).
/// Its isotropy pairing is <J u_s, u_t> = cos s sin s, nonzero away from
/// s = pi/2, which exercises the failure branches of the isotropy and
/// closedness checks.
class NonIsotropicSphereImmersion : public Immersion {
 public:
  NonIsotropicSphereImmersion();

 protected:
  Jet evaluate(const Eigen::VectorXd& t, int order) const override;
};

/// Wraps a position-only map with central-difference derivative rules.
/// Only order-2 jets are available (third differences are too noisy), so
/// exact-jet consumers must fall back to differencing mean curvature.
/// Derivative error is O(h^2) in the step size.
class FiniteDifferenceImmersion : public Immersion {
 public:
  using PositionFn = std::function<AmbientVector(const Eigen::VectorXd&)>;

  FiniteDifferenceImmersion(std::string name, Domain domain, int complex_dim,
                            PositionFn position, double step = 1e-4);

  int max_jet_order() const override { return 2; }

 protected:
  Jet evaluate(const Eigen::VectorXd& t, int order) const override;

 private:
  PositionFn position_;
  double step_;
};

}  // namespace hslink

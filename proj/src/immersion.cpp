#include "hslink/immersion.hpp"

#include <cmath>
#include <complex>

#include "hslink/errors.hpp"

namespace hslink {

namespace {

Jet make_jet(const Eigen::VectorXd& t, int ambient, int order) {
  const int m = static_cast<int>(t.size());
  Jet jet;
  jet.point = t;
  jet.order = order;
  jet.u = AmbientVector::Zero(ambient);
  jet.first.assign(m, AmbientVector::Zero(ambient));
  jet.second.assign(detail::sym2_count(m), AmbientVector::Zero(ambient));
  if (order >= 3)
    jet.third.assign(detail::sym3_count(m), AmbientVector::Zero(ambient));
  return jet;
}

void set_component(AmbientVector& v, int n, int k, std::complex<double> z) {
  v(k) = z.real();
  v(n + k) = z.imag();
}

}  // namespace

Immersion::Immersion(std::string name, Domain domain, int complex_dim,
                     std::optional<int> genus)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      n_(complex_dim),
      genus_(genus) {
  const int m = domain_.dim();
  if (m < 1 || m > n_ - 1)
    throw DomainError("immersion dimensions must satisfy 1 <= m <= n-1");
}

Jet Immersion::jet(const Eigen::VectorXd& t, int order) const {
  if (order != 2 && order != 3)
    throw DomainError("jet order must be 2 or 3");
  if (order > max_jet_order())
    throw DomainError(name_ + " has no derivative rules of order " +
                      std::to_string(order));
  if (!domain_.contains(t))
    throw DomainError("parameter point outside the domain of " + name_);
  return evaluate(t, order);
}

PhaseImmersion::PhaseImmersion(std::string name, Domain domain,
                               std::vector<double> radii,
                               std::vector<QuadraticPhase> phases,
                               std::optional<int> genus)
    : Immersion(std::move(name), std::move(domain),
                static_cast<int>(radii.size()), genus),
      radii_(std::move(radii)),
      phases_(std::move(phases)) {
  if (radii_.size() != phases_.size())
    throw DomainError("one phase per radius is required");
  double norm2 = 0;
  const int m = link_dim();
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    if (radii_[k] < 0) throw DomainError("radii must be non-negative");
    norm2 += radii_[k] * radii_[k];
    const auto& p = phases_[k];
    if (p.lin.size() != m || p.quad.rows() != m || p.quad.cols() != m)
      throw DomainError("phase coefficients do not match the link dimension");
    if (!p.quad.isApprox(p.quad.transpose(), 1e-14))
      throw DomainError("phase quadratic term must be symmetric");
  }
  if (std::abs(norm2 - 1.0) > 1e-9)
    throw DomainError("radii must satisfy sum rho_k^2 = 1");
}

Jet PhaseImmersion::evaluate(const Eigen::VectorXd& t, int order) const {
  const int m = link_dim();
  const int n = complex_dim();
  Jet jet = make_jet(t, 2 * n, order);
  const std::complex<double> I(0, 1);

  for (int k = 0; k < n; ++k) {
    const double r = radii_[k];
    if (r == 0) continue;
    const QuadraticPhase& ph = phases_[k];
    const Eigen::VectorXd g = ph.gradient(t);
    const Eigen::MatrixXd& Q = ph.quad;
    const std::complex<double> E = r * std::exp(I * ph.value(t));

    set_component(jet.u, n, k, E);
    for (int i = 0; i < m; ++i)
      set_component(jet.first[i], n, k, I * g(i) * E);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j)
        set_component(jet.d2(i, j), n, k, (I * Q(i, j) - g(i) * g(j)) * E);
    if (order >= 3) {
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          for (int l = j; l < m; ++l) {
            // Chain rule for exp(i phi) with vanishing third phase
            // derivatives.
            const std::complex<double> coeff =
                -Q(i, j) * g(l) - Q(i, l) * g(j) - Q(j, l) * g(i) -
                I * g(i) * g(j) * g(l);
            set_component(jet.third[detail::sym3_index(m, i, j, l)], n, k,
                          coeff * E);
          }
    }
  }
  return jet;
}

std::unique_ptr<Immersion> PhaseImmersion::isothermal_variant() const {
  if (domain().kind() != Domain::Kind::torus) return nullptr;
  const int m = link_dim();
  for (const auto& ph : phases_)
    if (ph.quad.norm() > 0) return nullptr;

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t k = 0; k < radii_.size(); ++k)
    g += radii_[k] * radii_[k] * phases_[k].lin * phases_[k].lin.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  if (eig.eigenvalues().minCoeff() <= 0) return nullptr;
  const double det = eig.eigenvalues().prod();
  // T = det(g)^{1/2m} g^{-1/2} satisfies T^t g T = det(g)^{1/m} I, so the
  // pullback metric under t -> T t is a constant multiple of the identity.
  const Eigen::MatrixXd T =
      std::pow(det, 1.0 / (2 * m)) *
      (eig.eigenvectors() *
       eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
       eig.eigenvectors().transpose());

  std::vector<QuadraticPhase> phases = phases_;
  for (auto& ph : phases) ph.lin = T.transpose() * ph.lin;
  Domain dom = Domain::torus(T.inverse() * domain().lattice());
  return std::make_unique<PhaseImmersion>(name() + "_isothermal",
                                          std::move(dom), radii_,
                                          std::move(phases), genus());
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Real3Jet {
  Eigen::Vector3d u;
  Eigen::Vector3d d1[2];
  Eigen::Vector3d d2[3];  // (00), (01), (11)
  Eigen::Vector3d d3[4];  // (000), (001), (011), (111)
};

Real3Jet latlong_jet(double th, double ph) {
  const double c = std::cos(th), s = std::sin(th);
  const double C = std::cos(ph), S = std::sin(ph);
  Real3Jet j;
  j.u = {c * C, c * S, s};
  j.d1[0] = {-s * C, -s * S, c};
  j.d1[1] = {-c * S, c * C, 0};
  j.d2[0] = -j.u;
  j.d2[1] = {s * S, -s * C, 0};
  j.d2[2] = {-c * C, -c * S, 0};
  j.d3[0] = -j.d1[0];
  j.d3[1] = -j.d1[1];
  j.d3[2] = {s * C, s * S, 0};
  j.d3[3] = {c * S, -c * C, 0};
  return j;
}

Real3Jet mercator_jet(double x, double y) {
  const double sg = 1.0 / std::cosh(y), ta = std::tanh(y);
  const double C = std::cos(x), S = std::sin(x);
  // sg' = -sg ta, ta' = sg^2.
  Real3Jet j;
  j.u = {sg * C, sg * S, ta};
  j.d1[0] = {-sg * S, sg * C, 0};
  j.d1[1] = {-sg * ta * C, -sg * ta * S, sg * sg};
  j.d2[0] = {-sg * C, -sg * S, 0};
  j.d2[1] = {sg * ta * S, -sg * ta * C, 0};
  const double a = sg * (ta * ta - sg * sg);
  j.d2[2] = {a * C, a * S, -2 * sg * sg * ta};
  j.d3[0] = {sg * S, -sg * C, 0};
  j.d3[1] = {sg * ta * C, sg * ta * S, 0};
  j.d3[2] = {-a * S, a * C, 0};
  const double b = sg * ta * (5 * sg * sg - ta * ta);
  j.d3[3] = {b * C, b * S, 4 * sg * sg * ta * ta - 2 * sg * sg * sg * sg};
  return j;
}

Jet embed_real3(const Eigen::VectorXd& t, const Real3Jet& r, int order,
                const Eigen::Matrix3d& rot) {
  Jet jet = make_jet(t, 6, order);
  jet.u.head(3) = rot * r.u;
  for (int i = 0; i < 2; ++i) jet.first[i].head(3) = rot * r.d1[i];
  jet.d2(0, 0).head(3) = rot * r.d2[0];
  jet.d2(0, 1).head(3) = rot * r.d2[1];
  jet.d2(1, 1).head(3) = rot * r.d2[2];
  if (order >= 3) {
    jet.third[detail::sym3_index(2, 0, 0, 0)].head(3) = rot * r.d3[0];
    jet.third[detail::sym3_index(2, 0, 0, 1)].head(3) = rot * r.d3[1];
    jet.third[detail::sym3_index(2, 0, 1, 1)].head(3) = rot * r.d3[2];
    jet.third[detail::sym3_index(2, 1, 1, 1)].head(3) = rot * r.d3[3];
  }
  return jet;
}

Domain sphere_domain(const std::string& chart) {
  if (chart == "mercator")
    return Domain::chart(Eigen::Vector2d(0, -3), Eigen::Vector2d(2 * kPi, 3));
  return Domain::chart(Eigen::Vector2d(-kPi / 2, 0),
                       Eigen::Vector2d(kPi / 2, 2 * kPi));
}

}  // namespace

GreatSphereImmersion::GreatSphereImmersion(const std::string& chart)
    : Immersion("great_sphere", sphere_domain(chart), 3, 0) {
  if (chart == "latlong")
    chart_ = Chart::latlong;
  else if (chart == "mercator")
    chart_ = Chart::mercator;
  else if (chart == "rotated")
    chart_ = Chart::rotated;
  else
    throw DomainError("unknown great_sphere chart: " + chart);
}

Jet GreatSphereImmersion::evaluate(const Eigen::VectorXd& t,
                                   int order) const {
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
  if (chart_ == Chart::rotated) {
    // Quarter turn about the y-axis: (x, y, z) -> (z, y, -x), moving the
    // latlong poles onto the equator.
    rot << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  }
  const Real3Jet r = (chart_ == Chart::mercator)
                         ? mercator_jet(t(0), t(1))
                         : latlong_jet(t(0), t(1));
  return embed_real3(t, r, order, rot);
}

std::unique_ptr<Immersion> GreatSphereImmersion::isothermal_variant() const {
  return std::make_unique<GreatSphereImmersion>("mercator");
}

NonIsotropicSphereImmersion::NonIsotropicSphereImmersion()
    : Immersion("non_isotropic_sphere",
                Domain::chart(Eigen::Vector2d(0.15, 0),
                              Eigen::Vector2d(kPi - 0.15, 2 * kPi)),
                3, std::nullopt) {}

Jet NonIsotropicSphereImmersion::evaluate(const Eigen::VectorXd& t,
                                          int order) const {
  const double s = t(0);
  const std::complex<double> I(0, 1);
  const std::complex<double> E = std::exp(I * t(1));
  // d^p/ds^p of cos s and sin s, p = 0..3.
  const double dc[4] = {std::cos(s), -std::sin(s), -std::cos(s), std::sin(s)};
  const double dsn[4] = {std::sin(s), std::cos(s), -std::sin(s), -std::cos(s)};
  const std::complex<double> ipow[4] = {1.0, I, -1.0, -I};

  Jet jet = make_jet(t, 6, order);
  auto fill = [&](AmbientVector& v, int p, int q) {
    set_component(v, 3, 0, q == 0 ? dc[p] : 0.0);
    set_component(v, 3, 1, dsn[p] * ipow[q] * E);
  };
  fill(jet.u, 0, 0);
  fill(jet.first[0], 1, 0);
  fill(jet.first[1], 0, 1);
  fill(jet.d2(0, 0), 2, 0);
  fill(jet.d2(0, 1), 1, 1);
  fill(jet.d2(1, 1), 0, 2);
  if (order >= 3) {
    fill(jet.third[detail::sym3_index(2, 0, 0, 0)], 3, 0);
    fill(jet.third[detail::sym3_index(2, 0, 0, 1)], 2, 1);
    fill(jet.third[detail::sym3_index(2, 0, 1, 1)], 1, 2);
    fill(jet.third[detail::sym3_index(2, 1, 1, 1)], 0, 3);
  }
  return jet;
}

FiniteDifferenceImmersion::FiniteDifferenceImmersion(
    std::string name, Domain domain, int complex_dim, PositionFn position,
    double step)
    : Immersion(std::move(name), std::move(domain), complex_dim, std::nullopt),
      position_(std::move(position)),
      step_(step) {}

Jet FiniteDifferenceImmersion::evaluate(const Eigen::VectorXd& t,
                                        int order) const {
  const int m = link_dim();
  const double h = step_;
  Jet jet = make_jet(t, ambient_dim(), order);
  jet.u = position_(t);
  auto shifted = [&](int i, double hi, int j, double hj) {
    Eigen::VectorXd s = t;
    s(i) += hi;
    if (j >= 0) s(j) += hj;
    return position_(s);
  };
  for (int i = 0; i < m; ++i) {
    const AmbientVector fp = shifted(i, h, -1, 0);
    const AmbientVector fm = shifted(i, -h, -1, 0);
    jet.first[i] = (fp - fm) / (2 * h);
    jet.d2(i, i) = (fp - 2 * jet.u + fm) / (h * h);
    for (int j = i + 1; j < m; ++j) {
      jet.d2(i, j) = (shifted(i, h, j, h) - shifted(i, h, j, -h) -
                      shifted(i, -h, j, h) + shifted(i, -h, j, -h)) /
                     (4 * h * h);
    }
  }
  return jet;
}

}  // namespace hslink

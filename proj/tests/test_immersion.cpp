#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "hslink/errors.hpp"
#include "hslink/immersion.hpp"
#include "hslink/rng.hpp"
#include "support/fd_oracle.hpp"
#include "support/fixtures.hpp"

using namespace hslink;

namespace {

std::vector<std::unique_ptr<Immersion>> all_examples() {
  std::vector<std::unique_ptr<Immersion>> v;
  v.push_back(fixtures::clifford());
  v.push_back(fixtures::s3());
  v.push_back(fixtures::nonminimal_torus());
  v.push_back(fixtures::great_circle());
  v.push_back(fixtures::planted_zero());
  v.push_back(std::make_unique<GreatSphereImmersion>("latlong"));
  v.push_back(std::make_unique<GreatSphereImmersion>("mercator"));
  v.push_back(std::make_unique<GreatSphereImmersion>("rotated"));
  v.push_back(std::make_unique<NonIsotropicSphereImmersion>());
  return v;
}

double rel_error(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

}  // namespace

TEST_CASE("positions are unit length and first derivatives are tangent") {
  Rng rng(12345);
  for (const auto& imm : all_examples()) {
    CAPTURE(imm->name());
    for (int trial = 0; trial < 25; ++trial) {
      const Eigen::VectorXd t = imm->domain().random_point(rng);
      const Jet jet = imm->jet(t, 2);
      CHECK(std::abs(jet.u.norm() - 1.0) < 1e-12);
      for (int i = 0; i < jet.dim(); ++i)
        CHECK(std::abs(jet.u.dot(jet.d1(i))) < 1e-12);
    }
  }
}

TEST_CASE("exact jets match the finite-difference oracle") {
  Rng rng(4242);
  for (const auto& imm : all_examples()) {
    CAPTURE(imm->name());
    const int m = imm->link_dim();
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd t = imm->domain().random_point(rng);
      const Jet jet = imm->jet(t, imm->max_jet_order());
      for (int i = 0; i < m; ++i)
        CHECK(rel_error(jet.d1(i), oracle::d1(*imm, t, i)) < 1e-6);
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          CHECK(rel_error(jet.d2(i, j), oracle::d2(*imm, t, i, j)) < 1e-6);
      if (jet.order >= 3) {
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j)
            for (int k = j; k < m; ++k)
              CHECK(rel_error(jet.d3(i, j, k), oracle::d3(*imm, t, i, j, k)) <
                    1e-6);
      }
    }
  }
}

TEST_CASE("frozen clifford jet values at the origin") {
  const auto imm = fixtures::clifford();
  const Jet jet = imm->jet(Eigen::Vector2d(0, 0), 3);
  const double r = 1.0 / std::sqrt(3.0);
  AmbientVector u(6), us(6), uss(6), ust(6), usst(6);
  u << r, r, r, 0, 0, 0;          // (1,1,1)/sqrt(3)
  us << 0, 0, 0, r, 0, -r;        // i a_k / sqrt(3), a = (1,0,-1)
  uss << -r, 0, -r, 0, 0, 0;      // -a_k^2 / sqrt(3)
  ust << 0, 0, -r, 0, 0, 0;       // -a_k b_k / sqrt(3), b = (0,1,-1)
  usst << 0, 0, 0, 0, 0, r;       // -i a_k^2 b_k / sqrt(3)
  CHECK((jet.u - u).norm() < 1e-15);
  CHECK((jet.d1(0) - us).norm() < 1e-15);
  CHECK((jet.d2(0, 0) - uss).norm() < 1e-15);
  CHECK((jet.d2(0, 1) - ust).norm() < 1e-15);
  CHECK((jet.d3(0, 0, 1) - usst).norm() < 1e-15);
}

TEST_CASE("jet accessors are symmetric in their indices") {
  const auto imm = fixtures::nonminimal_torus();
  const Jet jet = imm->jet(Eigen::Vector2d(0.3, 1.1), 3);
  // Mixed partials are stored once per sorted tuple, so permuted accessors
  // alias the same vector.
  CHECK(&jet.d2(0, 1) == &jet.d2(1, 0));
  CHECK(&jet.d3(0, 1, 1) == &jet.d3(1, 1, 0));
  CHECK(&jet.d3(0, 0, 1) == &jet.d3(1, 0, 0));
}

TEST_CASE("jet evaluation rejects bad orders and out-of-domain points") {
  const auto sphere = std::make_unique<GreatSphereImmersion>();
  CHECK_THROWS_AS(sphere->jet(Eigen::Vector2d(0, 0), 1), DomainError);
  CHECK_THROWS_AS(sphere->jet(Eigen::Vector2d(0, 0), 4), DomainError);
  CHECK_THROWS_AS(sphere->jet(Eigen::Vector2d(3, 0), 2), DomainError);

  // An immersion without third-derivative rules refuses order 3.
  const auto base = fixtures::clifford();
  FiniteDifferenceImmersion fd(
      "fd_clifford", base->domain(), base->complex_dim(),
      [imm = std::shared_ptr<Immersion>(fixtures::clifford())](
          const Eigen::VectorXd& t) { return imm->jet(t, 2).u; });
  CHECK(fd.max_jet_order() == 2);
  CHECK_THROWS_AS(fd.jet(Eigen::Vector2d(0, 0), 3), DomainError);
  const Jet jet = fd.jet(Eigen::Vector2d(0.4, 0.9), 2);
  const Jet exact = base->jet(Eigen::Vector2d(0.4, 0.9), 2);
  CHECK(rel_error(jet.d1(0), exact.d1(0)) < 1e-7);
  CHECK(rel_error(jet.d2(0, 1), exact.d2(0, 1)) < 1e-6);
}

TEST_CASE("phase immersions reject inconsistent construction") {
  std::vector<double> radii = {1, 1};  // norm 2, not 1
  std::vector<QuadraticPhase> phases(2, fixtures::linear_phase(1, 0));
  CHECK_THROWS_AS(
      PhaseImmersion("bad", Domain::torus(Eigen::Matrix2d::Identity()), radii,
                     phases, std::nullopt),
      DomainError);
}

TEST_CASE("isothermal variant of a homogeneous torus is conformally flat") {
  for (auto make : {&fixtures::clifford, &fixtures::nonminimal_torus}) {
    const auto imm = make();
    const auto iso = imm->isothermal_variant();
    REQUIRE(iso != nullptr);
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd t = iso->domain().random_point(rng);
      const Jet jet = iso->jet(t, 2);
      const double g11 = jet.d1(0).dot(jet.d1(0));
      const double g22 = jet.d1(1).dot(jet.d1(1));
      const double g12 = jet.d1(0).dot(jet.d1(1));
      CHECK(std::abs(g11 - g22) < 1e-12);
      CHECK(std::abs(g12) < 1e-12);
    }
  }
  // Quadratic phases have no closed-form isothermal reparametrization.
  CHECK(fixtures::planted_zero()->isothermal_variant() == nullptr);
}

TEST_CASE("great sphere charts parametrize the same real locus") {
  GreatSphereImmersion latlong("latlong"), mercator("mercator"),
      rotated("rotated");
  // Same point: latitude 0.3, longitude 1.2 has mercator y = asinh(tan 0.3).
  const double lat = 0.3, lon = 1.2;
  const Eigen::Vector3d p(std::cos(lat) * std::cos(lon),
                          std::cos(lat) * std::sin(lon), std::sin(lat));
  const Jet a = latlong.jet(Eigen::Vector2d(lat, lon), 2);
  CHECK((a.u.head(3) - p).norm() < 1e-14);
  CHECK(a.u.tail(3).isZero());

  const double y = std::asinh(std::tan(lat));
  const Jet b = mercator.jet(Eigen::Vector2d(lon, y), 2);
  CHECK((b.u.head(3) - p).norm() < 1e-14);

  const Jet c = rotated.jet(Eigen::Vector2d(lat, lon), 2);
  CHECK((c.u.head(3) - Eigen::Vector3d(p.z(), p.y(), -p.x())).norm() < 1e-14);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hslink/errors.hpp"
#include "hslink/geometry.hpp"
#include "hslink/rng.hpp"
#include "support/fd_oracle.hpp"
#include "support/fixtures.hpp"

using namespace hslink;

TEST_CASE("frozen induced metrics of the standard tori") {
  const Eigen::Vector2d t(0.7, -0.4);

  const MetricData clifford = induced_metric(fixtures::clifford()->jet(t, 2));
  Eigen::Matrix2d g_clifford;
  g_clifford << 2.0 / 3, 1.0 / 3, 1.0 / 3, 2.0 / 3;
  CHECK((clifford.g - g_clifford).norm() < 1e-14);
  CHECK(clifford.det == doctest::Approx(1.0 / 3).epsilon(1e-13));

  const MetricData s3 = induced_metric(fixtures::s3()->jet(t, 2));
  CHECK((s3.g - 0.5 * Eigen::Matrix2d::Identity()).norm() < 1e-14);

  const MetricData nonminimal = induced_metric(fixtures::nonminimal_torus()->jet(t, 2));
  CHECK((nonminimal.g - Eigen::Matrix2d::Identity()).norm() < 1e-14);
  CHECK((nonminimal.inverse - Eigen::Matrix2d::Identity()).norm() < 1e-13);
}

TEST_CASE("latlong metric of the great sphere is diag(1, cos^2 lat)") {
  GreatSphereImmersion sphere;
  const double lat = 0.83, lon = 2.1;
  const MetricData md = induced_metric(sphere.jet(Eigen::Vector2d(lat, lon), 2));
  CHECK(md.g(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(md.g(1, 1) ==
        doctest::Approx(std::cos(lat) * std::cos(lat)).epsilon(1e-14));
  CHECK(std::abs(md.g(0, 1)) < 1e-15);
}

TEST_CASE("degenerate metrics are an error") {
  // Rank-one weight matrix: u_s and u_t are parallel.
  const auto degenerate = fixtures::homogeneous_torus(
      "degenerate", {0.5, 0.5, 0}, {1, 1, 0}, {1, 1, 0});
  CHECK_THROWS_AS(induced_metric(degenerate->jet(Eigen::Vector2d(0, 0), 2)),
                  NumericalError);
}

TEST_CASE("mean curvature has radial component -m and matches the oracle") {
  Rng rng(12345);
  std::vector<std::unique_ptr<Immersion>> examples;
  examples.push_back(fixtures::clifford());
  examples.push_back(fixtures::nonminimal_torus());
  examples.push_back(fixtures::planted_zero());
  for (const auto& imm : examples) {
    CAPTURE(imm->name());
    for (int trial = 0; trial < 8; ++trial) {
      const Eigen::VectorXd t = imm->domain().random_point(rng);
      const Jet jet = imm->jet(t, 2);
      const AmbientVector h = mean_curvature(jet);
      CHECK(h.dot(jet.u) == doctest::Approx(-jet.dim()).epsilon(1e-12));
      for (int i = 0; i < jet.dim(); ++i)
        CHECK(std::abs(h.dot(jet.d1(i))) < 1e-12);
      CHECK((h - oracle::mean_curvature(*imm, t)).norm() < 1e-6);
    }
  }
}

TEST_CASE("sphere mean curvature vanishes on minimal examples") {
  Rng rng(5);
  GreatSphereImmersion sphere;
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd tc = fixtures::clifford()->domain().random_point(rng);
    CHECK(sphere_mean_curvature(fixtures::clifford()->jet(tc, 2)).norm() <
          1e-12);
    const Eigen::VectorXd ts = sphere.domain().random_point(rng);
    CHECK(sphere_mean_curvature(sphere.jet(ts, 2)).norm() < 1e-12);
  }
}

TEST_CASE("sphere mean curvature of the nonminimal-type torus has |Hbar|^2 = 2") {
  // lambda = (5, 2, 1), so Hbar = sum (2 - lambda_k) u_k and
  // |Hbar|^2 = 9/6 + 0 + 1/2 = 2.
  Rng rng(6);
  const auto imm = fixtures::nonminimal_torus();
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd t = imm->domain().random_point(rng);
    const AmbientVector hbar = sphere_mean_curvature(imm->jet(t, 2));
    CHECK(hbar.squaredNorm() == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("second fundamental form vanishes on the great circle") {
  const auto circle = fixtures::great_circle();
  for (double s : {0.0, 0.5, 2.0, 5.5}) {
    const Jet jet = circle->jet(Eigen::VectorXd::Constant(1, s), 2);
    for (const AmbientVector& a : second_fundamental_form(jet))
      CHECK(a.norm() < 1e-14);
  }
}

TEST_CASE("metric trace of the second fundamental form equals Hbar") {
  Rng rng(7);
  std::vector<std::unique_ptr<Immersion>> examples;
  examples.push_back(fixtures::nonminimal_torus());
  examples.push_back(fixtures::planted_zero());
  for (const auto& imm : examples) {
    for (int trial = 0; trial < 8; ++trial) {
      const Eigen::VectorXd t = imm->domain().random_point(rng);
      const Jet jet = imm->jet(t, 2);
      const AmbientVector lhs = trace_second_fundamental_form(jet);
      const AmbientVector rhs = sphere_mean_curvature(jet);
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
  GreatSphereImmersion sphere("mercator");
  const Eigen::Vector2d t(1.0, 0.7);
  CHECK((trace_second_fundamental_form(sphere.jet(t, 2)) -
         sphere_mean_curvature(sphere.jet(t, 2)))
            .norm() < 1e-12);
}

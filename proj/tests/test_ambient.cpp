#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hslink/ambient.hpp"
#include "hslink/domain.hpp"
#include "hslink/jet.hpp"
#include "hslink/rng.hpp"

using namespace hslink;

TEST_CASE("J squares to minus the identity, bitwise") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    AmbientVector v(6);
    for (int i = 0; i < 6; ++i) v(i) = rng.uniform(-2, 2);
    const AmbientVector jjv = apply_J(apply_J(v));
    for (int i = 0; i < 6; ++i) CHECK(jjv(i) == -v(i));
  }
}

TEST_CASE("J is an isometry and <Jv, v> = 0") {
  Rng rng(8);
  AmbientVector v(8);
  for (int i = 0; i < 8; ++i) v(i) = rng.uniform(-1, 1);
  CHECK(apply_J(v).norm() == doctest::Approx(v.norm()).epsilon(1e-15));
  CHECK(symplectic_pair(v, v) == 0.0);
}

TEST_CASE("symplectic pairing is antisymmetric and matches apply_J") {
  Rng rng(9);
  AmbientVector v(10), w(10);
  for (int i = 0; i < 10; ++i) {
    v(i) = rng.uniform(-1, 1);
    w(i) = rng.uniform(-1, 1);
  }
  CHECK(symplectic_pair(v, w) == doctest::Approx(-symplectic_pair(w, v)));
  CHECK(symplectic_pair(v, w) == doctest::Approx(apply_J(v).dot(w)));
}

TEST_CASE("complex round trip preserves the layout") {
  AmbientVector v(6);
  v << 1, 2, 3, 4, 5, 6;
  const Eigen::VectorXcd z = to_complex(v);
  CHECK(z(0) == std::complex<double>(1, 4));
  CHECK(z(2) == std::complex<double>(3, 6));
  CHECK(from_complex(z).isApprox(v));
  // Multiplication by i in C^n agrees with apply_J in R^{2n}.
  const AmbientVector jv = apply_J(v);
  const Eigen::VectorXcd iz = std::complex<double>(0, 1) * z;
  CHECK(from_complex(iz).isApprox(jv));
}

TEST_CASE("symmetric index maps cover sorted tuples exactly once") {
  for (int m = 1; m <= 3; ++m) {
    std::vector<int> hits2(detail::sym2_count(m), 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const int idx = detail::sym2_index(m, i, j);
        CHECK(idx == detail::sym2_index(m, j, i));
        if (i <= j) ++hits2[idx];
      }
    for (int h : hits2) CHECK(h == 1);

    std::vector<int> hits3(detail::sym3_count(m), 0);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j)
        for (int k = j; k < m; ++k) {
          const int idx = detail::sym3_index(m, i, j, k);
          CHECK(idx == detail::sym3_index(m, k, j, i));
          CHECK(idx == detail::sym3_index(m, j, k, i));
          ++hits3[idx];
        }
    for (int h : hits3) CHECK(h == 1);
  }
}

TEST_CASE("torus grids sample lattice fractions, charts sample cell centers") {
  const Domain torus = Domain::torus(2 * Eigen::Matrix2d::Identity());
  GridSpec grid{{4, 4}};
  CHECK(torus.grid_point(grid, {0, 0}).isZero());
  CHECK(torus.grid_point(grid, {2, 1}).isApprox(Eigen::Vector2d(1.0, 0.5)));

  const Domain chart =
      Domain::chart(Eigen::Vector2d(0, 0), Eigen::Vector2d(4, 4));
  CHECK(chart.grid_point(grid, {0, 0}).isApprox(Eigen::Vector2d(0.5, 0.5)));
  CHECK(chart.grid_point(grid, {3, 3}).isApprox(Eigen::Vector2d(3.5, 3.5)));
  CHECK(chart.contains(Eigen::Vector2d(2, 2)));
  CHECK(!chart.contains(Eigen::Vector2d(5, 2)));
}

TEST_CASE("wrap difference picks the shortest lattice representative") {
  const Domain torus = Domain::torus(2 * Eigen::Matrix2d::Identity());
  const Eigen::Vector2d d =
      torus.wrap_difference(Eigen::Vector2d(1.9, 0.1), Eigen::Vector2d(0.1, 1.9));
  CHECK(d.isApprox(Eigen::Vector2d(-0.2, 0.2), 1e-12));
}

TEST_CASE("grid unflatten is row-major with the last dimension fastest") {
  GridSpec grid{{3, 4}};
  CHECK(grid.total() == 12);
  CHECK(grid.unflatten(0) == std::vector<int>{0, 0});
  CHECK(grid.unflatten(5) == std::vector<int>{1, 1});
  CHECK(grid.unflatten(11) == std::vector<int>{2, 3});
}

TEST_CASE("rng streams are reproducible and uniform draws lie in range") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  Rng c(1);
  for (int i = 0; i < 100; ++i) {
    const auto k = c.uniform_int(-3, 3);
    CHECK(k >= -3);
    CHECK(k <= 3);
  }
}

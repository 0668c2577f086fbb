#pragma once

#include <vector>

#include "hslink/ambient.hpp"
#include "hslink/errors.hpp"

namespace hslink {

namespace detail {

/// Index of the ordered pair (i, j), i <= j, in lexicographic order over the
/// upper triangle of an m x m symmetric array.
inline int sym2_index(int m, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * m - i * (i + 1) / 2 + j;
}

inline int sym2_count(int m) { return m * (m + 1) / 2; }

/// Index of the sorted triple (i <= j <= k) among all sorted triples from
/// {0, ..., m-1} in lexicographic order.
inline int sym3_index(int m, int i, int j, int k) {
  int a = i, b = j, c = k;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  int idx = 0;
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q)
      for (int r = q; r < m; ++r) {
        if (p == a && q == b && r == c) return idx;
        ++idx;
      }
  throw DomainError("sym3_index: indices out of range");
}

inline int sym3_count(int m) { return m * (m + 1) * (m + 2) / 6; }

}  // namespace detail

/// Pointwise derivative data of an immersion u: parameter point, position,
/// and first through (optionally) third partial derivatives as ambient
/// vectors. Mixed partials are stored once per sorted index tuple, so
/// symmetry under index permutation is structural.
struct Jet {
  Eigen::VectorXd point;                // parameter values, size m
  AmbientVector u;                      // position, size 2n
  std::vector<AmbientVector> first;     // m entries
  std::vector<AmbientVector> second;    // m(m+1)/2 entries, sorted pairs
  std::vector<AmbientVector> third;     // m(m+1)(m+2)/6 entries, or empty
  int order = 2;                        // 2 or 3

  int dim() const { return static_cast<int>(first.size()); }
  Eigen::Index ambient_dim() const { return u.size(); }

  const AmbientVector& d1(int i) const { return first.at(i); }

  const AmbientVector& d2(int i, int j) const {
    return second.at(detail::sym2_index(dim(), i, j));
  }

  const AmbientVector& d3(int i, int j, int k) const {
    if (order < 3 || third.empty())
      throw DomainError("jet does not carry third derivatives");
    return third.at(detail::sym3_index(dim(), i, j, k));
  }

  AmbientVector& d2(int i, int j) {
    return second.at(detail::sym2_index(dim(), i, j));
  }
};

}  // namespace hslink

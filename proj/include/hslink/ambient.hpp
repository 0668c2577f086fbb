#pragma once

#include <Eigen/Dense>
#include <complex>

namespace hslink {

// Ambient vectors live in R^{2n} identified with C^n. The layout is
// [Re z_1, ..., Re z_n, Im z_1, ..., Im z_n], so the complex structure J
// (multiplication by i) acts block-wise as (x, y) -> (-y, x).
using AmbientVector = Eigen::VectorXd;

inline Eigen::Index complex_dim(const AmbientVector& v) { return v.size() / 2; }

/// Multiplication by i on R^{2n} ~ C^n. Exact up to sign-flip rounding,
/// i.e. bitwise: only negation and copying are involved.
inline AmbientVector apply_J(const AmbientVector& v) {
  const Eigen::Index n = v.size() / 2;
  AmbientVector out(v.size());
  out.head(n) = -v.tail(n);
  out.tail(n) = v.head(n);
  return out;
}

/// The symplectic pairing <Jv, w> on R^{2n}.
inline double symplectic_pair(const AmbientVector& v, const AmbientVector& w) {
  const Eigen::Index n = v.size() / 2;
  // <Jv, w> = x_w . y_v... spelled out: J(x,y) = (-y,x), so
  // <Jv, w> = -y_v . x_w + x_v . y_w.
  return v.head(n).dot(w.tail(n)) - v.tail(n).dot(w.head(n));
}

inline Eigen::VectorXcd to_complex(const AmbientVector& v) {
  const Eigen::Index n = v.size() / 2;
  Eigen::VectorXcd z(n);
  for (Eigen::Index k = 0; k < n; ++k) z(k) = {v(k), v(n + k)};
  return z;
}

inline AmbientVector from_complex(const Eigen::VectorXcd& z) {
  AmbientVector v(2 * z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    v(k) = z(k).real();
    v(z.size() + k) = z(k).imag();
  }
  return v;
}

}  // namespace hslink

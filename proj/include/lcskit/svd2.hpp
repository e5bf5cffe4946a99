#pragma once

#include "lcskit/common.hpp"

#include <utility>

namespace lcskit {

/// SVD of a 2x2 deformation gradient, indexed so that s1 <= s2 (the index
/// convention of finite-time Lyapunov analysis, smallest stretch first).
/// xi1/xi2 are the right singular vectors (initial-point directions),
/// th1/th2 the left singular vectors (image-point directions), with
/// th_i = m * xi_i / s_i, so the pairs keep their relative orientation.
template <class Scalar>
struct Svd2 {
  Scalar s1;
  Scalar s2;
  Vec2<Scalar> xi1, xi2;
  Vec2<Scalar> th1, th2;
  bool degenerate = false;

  Mat2<Scalar> reconstruct() const {
    return s1 * th1 * xi1.transpose() + s2 * th2 * xi2.transpose();
  }
};

using Svd2d = Svd2<double>;

/// Unit eigenvector of the symmetric 2x2 matrix [[p, q], [q, r]] belonging to
/// the larger eigenvalue. Exact for diagonal input.
template <class Scalar>
Vec2<Scalar> sym2_major_eigenvector(Scalar p, Scalar q, Scalar r) {
  if (q == Scalar(0)) {
    return p >= r ? Vec2<Scalar>(1, 0) : Vec2<Scalar>(0, 1);
  }
  const Scalar phi = Scalar(0.5) * std::atan2(Scalar(2) * q, p - r);
  return Vec2<Scalar>(std::cos(phi), std::sin(phi));
}

/// Closed-form 2x2 SVD.
///
/// The direction of xi2 is obtained trigonometrically from the right
/// Cauchy-Green tensor m^T m; singular values come from |m xi_i|, which keeps
/// them accurate when m is ill-conditioned (no eigenvalue cancellation).
/// Sign convention: xi2 has nonnegative first component (tie: nonnegative
/// second), xi1 is the quarter-turn of xi2 with det[xi1 xi2] = +1, and the
/// theta_i are slaved to the xi_i via th_i = m xi_i / s_i.
///
/// Throws std::invalid_argument on non-finite input and std::domain_error on
/// a singular matrix. `gap_tol_rel` sets the degeneracy flag threshold:
/// degenerate iff s2 - s1 < gap_tol_rel * s2.
template <class Derived>
Svd2<typename Derived::Scalar> svd2(const Eigen::MatrixBase<Derived>& m,
                                    typename Derived::Scalar gap_tol_rel = 1e-9) {
  using Scalar = typename Derived::Scalar;
  static_assert(Derived::RowsAtCompileTime == 2 && Derived::ColsAtCompileTime == 2);
  const Mat2<Scalar> a = m;
  if (!a.allFinite()) throw std::invalid_argument("svd2: non-finite matrix");

  // Right Cauchy-Green entries.
  const Scalar c11 = a(0, 0) * a(0, 0) + a(1, 0) * a(1, 0);
  const Scalar c22 = a(0, 1) * a(0, 1) + a(1, 1) * a(1, 1);
  const Scalar c12 = a(0, 0) * a(0, 1) + a(1, 0) * a(1, 1);

  Svd2<Scalar> out;
  out.xi2 = sym2_major_eigenvector(c11, c12, c22);
  if (out.xi2.x() < Scalar(0) || (out.xi2.x() == Scalar(0) && out.xi2.y() < Scalar(0))) {
    out.xi2 = -out.xi2;
  }
  out.xi1 = Vec2<Scalar>(out.xi2.y(), -out.xi2.x());

  Vec2<Scalar> w2 = a * out.xi2;
  Vec2<Scalar> w1 = a * out.xi1;
  out.s2 = w2.norm();
  out.s1 = w1.norm();
  if (out.s1 > out.s2) {  // can only happen near degeneracy; restore ordering
    std::swap(out.s1, out.s2);
    out.xi2 = out.xi1;
    if (out.xi2.x() < Scalar(0) || (out.xi2.x() == Scalar(0) && out.xi2.y() < Scalar(0))) {
      out.xi2 = -out.xi2;
    }
    out.xi1 = Vec2<Scalar>(out.xi2.y(), -out.xi2.x());
    w2 = a * out.xi2;
    w1 = a * out.xi1;
    out.s2 = w2.norm();
    out.s1 = w1.norm();
  }
  if (!(out.s2 > Scalar(0)) || !(out.s1 > Scalar(1e-15) * out.s2)) {
    throw std::domain_error("svd2: singular matrix");
  }

  out.th2 = w2 / out.s2;
  out.th1 = w1 / out.s1;
  out.degenerate = (out.s2 - out.s1) < gap_tol_rel * out.s2;
  return out;
}

/// Right and left Cauchy-Green strain tensors (C, B) = (m^T m, m m^T).
template <class Derived>
std::pair<Mat2<typename Derived::Scalar>, Mat2<typename Derived::Scalar>> cauchy_green(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Mat2<Scalar> a = m;
  if (!a.allFinite()) throw std::invalid_argument("cauchy_green: non-finite matrix");
  return {a.transpose() * a, a * a.transpose()};
}

/// Square root of a 2x2 symmetric positive-definite matrix, via the
/// Cayley-Hamilton closed form sqrt(G) = (G + sqrt(det G) I) / sqrt(tr G + 2 sqrt(det G)).
template <class Derived>
Mat2<typename Derived::Scalar> sqrt_spd2(const Eigen::MatrixBase<Derived>& g) {
  using Scalar = typename Derived::Scalar;
  const Mat2<Scalar> a = g;
  if (!a.allFinite()) throw std::invalid_argument("sqrt_spd2: non-finite matrix");
  const Scalar det = a.determinant();
  const Scalar tr = a.trace();
  if (!(det > Scalar(0)) || !(a(0, 0) > Scalar(0))) {
    throw std::domain_error("sqrt_spd2: matrix not positive definite");
  }
  const Scalar s = std::sqrt(det);
  const Scalar t = std::sqrt(tr + Scalar(2) * s);
  return (a + s * Mat2<Scalar>::Identity()) / t;
}

/// Forward finite-time Lyapunov exponent from the largest stretch ratio:
/// (1/T) log(sigma2).
template <class Scalar>
Scalar ftle_forward(Scalar sigma2, Scalar T) {
  if (!(sigma2 > Scalar(0))) throw std::domain_error("ftle_forward: sigma must be positive");
  if (T == Scalar(0)) throw std::invalid_argument("ftle_forward: zero duration");
  return std::log(sigma2) / T;
}

/// Backward FTLE attached to the image point, from the smallest forward
/// stretch ratio: -(1/T) log(sigma1).
template <class Scalar>
Scalar ftle_backward_from_forward(Scalar sigma1, Scalar T) {
  if (!(sigma1 > Scalar(0))) throw std::domain_error("ftle_backward_from_forward: sigma must be positive");
  if (T == Scalar(0)) throw std::invalid_argument("ftle_backward_from_forward: zero duration");
  return -std::log(sigma1) / T;
}

}  // namespace lcskit

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lcskit {

template <class Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <class Scalar>
using Mat32 = Eigen::Matrix<Scalar, 3, 2>;

using Vec2d = Vec2<double>;
using Mat2d = Mat2<double>;
using Mat32d = Mat32<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi]; endpoints may be +-infinity.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  double length() const { return hi - lo; }
  bool contains(double x, double margin = 0.0) const {
    return x >= lo + margin && x <= hi - margin;
  }
};

/// Axis-aligned rectangle in chart parameters.
struct ParamRect {
  Interval x;
  Interval y;

  bool contains(const Vec2d& p, double margin = 0.0) const {
    return x.contains(p.x(), margin) && y.contains(p.y(), margin);
  }
};

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

inline double sq(double x) { return x * x; }

}  // namespace lcskit

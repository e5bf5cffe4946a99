#pragma once

#include "lcskit/common.hpp"

#include <functional>
#include <string>

namespace lcskit {

/// A single-parametrization chart of an embedded 2D manifold.
///
/// `pushforward(p)` is the 3x2 matrix whose columns are the partial
/// derivatives of the embedding with respect to the two parameters, in
/// ambient Euclidean coordinates. `gramian_fn(p)` is the metric representing
/// matrix; factories install a closed form where one exists, and it must
/// agree with pushforward^T * pushforward.
struct Chart {
  std::string name;
  ParamRect domain;
  std::function<Mat32d(const Vec2d&)> pushforward;
  std::function<Mat2d(const Vec2d&)> gramian_fn;
};

/// Plane chart: embedding is the first two ambient axes, metric the identity.
Chart make_euclidean_chart();

/// Sphere of radius R in geographic coordinates (longitude phi, latitude
/// theta, radians). The parameter domain excludes the polar band
/// |theta| > pi/2 - pole_clamp; longitude is unbounded (the embedding is
/// periodic, no wrap bookkeeping needed).
Chart make_sphere_chart(double radius, double pole_clamp = 1e-3);

/// Metric representing matrix G(p). Throws std::domain_error outside the
/// chart domain, std::runtime_error on non-finite evaluation.
Mat2d gramian(const Chart& chart, const Vec2d& p);

/// Coordinate transformation to metric coordinates, |P_*(p)| = G(p)^{1/2}.
Mat2d modulus(const Chart& chart, const Vec2d& p);

/// Metric representation of a linear map df between the tangent spaces at x1
/// and x2: |P_*(x2)| * df * |P_*(x1)|^{-1}. Its singular values are the true
/// metric stretch ratios.
Mat2d metric_representation(const Chart& chart, const Vec2d& x1, const Vec2d& x2,
                            const Mat2d& df);

}  // namespace lcskit

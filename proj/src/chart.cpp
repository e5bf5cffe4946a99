#include "lcskit/chart.hpp"

#include "lcskit/svd2.hpp"

namespace lcskit {

Chart make_euclidean_chart() {
  Chart c;
  c.name = "euclidean";
  c.domain = {};  // all of R^2
  c.pushforward = [](const Vec2d&) {
    Mat32d p = Mat32d::Zero();
    p(0, 0) = 1.0;
    p(1, 1) = 1.0;
    return p;
  };
  c.gramian_fn = [](const Vec2d&) { return Mat2d::Identity(); };
  return c;
}

Chart make_sphere_chart(double radius, double pole_clamp) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere chart: radius must be positive");
  if (!(pole_clamp > 0.0)) throw std::invalid_argument("sphere chart: pole_clamp must be positive");
  const double half_pi = std::asin(1.0);
  Chart c;
  c.name = "sphere";
  c.domain.x = {};  // longitude unbounded
  c.domain.y = {-(half_pi - pole_clamp), half_pi - pole_clamp};
  c.pushforward = [radius](const Vec2d& p) {
    const double phi = p.x(), theta = p.y();
    Mat32d m;
    m(0, 0) = -radius * std::cos(theta) * std::sin(phi);
    m(1, 0) = radius * std::cos(theta) * std::cos(phi);
    m(2, 0) = 0.0;
    m(0, 1) = -radius * std::sin(theta) * std::cos(phi);
    m(1, 1) = -radius * std::sin(theta) * std::sin(phi);
    m(2, 1) = radius * std::cos(theta);
    return m;
  };
  c.gramian_fn = [radius](const Vec2d& p) {
    Mat2d g = Mat2d::Zero();
    g(0, 0) = radius * radius * sq(std::cos(p.y()));
    g(1, 1) = radius * radius;
    return g;
  };
  return c;
}

Mat2d gramian(const Chart& chart, const Vec2d& p) {
  if (!p.allFinite() || !chart.domain.contains(p)) {
    throw std::domain_error("gramian: point outside chart domain");
  }
  Mat2d g = chart.gramian_fn ? chart.gramian_fn(p)
                             : Mat2d(chart.pushforward(p).transpose() * chart.pushforward(p));
  if (!g.allFinite()) throw std::runtime_error("gramian: non-finite evaluation");
  return g;
}

Mat2d modulus(const Chart& chart, const Vec2d& p) { return sqrt_spd2(gramian(chart, p)); }

Mat2d metric_representation(const Chart& chart, const Vec2d& x1, const Vec2d& x2,
                            const Mat2d& df) {
  if (!df.allFinite()) throw std::invalid_argument("metric_representation: non-finite map");
  const Mat2d m1 = modulus(chart, x1);
  const Mat2d m2 = modulus(chart, x2);
  const double det1 = m1.determinant();
  if (!(std::abs(det1) > 0.0)) {
    throw std::domain_error("metric_representation: singular modulus");
  }
  return m2 * df * m1.inverse();
}

}  // namespace lcskit

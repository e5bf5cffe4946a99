#include "lcskit/velocity.hpp"

#include <cmath>
#include <stdexcept>

namespace lcskit {

namespace {

void check_saddle_params(const SaddleParams& p) {
  if (!(p.L > 0.0) || !(p.q1 > 0.0) || !(p.q2 > 0.0)) {
    throw std::invalid_argument("saddle parameters must be positive");
  }
}

}  // namespace

Vec2d saddle_velocity(const SaddleParams& p, const Vec2d& x) {
  const double tx = std::tanh(p.q1 * x[0]);
  const double ty = std::tanh(p.q2 * x[1]);
  const double sx = 1.0 - tx * tx;
  const double sy = 1.0 - ty * ty;
  return {-p.L * p.q2 * sy * tx, p.L * p.q1 * ty * sx};
}

Mat2d saddle_velocity_jacobian(const SaddleParams& p, const Vec2d& x) {
  const double tx = std::tanh(p.q1 * x[0]);
  const double ty = std::tanh(p.q2 * x[1]);
  const double sx = 1.0 - tx * tx;
  const double sy = 1.0 - ty * ty;
  Mat2d j;
  j(0, 0) = -p.L * p.q1 * p.q2 * sx * sy;
  j(0, 1) = 2.0 * p.L * p.q2 * p.q2 * tx * ty * sy;
  j(1, 0) = -2.0 * p.L * p.q1 * p.q1 * tx * ty * sx;
  j(1, 1) = p.L * p.q1 * p.q2 * sx * sy;
  return j;
}

Vec2d linear_saddle_velocity(double lambda, const Vec2d& x) {
  return {-lambda * x[0], lambda * x[1]};
}

VelocityField make_nonlinear_saddle(const SaddleParams& p) {
  check_saddle_params(p);
  VelocityField f;
  f.name = "nonlinear_saddle";
  f.eval = [p](double, const Vec2d& x) { return saddle_velocity(p, x); };
  f.jacobian = [p](double, const Vec2d& x) {
    return saddle_velocity_jacobian(p, x);
  };
  f.incompressible = true;
  return f;
}

VelocityField make_linear_saddle(double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("linear saddle rate must be positive");
  }
  VelocityField f;
  f.name = "linear_saddle";
  f.eval = [lambda](double, const Vec2d& x) {
    return linear_saddle_velocity(lambda, x);
  };
  f.jacobian = [lambda](double, const Vec2d&) {
    Mat2d j;
    j << -lambda, 0.0, 0.0, lambda;
    return j;
  };
  f.incompressible = true;
  return f;
}

VelocityField make_sphere_rotation(double omega) {
  VelocityField f;
  f.name = "sphere_rotation";
  f.eval = [omega](double, const Vec2d&) { return Vec2d{omega, 0.0}; };
  f.jacobian = [](double, const Vec2d&) { return Mat2d::Zero().eval(); };
  f.incompressible = true;
  return f;
}

}  // namespace lcskit

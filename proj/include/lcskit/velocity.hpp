#pragma once

#include "lcskit/common.hpp"

#include <functional>
#include <string>

namespace lcskit {

/// Time-dependent 2D velocity field in chart parameters.
///
/// `jacobian` is the velocity gradient d(u)/d(x) and is optional; when
/// present it enables the tangent-linear route for deformation gradients.
/// `incompressible` is a declared property consumed by verification suites.
struct VelocityField {
  std::string name;
  std::function<Vec2d(double, const Vec2d&)> eval;
  std::function<Mat2d(double, const Vec2d&)> jacobian;
  Interval time_domain = {};
  bool incompressible = false;
};

/// Parameters of the nonlinear incompressible saddle
/// H(x, y) = -L tanh(q1 x) tanh(q2 y).
struct SaddleParams {
  double L = 2.0;
  double q1 = 1.0;
  double q2 = 0.15;
};

/// Hamiltonian velocity of the nonlinear saddle:
/// (dH/dy, -dH/dx) = (-L q2 (1 - tanh^2(q2 y)) tanh(q1 x),
///                     L q1 tanh(q2 y) (1 - tanh^2(q1 x))).
Vec2d saddle_velocity(const SaddleParams& p, const Vec2d& x);

/// Velocity gradient of the saddle field (trace-free).
Mat2d saddle_velocity_jacobian(const SaddleParams& p, const Vec2d& x);

/// (-lambda x, lambda y); closed-form flow map diag(e^{-lambda T}, e^{lambda T}).
Vec2d linear_saddle_velocity(double lambda, const Vec2d& x);

VelocityField make_nonlinear_saddle(const SaddleParams& p = {});
VelocityField make_linear_saddle(double lambda);

/// Rigid rotation about the polar axis in geographic sphere coordinates:
/// (phi_dot, theta_dot) = (omega, 0). Trajectories are latitude circles.
VelocityField make_sphere_rotation(double omega);

}  // namespace lcskit

#include "lcskit/integrate.hpp"

#include <stdexcept>

namespace lcskit {

IntegratorMethod parse_integrator_method(const std::string& name) {
  if (name == "rk4") return IntegratorMethod::rk4;
  if (name == "rk45") return IntegratorMethod::rk45;
  throw std::invalid_argument("unknown integrator method: " + name);
}

std::string to_string(IntegratorMethod m) {
  return m == IntegratorMethod::rk4 ? "rk4" : "rk45";
}

std::string to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::ok:
      return "ok";
    case TrajectoryStatus::left_domain:
      return "left_domain";
    case TrajectoryStatus::step_limit:
      return "step_limit";
    case TrajectoryStatus::nonfinite:
      return "nonfinite";
  }
  return "unknown";
}

TrajectoryResult integrate_trajectory(const VelocityField& field,
                                      const Vec2d& x0, double t1, double t2,
                                      const IntegratorParams& params,
                                      const ParamRect* domain) {
  if (!field.eval) {
    throw std::invalid_argument("integrate_trajectory: field has no evaluator");
  }
  std::function<Vec2d(double, const Vec2d&)> rhs = field.eval;
  std::function<bool(const Vec2d&)> guard;
  if (domain != nullptr) {
    const ParamRect rect = *domain;
    guard = [rect](const Vec2d& x) { return rect.contains(x); };
  }
  const OdeResult<2> r = integrate_ode<2>(rhs, x0, t1, t2, params, guard);
  TrajectoryResult out;
  out.x = r.y;
  out.t = r.t;
  out.steps = r.steps;
  out.status = r.status;
  return out;
}

}  // namespace lcskit

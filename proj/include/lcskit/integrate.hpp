#pragma once

#include "lcskit/common.hpp"
#include "lcskit/velocity.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace lcskit {

enum class IntegratorMethod { rk4, rk45 };

struct IntegratorParams {
  IntegratorMethod method = IntegratorMethod::rk45;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  /// Fixed step for rk4; initial trial step for rk45 (0 picks one from the span).
  double step = 0.0;
  std::int64_t max_steps = 1'000'000;
};

IntegratorMethod parse_integrator_method(const std::string& name);
std::string to_string(IntegratorMethod m);

enum class TrajectoryStatus { ok, left_domain, step_limit, nonfinite };

std::string to_string(TrajectoryStatus s);

template <int N>
struct OdeResult {
  Eigen::Matrix<double, N, 1> y;
  double t = 0.0;
  std::int64_t steps = 0;
  TrajectoryStatus status = TrajectoryStatus::ok;
};

struct TrajectoryResult {
  Vec2d x;
  double t = 0.0;
  std::int64_t steps = 0;
  TrajectoryStatus status = TrajectoryStatus::ok;
  bool ok() const { return status == TrajectoryStatus::ok; }
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double dp_c[7] = {0.0,      1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0,
                                   8.0 / 9.0, 1.0,       1.0};
inline constexpr double dp_a2[1] = {1.0 / 5.0};
inline constexpr double dp_a3[2] = {3.0 / 40.0, 9.0 / 40.0};
inline constexpr double dp_a4[3] = {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0};
inline constexpr double dp_a5[4] = {19372.0 / 6561.0, -25360.0 / 2187.0,
                                    64448.0 / 6561.0, -212.0 / 729.0};
inline constexpr double dp_a6[5] = {9017.0 / 3168.0, -355.0 / 33.0,
                                    46732.0 / 5247.0, 49.0 / 176.0,
                                    -5103.0 / 18656.0};
inline constexpr double dp_b5[7] = {35.0 / 384.0,     0.0, 500.0 / 1113.0,
                                    125.0 / 192.0,    -2187.0 / 6784.0,
                                    11.0 / 84.0,      0.0};
inline constexpr double dp_b4[7] = {5179.0 / 57600.0,   0.0,
                                    7571.0 / 16695.0,   393.0 / 640.0,
                                    -92097.0 / 339200.0, 187.0 / 2100.0,
                                    1.0 / 40.0};

}  // namespace detail

/// Integrates y' = rhs(t, y) from t1 to t2 (either direction).
///
/// `guard` (optional) is checked on accepted states; when it rejects a state
/// the last accepted one is kept and the status is left_domain.
template <int N>
OdeResult<N> integrate_ode(
    const std::function<Eigen::Matrix<double, N, 1>(
        double, const Eigen::Matrix<double, N, 1>&)>& rhs,
    const Eigen::Matrix<double, N, 1>& y0, double t1, double t2,
    const IntegratorParams& params,
    const std::function<bool(const Eigen::Matrix<double, N, 1>&)>& guard = {}) {
  using VecN = Eigen::Matrix<double, N, 1>;
  if (!rhs) throw std::invalid_argument("integrate_ode: missing rhs");
  if (!std::isfinite(t1) || !std::isfinite(t2)) {
    throw std::invalid_argument("integrate_ode: non-finite time span");
  }
  if (params.max_steps <= 0) {
    throw std::invalid_argument("integrate_ode: max_steps must be positive");
  }

  OdeResult<N> out;
  out.y = y0;
  out.t = t1;
  if (!all_finite(y0)) {
    out.status = TrajectoryStatus::nonfinite;
    return out;
  }
  if (guard && !guard(out.y)) {
    out.status = TrajectoryStatus::left_domain;
    return out;
  }
  const double span = t2 - t1;
  if (span == 0.0) return out;
  const double dir = span > 0.0 ? 1.0 : -1.0;

  auto accept = [&](const VecN& y, double t) -> bool {
    if (!all_finite(y)) {
      out.status = TrajectoryStatus::nonfinite;
      return false;
    }
    if (guard && !guard(y)) {
      out.status = TrajectoryStatus::left_domain;
      return false;
    }
    out.y = y;
    out.t = t;
    return true;
  };

  if (params.method == IntegratorMethod::rk4) {
    double h_mag = params.step > 0.0 ? params.step : std::abs(span) / 100.0;
    const auto n_steps = static_cast<std::int64_t>(
        std::ceil(std::abs(span) / h_mag - 1e-12));
    if (n_steps > params.max_steps) {
      out.status = TrajectoryStatus::step_limit;
      return out;
    }
    const double h = span / static_cast<double>(n_steps);
    for (std::int64_t i = 0; i < n_steps; ++i) {
      const double t = t1 + h * static_cast<double>(i);
      const VecN k1 = rhs(t, out.y);
      const VecN k2 = rhs(t + 0.5 * h, out.y + (0.5 * h) * k1);
      const VecN k3 = rhs(t + 0.5 * h, out.y + (0.5 * h) * k2);
      const VecN k4 = rhs(t + h, out.y + h * k3);
      const VecN y_new =
          out.y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double t_new =
          i + 1 == n_steps ? t2 : t1 + h * static_cast<double>(i + 1);
      ++out.steps;
      if (!accept(y_new, t_new)) return out;
    }
    return out;
  }

  // Adaptive Dormand-Prince 5(4) with FSAL; the 5th-order solution is kept.
  const double span_mag = std::abs(span);
  double h = dir * (params.step > 0.0 ? std::min(params.step, span_mag)
                                      : span_mag / 100.0);
  VecN k[7];
  k[0] = rhs(t1, out.y);
  if (!all_finite(k[0])) {
    out.status = TrajectoryStatus::nonfinite;
    return out;
  }
  double t = t1;
  const double h_floor = span_mag * 1e-14;
  for (std::int64_t iter = 0; iter < params.max_steps; ++iter) {
    if (dir * (t2 - t) <= 0.0) return out;
    if (std::abs(h) > std::abs(t2 - t)) h = t2 - t;
    if (std::abs(h) < h_floor) {
      out.status = TrajectoryStatus::step_limit;
      return out;
    }

    using detail::dp_a2;
    using detail::dp_a3;
    using detail::dp_a4;
    using detail::dp_a5;
    using detail::dp_a6;
    using detail::dp_b4;
    using detail::dp_b5;
    using detail::dp_c;
    const VecN& y = out.y;
    k[1] = rhs(t + dp_c[1] * h, y + h * (dp_a2[0] * k[0]));
    k[2] = rhs(t + dp_c[2] * h, y + h * (dp_a3[0] * k[0] + dp_a3[1] * k[1]));
    k[3] = rhs(t + dp_c[3] * h,
               y + h * (dp_a4[0] * k[0] + dp_a4[1] * k[1] + dp_a4[2] * k[2]));
    k[4] = rhs(t + dp_c[4] * h,
               y + h * (dp_a5[0] * k[0] + dp_a5[1] * k[1] + dp_a5[2] * k[2] +
                        dp_a5[3] * k[3]));
    k[5] = rhs(t + h, y + h * (dp_a6[0] * k[0] + dp_a6[1] * k[1] +
                               dp_a6[2] * k[2] + dp_a6[3] * k[3] +
                               dp_a6[4] * k[4]));
    VecN y5 = y + h * (dp_b5[0] * k[0] + dp_b5[2] * k[2] + dp_b5[3] * k[3] +
                       dp_b5[4] * k[4] + dp_b5[5] * k[5]);
    k[6] = rhs(t + h, y5);
    bool finite = all_finite(y5);
    for (int s = 1; s < 7 && finite; ++s) finite = all_finite(k[s]);
    if (!finite) {
      out.status = TrajectoryStatus::nonfinite;
      return out;
    }
    VecN y4 = y + h * (dp_b4[0] * k[0] + dp_b4[2] * k[2] + dp_b4[3] * k[3] +
                       dp_b4[4] * k[4] + dp_b4[5] * k[5] + dp_b4[6] * k[6]);

    double err = 0.0;
    for (int c = 0; c < N; ++c) {
      const double scale =
          params.abs_tol +
          params.rel_tol * std::max(std::abs(y[c]), std::abs(y5[c]));
      const double e = (y5[c] - y4[c]) / scale;
      err += e * e;
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err <= 1.0) {
      const double t_new = std::abs(h) >= std::abs(t2 - t) ? t2 : t + h;
      ++out.steps;
      if (!accept(y5, t_new)) return out;
      t = t_new;
      k[0] = k[6];
    }
    const double factor =
        err == 0.0 ? 5.0
                   : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  out.status = TrajectoryStatus::step_limit;
  return out;
}

/// Advects a single point of `field` from t1 to t2.
///
/// When `domain` is given, trajectories that exit it stop at the last
/// in-domain accepted state and report left_domain; positions are never
/// clamped back inside.
TrajectoryResult integrate_trajectory(const VelocityField& field,
                                      const Vec2d& x0, double t1, double t2,
                                      const IntegratorParams& params,
                                      const ParamRect* domain = nullptr);

}  // namespace lcskit

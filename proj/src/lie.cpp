#include "lcskit/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace lcskit {

std::optional<double> lie_derivative(const SampledScalarField& f,
                                     const Vec2d& dir, const Vec2d& x,
                                     double h) {
  if (!(h > 0.0)) throw std::invalid_argument("lie_derivative: h must be positive");
  const auto fp = interp_bicubic(f, x + h * dir);
  if (!fp) return std::nullopt;
  const auto fm = interp_bicubic(f, x - h * dir);
  if (!fm) return std::nullopt;
  return (*fp - *fm) / (2.0 * h);
}

std::optional<double> lie_derivative2(const SampledScalarField& f,
                                      const Vec2d& dir, const Vec2d& x,
                                      double h) {
  if (!(h > 0.0)) throw std::invalid_argument("lie_derivative2: h must be positive");
  const auto fp = interp_bicubic(f, x + h * dir);
  if (!fp) return std::nullopt;
  const auto f0 = interp_bicubic(f, x);
  if (!f0) return std::nullopt;
  const auto fm = interp_bicubic(f, x - h * dir);
  if (!fm) return std::nullopt;
  return (*fp - 2.0 * *f0 + *fm) / (h * h);
}

std::optional<double> lie_derivative(const SampledScalarField& f,
                                     const DirectionField& v, const Vec2d& x,
                                     double h) {
  const auto dir = v.eval(x);
  if (!dir) return std::nullopt;
  return lie_derivative(f, *dir, x, h);
}

std::optional<double> lie_derivative2(const SampledScalarField& f,
                                      const DirectionField& v, const Vec2d& x,
                                      double h) {
  const auto dir = v.eval(x);
  if (!dir) return std::nullopt;
  return lie_derivative2(f, *dir, x, h);
}

namespace {

/// L_v f at y with the direction taken from the field and sign-aligned to
/// anchor, so nearby evaluations form one smooth vector field.
std::optional<double> aligned_first(const SampledScalarField& f,
                                    const DirectionField& v, const Vec2d& y,
                                    const Vec2d& anchor, double h) {
  const auto dir = v.eval(y, &anchor);
  if (!dir) return std::nullopt;
  return lie_derivative(f, *dir, y, h);
}

std::optional<double> nested_second(const SampledScalarField& f,
                                    const DirectionField& v, const Vec2d& x,
                                    const Vec2d& dir0, double h) {
  const auto lp = aligned_first(f, v, x + h * dir0, dir0, h);
  if (!lp) return std::nullopt;
  const auto lm = aligned_first(f, v, x - h * dir0, dir0, h);
  if (!lm) return std::nullopt;
  return (*lp - *lm) / (2.0 * h);
}

}  // namespace

std::optional<double> lie_derivative2_field(const SampledScalarField& f,
                                            const DirectionField& v,
                                            const Vec2d& x, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("lie_derivative2_field: h must be positive");
  }
  const auto dir0 = v.eval(x);
  if (!dir0) return std::nullopt;
  return nested_second(f, v, x, *dir0, h);
}

std::optional<TransferResidual> transfer_rule_residual(
    const SampledScalarField& f, const SampledScalarField& g, double sigma,
    const Vec2d& xi, const Vec2d& theta, const Vec2d& x1, const Vec2d& x2,
    double h, double gate_abs, const DirectionField* xi_field,
    const DirectionField* th_field) {
  const auto lf = lie_derivative(f, xi, x1, h);
  if (!lf) return std::nullopt;
  const auto lg = lie_derivative(g, theta, x2, h);
  if (!lg) return std::nullopt;
  TransferResidual out;
  out.r1 = *lf - sigma * *lg;
  out.r1_scale = std::max(std::abs(*lf), std::abs(sigma * *lg));
  if (std::abs(*lf) <= gate_abs) {
    const auto lf2 = xi_field ? nested_second(f, *xi_field, x1, xi, h)
                              : lie_derivative2(f, xi, x1, h);
    if (!lf2) return std::nullopt;
    const auto lg2 = th_field ? nested_second(g, *th_field, x2, theta, h)
                              : lie_derivative2(g, theta, x2, h);
    if (!lg2) return std::nullopt;
    out.gated = true;
    out.r2 = *lf2 - sigma * sigma * *lg2;
    out.r2_scale = std::max(std::abs(*lf2), std::abs(sigma * sigma * *lg2));
  }
  return out;
}

}  // namespace lcskit

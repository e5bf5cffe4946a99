#pragma once

#include "lcskit/direction.hpp"
#include "lcskit/interp.hpp"

#include <optional>

namespace lcskit {

/// First directional derivative of the interpolated field along the unit
/// vector dir: (f(x + h dir) - f(x - h dir)) / (2h). Nothing when any
/// stencil evaluation fails.
std::optional<double> lie_derivative(const SampledScalarField& f,
                                     const Vec2d& dir, const Vec2d& x,
                                     double h);

/// Second directional derivative: (f(x+h dir) - 2 f(x) + f(x-h dir)) / h^2.
/// Meaningful as a Lie derivative where the first one vanishes, which is the
/// regime every consumer here operates in.
std::optional<double> lie_derivative2(const SampledScalarField& f,
                                      const Vec2d& dir, const Vec2d& x,
                                      double h);

/// Variants taking the direction from a line field at x. The direction is
/// frozen at x, so lie_derivative2 measures the quadratic form
/// <v(x), H_f v(x)>, the flavor the generalized-extremum tests use.
std::optional<double> lie_derivative(const SampledScalarField& f,
                                     const DirectionField& v, const Vec2d& x,
                                     double h);
std::optional<double> lie_derivative2(const SampledScalarField& f,
                                      const DirectionField& v, const Vec2d& x,
                                      double h);

/// Second Lie derivative along the line field itself, L_v(L_v f): nested
/// centered differences with the direction re-evaluated (sign-aligned to the
/// base direction) at the displaced stencil points. Differs from the frozen
/// form by the connection term <grad_v v, grad f>; invariant under v -> -v.
std::optional<double> lie_derivative2_field(const SampledScalarField& f,
                                            const DirectionField& v,
                                            const Vec2d& x, double h);

/// Residuals of the first- and second-order transfer rule between a field f
/// at the seed time and its image-side counterpart g (f = g after the flow
/// map), along a singular pair (sigma, xi, theta) at (x1, x2).
///
/// r1 = L_xi f(x1) - sigma * L_th g(x2); the second-order residual
/// r2 = L2_xi f(x1) - sigma^2 * L2_th g(x2) is computed only when
/// |L_xi f(x1)| <= gate_abs (the rule's first-order gate).
///
/// The second-order rule holds for the field flavor of L2, so callers must
/// pass the line fields extending xi and theta whenever those fields bend;
/// the pointwise vectors anchor the signs. With the fields omitted the
/// stencils freeze the directions, which is exact only for straight fields.
struct TransferResidual {
  double r1 = 0.0;
  double r1_scale = 0.0;  // max magnitude of the two first-order terms
  bool gated = false;
  double r2 = 0.0;
  double r2_scale = 0.0;
};

std::optional<TransferResidual> transfer_rule_residual(
    const SampledScalarField& f, const SampledScalarField& g, double sigma,
    const Vec2d& xi, const Vec2d& theta, const Vec2d& x1, const Vec2d& x2,
    double h, double gate_abs, const DirectionField* xi_field = nullptr,
    const DirectionField* th_field = nullptr);

}  // namespace lcskit

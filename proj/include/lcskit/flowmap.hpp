#pragma once

#include "lcskit/chart.hpp"
#include "lcskit/grid.hpp"
#include "lcskit/integrate.hpp"
#include "lcskit/velocity.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace lcskit {

/// Flow map samples over a seed grid, optionally with deformation gradients.
///
/// All vectors are grid-sized (index(i, j) = j * nx + i). Points whose
/// trajectories failed keep valid = 0 and are skipped downstream.
struct FlowMapGrid {
  Grid2 grid;
  double t1 = 0.0;
  double t2 = 0.0;
  std::vector<Vec2d> x2;
  std::vector<Mat2d> df;
  std::vector<std::uint8_t> valid;
  std::vector<TrajectoryStatus> status;

  bool has_df() const { return !df.empty(); }
  std::size_t invalid_count() const;
  double invalid_fraction() const;
};

FlowMapGrid advect_grid(const VelocityField& field, const Grid2& grid,
                        double t1, double t2, const IntegratorParams& params,
                        const ParamRect* domain = nullptr,
                        unsigned threads = 1);

/// Central-difference deformation gradient from four auxiliary trajectories
/// seeded at x +- h e1, x +- h e2. Returns nothing if any of them fails.
std::optional<Mat2d> deformation_gradient_fd(const VelocityField& field,
                                             const Vec2d& x, double t1,
                                             double t2, double h,
                                             const IntegratorParams& params,
                                             const ParamRect* domain = nullptr);

/// Advects the grid and attaches finite-difference deformation gradients.
FlowMapGrid deformation_gradient_grid(const VelocityField& field,
                                      const Grid2& grid, double t1, double t2,
                                      double h, const IntegratorParams& params,
                                      const ParamRect* domain = nullptr,
                                      unsigned threads = 1);

/// Tangent-linear route: integrates dF/dt = J(t, x(t)) F alongside the
/// trajectory, F(t1) = I. Needs field.jacobian. Returns (x2, DF).
std::optional<std::pair<Vec2d, Mat2d>> deformation_gradient_variational(
    const VelocityField& field, const Vec2d& x, double t1, double t2,
    const IntegratorParams& params, const ParamRect* domain = nullptr);

/// Grid driver for the tangent-linear route.
FlowMapGrid variational_gradient_grid(const VelocityField& field,
                                      const Grid2& grid, double t1, double t2,
                                      const IntegratorParams& params,
                                      const ParamRect* domain = nullptr,
                                      unsigned threads = 1);

/// Rewrites each valid gradient as |P'(x2)| DF |P'(x1)|^-1 so that singular
/// values and angles are measured in the chart metric. Points where the
/// modulus is unavailable are invalidated.
void apply_metric_representation(const Chart& chart, FlowMapGrid& fm);

}  // namespace lcskit

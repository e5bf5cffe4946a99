#pragma once

#include "lcskit/chart.hpp"
#include "lcskit/config.hpp"
#include "lcskit/deformation.hpp"

namespace lcskit {

/// Instantiates the configured chart. Throws ConfigError on unknown names.
Chart build_chart(const ChartConfig& cfg);

/// Instantiates the configured velocity field.
VelocityField build_field(const FieldConfig& cfg);

Grid2 build_grid(const GridConfig& cfg);

enum class GradientRoute {
  fd,          // finite differences from auxiliary trajectories
  variational  // tangent-linear integration along the center trajectory
};

struct PipelineResult {
  FlowMapGrid fm;
  DeformationField def;
};

/// Advects cfg.grid from t1 to t2, attaches deformation gradients by the
/// chosen route, rewrites them in the chart metric for non-Euclidean charts,
/// and runs the pointwise SVD analysis.
PipelineResult run_deformation(const RunConfig& cfg, double t1, double t2,
                               GradientRoute route = GradientRoute::fd);

/// Forward run over the configured time span [t1, t1 + T].
PipelineResult run_forward(const RunConfig& cfg,
                           GradientRoute route = GradientRoute::fd);

/// Bounding box of the valid image points, padded by pad_fraction of each
/// span on every side. Throws std::runtime_error when no point is valid.
Grid2 image_grid(const DeformationField& f, double pad_fraction,
                 std::size_t nx, std::size_t ny);

}  // namespace lcskit

#pragma once

#include "lcskit/grid.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lcskit {

/// Scalar samples on a Grid2 with an optional validity mask (empty mask
/// means every sample is usable).
struct SampledScalarField {
  Grid2 grid;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;

  bool sample_valid(std::size_t idx) const {
    return mask.empty() || mask[idx] != 0;
  }
};

/// Catmull-Rom cubic convolution interpolation (reproduces quadratics, so
/// centered differences of the interpolant keep their nominal order).
/// The 4x4 stencil is edge-replicated at the grid boundary. Returns nothing
/// when the query leaves the grid or the stencil touches a masked sample.
std::optional<double> interp_bicubic(const SampledScalarField& f,
                                     const Vec2d& p);

/// Bilinear interpolation on the same field; used for tensor components
/// where monotonicity matters more than order.
std::optional<double> interp_bilinear(const SampledScalarField& f,
                                      const Vec2d& p);

/// Non-owning bilinear variant for callers holding several component planes
/// over one grid. `mask` may be null (all samples valid).
std::optional<double> interp_bilinear_raw(const Grid2& grid,
                                          const double* values,
                                          const std::uint8_t* mask,
                                          const Vec2d& p);

}  // namespace lcskit

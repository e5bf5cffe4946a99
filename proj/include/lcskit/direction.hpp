#pragma once

#include "lcskit/deformation.hpp"
#include "lcskit/interp.hpp"

#include <optional>
#include <string>

namespace lcskit {

enum class DirectionTag { xi1, xi2, th1, th2 };

std::string to_string(DirectionTag t);

/// Scalar quantities extractable from a DeformationField onto a
/// SampledScalarField (masked where the point is invalid or degenerate for
/// direction-dependent consumers; plain invalid mask otherwise).
enum class FieldQuantity {
  sigma1,
  sigma2,
  inv_sigma1,
  inv_sigma2,
  lambda1,
  lambda2,
  ftle_f,
  ftle_b
};

SampledScalarField scalar_field(const DeformationField& f, FieldQuantity q);

/// A line field (v and -v identified) sampled on a grid.
///
/// Stored as the symmetric Cauchy-Green tensor components so that
/// interpolation never cancels opposing vector samples; the requested
/// eigenvector is recovered from the interpolated tensor at evaluation time.
/// xi tags use the right tensor C (directions at seed points), th tags the
/// left tensor B (directions at image points of a backward-time field, or
/// generally wherever the field's grid lives).
struct DirectionField {
  Grid2 grid;
  DirectionTag tag = DirectionTag::xi2;
  std::vector<double> t11, t12, t22;
  std::vector<std::uint8_t> mask;
  double gap_tol_rel = 1e-9;

  /// Unit direction at p, nothing if outside the grid, near a masked
  /// sample, or where the interpolated tensor is degenerate. `align_with`
  /// picks the sign (dot >= 0); otherwise the global convention applies
  /// (nonnegative first component, tie broken by the second).
  std::optional<Vec2d> eval(const Vec2d& p,
                            const Vec2d* align_with = nullptr) const;
};

DirectionField direction_field(const DeformationField& f, DirectionTag tag);

}  // namespace lcskit

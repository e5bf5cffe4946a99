#pragma once

#include "lcskit/direction.hpp"
#include "lcskit/lie.hpp"

#include <vector>

namespace lcskit {

enum class ExtremaKind { max, min };

/// A refined location where the first Lie derivative crosses zero along the
/// line field and the second has the sign demanded by the kind.
struct ExtremumPoint {
  Vec2d x;
  double lie1 = 0.0;  // residual first derivative at the refined point
  double lie2 = 0.0;
};

/// Scans the sample grid for sign changes of L_v f between each point and
/// its forward neighbor along v (one sample spacing away), refines the
/// crossing linearly, keeps it when L2_v f passes the kind's sign test, and
/// deduplicates within half a cell.
std::vector<ExtremumPoint> generalized_extrema(const SampledScalarField& f,
                                               const DirectionField& v,
                                               const Grid2& samples,
                                               ExtremaKind kind, double h);

}  // namespace lcskit

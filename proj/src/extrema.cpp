#include "lcskit/extrema.hpp"

#include <algorithm>
#include <cmath>

namespace lcskit {

std::vector<ExtremumPoint> generalized_extrema(const SampledScalarField& f,
                                               const DirectionField& v,
                                               const Grid2& samples,
                                               ExtremaKind kind, double h) {
  const double spacing = std::min(samples.dx(), samples.dy());
  std::vector<ExtremumPoint> out;
  for (std::size_t j = 0; j < samples.ny; ++j) {
    for (std::size_t i = 0; i < samples.nx; ++i) {
      const Vec2d p = samples.point(i, j);
      const auto dir = v.eval(p);
      if (!dir) continue;
      const auto d0 = lie_derivative(f, v, p, h);
      if (!d0) continue;
      const Vec2d q = p + spacing * *dir;
      const Vec2d dir_hint = *dir;
      const auto dq = v.eval(q, &dir_hint);
      if (!dq) continue;
      const auto d1 = lie_derivative(f, *dq, q, h);
      if (!d1) continue;
      if (*d0 == 0.0 && *d1 == 0.0) continue;
      if (*d0 * *d1 > 0.0) continue;
      const double t = *d0 / (*d0 - *d1);
      const Vec2d x_star = p + (t * spacing) * *dir;
      const auto dir_star = v.eval(x_star, &dir_hint);
      if (!dir_star) continue;
      const auto l1 = lie_derivative(f, *dir_star, x_star, h);
      const auto l2 = lie_derivative2(f, *dir_star, x_star, h);
      if (!l1 || !l2) continue;
      if (kind == ExtremaKind::max ? !(*l2 < 0.0) : !(*l2 > 0.0)) continue;
      out.push_back({x_star, *l1, *l2});
    }
  }

  std::sort(out.begin(), out.end(), [](const ExtremumPoint& a,
                                       const ExtremumPoint& b) {
    return a.x[0] != b.x[0] ? a.x[0] < b.x[0] : a.x[1] < b.x[1];
  });
  std::vector<ExtremumPoint> unique;
  const double min_dist = 0.5 * spacing;
  for (const ExtremumPoint& e : out) {
    bool dup = false;
    for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
      if (e.x[0] - it->x[0] > min_dist) break;
      if ((e.x - it->x).norm() < min_dist) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(e);
  }
  return unique;
}

}  // namespace lcskit

#include "lcskit/direction.hpp"

#include "lcskit/svd2.hpp"

#include <cmath>
#include <stdexcept>

namespace lcskit {

std::string to_string(DirectionTag t) {
  switch (t) {
    case DirectionTag::xi1:
      return "xi1";
    case DirectionTag::xi2:
      return "xi2";
    case DirectionTag::th1:
      return "th1";
    case DirectionTag::th2:
      return "th2";
  }
  return "unknown";
}

SampledScalarField scalar_field(const DeformationField& f, FieldQuantity q) {
  SampledScalarField out;
  out.grid = f.grid;
  const std::size_t n = f.grid.size();
  out.values.assign(n, 0.0);
  out.mask.assign(f.valid.begin(), f.valid.end());
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (f.valid[idx] == 0) continue;
    switch (q) {
      case FieldQuantity::sigma1:
        out.values[idx] = f.sigma1[idx];
        break;
      case FieldQuantity::sigma2:
        out.values[idx] = f.sigma2[idx];
        break;
      case FieldQuantity::inv_sigma1:
        out.values[idx] = 1.0 / f.sigma1[idx];
        break;
      case FieldQuantity::inv_sigma2:
        out.values[idx] = 1.0 / f.sigma2[idx];
        break;
      case FieldQuantity::lambda1:
        out.values[idx] = f.sigma1[idx] * f.sigma1[idx];
        break;
      case FieldQuantity::lambda2:
        out.values[idx] = f.sigma2[idx] * f.sigma2[idx];
        break;
      case FieldQuantity::ftle_f:
        out.values[idx] = f.ftle_f[idx];
        break;
      case FieldQuantity::ftle_b:
        out.values[idx] = f.ftle_b[idx];
        break;
    }
  }
  return out;
}

DirectionField direction_field(const DeformationField& f, DirectionTag tag) {
  DirectionField out;
  out.grid = f.grid;
  out.tag = tag;
  const std::size_t n = f.grid.size();
  out.t11.assign(n, 0.0);
  out.t12.assign(n, 0.0);
  out.t22.assign(n, 0.0);
  out.mask.assign(n, 0);
  const bool left = tag == DirectionTag::th1 || tag == DirectionTag::th2;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (f.valid[idx] == 0 || f.degenerate[idx] != 0) continue;
    const double l1 = f.sigma1[idx] * f.sigma1[idx];
    const double l2 = f.sigma2[idx] * f.sigma2[idx];
    const Vec2d& v1 = left ? f.th1[idx] : f.xi1[idx];
    const Vec2d& v2 = left ? f.th2[idx] : f.xi2[idx];
    out.t11[idx] = l1 * v1[0] * v1[0] + l2 * v2[0] * v2[0];
    out.t12[idx] = l1 * v1[0] * v1[1] + l2 * v2[0] * v2[1];
    out.t22[idx] = l1 * v1[1] * v1[1] + l2 * v2[1] * v2[1];
    out.mask[idx] = 1;
  }
  return out;
}

std::optional<Vec2d> DirectionField::eval(const Vec2d& p,
                                          const Vec2d* align_with) const {
  const std::uint8_t* m = mask.empty() ? nullptr : mask.data();
  const auto a11 = interp_bilinear_raw(grid, t11.data(), m, p);
  if (!a11) return std::nullopt;
  const auto a12 = interp_bilinear_raw(grid, t12.data(), m, p);
  if (!a12) return std::nullopt;
  const auto a22 = interp_bilinear_raw(grid, t22.data(), m, p);
  if (!a22) return std::nullopt;

  const double tr = *a11 + *a22;
  const double gap = std::hypot(*a11 - *a22, 2.0 * *a12);
  const double l_major = 0.5 * (tr + gap);
  if (!(gap > gap_tol_rel * l_major)) return std::nullopt;

  Vec2d v = sym2_major_eigenvector(*a11, *a12, *a22);
  const bool minor = tag == DirectionTag::xi1 || tag == DirectionTag::th1;
  if (minor) v = Vec2d{v[1], -v[0]};
  if (align_with != nullptr) {
    if (v.dot(*align_with) < 0.0) v = -v;
  } else if (v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0)) {
    v = -v;
  }
  return v;
}

}  // namespace lcskit

#include "lcskit/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcskit {

namespace {

struct CellPos {
  std::size_t i;  // cell index, point lies in [x(i), x(i+1)]
  std::size_t j;
  double u;  // fractional offsets in [0, 1]
  double v;
};

std::optional<CellPos> locate(const Grid2& g, const Vec2d& p) {
  if (!g.rect().contains(p)) return std::nullopt;
  const double fx = (p[0] - g.x0) / g.dx();
  const double fy = (p[1] - g.y0) / g.dy();
  CellPos c;
  c.i = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(fx))),
                 g.nx - 2);
  c.j = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(fy))),
                 g.ny - 2);
  c.u = fx - static_cast<double>(c.i);
  c.v = fy - static_cast<double>(c.j);
  return c;
}

void catmull_rom_weights(double u, double w[4]) {
  w[0] = ((-0.5 * u + 1.0) * u - 0.5) * u;
  w[1] = (1.5 * u - 2.5) * u * u + 1.0;
  w[2] = ((-1.5 * u + 2.0) * u + 0.5) * u;
  w[3] = (0.5 * u - 0.5) * u * u;
}

std::size_t clamp_index(long idx, std::size_t n) {
  if (idx < 0) return 0;
  if (idx >= static_cast<long>(n)) return n - 1;
  return static_cast<std::size_t>(idx);
}

void check_sizes(const SampledScalarField& f) {
  if (f.values.size() != f.grid.size()) {
    throw std::invalid_argument("scalar field: values do not match grid");
  }
  if (!f.mask.empty() && f.mask.size() != f.grid.size()) {
    throw std::invalid_argument("scalar field: mask does not match grid");
  }
}

}  // namespace

std::optional<double> interp_bicubic(const SampledScalarField& f,
                                     const Vec2d& p) {
  check_sizes(f);
  const auto cell = locate(f.grid, p);
  if (!cell) return std::nullopt;
  double wx[4], wy[4];
  catmull_rom_weights(cell->u, wx);
  catmull_rom_weights(cell->v, wy);
  double acc = 0.0;
  for (int b = 0; b < 4; ++b) {
    const std::size_t j =
        clamp_index(static_cast<long>(cell->j) + b - 1, f.grid.ny);
    for (int a = 0; a < 4; ++a) {
      const std::size_t i =
          clamp_index(static_cast<long>(cell->i) + a - 1, f.grid.nx);
      const std::size_t idx = f.grid.index(i, j);
      if (!f.sample_valid(idx)) return std::nullopt;
      acc += wy[b] * wx[a] * f.values[idx];
    }
  }
  return acc;
}

std::optional<double> interp_bilinear(const SampledScalarField& f,
                                      const Vec2d& p) {
  check_sizes(f);
  return interp_bilinear_raw(f.grid, f.values.data(),
                             f.mask.empty() ? nullptr : f.mask.data(), p);
}

std::optional<double> interp_bilinear_raw(const Grid2& grid,
                                          const double* values,
                                          const std::uint8_t* mask,
                                          const Vec2d& p) {
  const auto cell = locate(grid, p);
  if (!cell) return std::nullopt;
  const std::size_t i00 = grid.index(cell->i, cell->j);
  const std::size_t i10 = grid.index(cell->i + 1, cell->j);
  const std::size_t i01 = grid.index(cell->i, cell->j + 1);
  const std::size_t i11 = grid.index(cell->i + 1, cell->j + 1);
  if (mask != nullptr &&
      (mask[i00] == 0 || mask[i10] == 0 || mask[i01] == 0 || mask[i11] == 0)) {
    return std::nullopt;
  }
  const double u = cell->u;
  const double v = cell->v;
  return (1.0 - v) * ((1.0 - u) * values[i00] + u * values[i10]) +
         v * ((1.0 - u) * values[i01] + u * values[i11]);
}

}  // namespace lcskit

#pragma once

#include "lcskit/common.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace lcskit {

/// Uniform rectilinear grid over [x0, x1] x [y0, y1].
///
/// Storage order is row major with x fastest: index(i, j) = j * nx + i.
struct Grid2 {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;

  Grid2() = default;
  Grid2(std::size_t nx_, std::size_t ny_, double x0_, double x1_, double y0_,
        double y1_)
      : nx(nx_), ny(ny_), x0(x0_), x1(x1_), y0(y0_), y1(y1_) {
    if (nx < 2 || ny < 2) {
      throw std::invalid_argument("grid needs at least 2 points per axis");
    }
    if (!(x1 > x0) || !(y1 > y0)) {
      throw std::invalid_argument("grid extents must be increasing");
    }
  }

  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  double dx() const { return (x1 - x0) / static_cast<double>(nx - 1); }
  double dy() const { return (y1 - y0) / static_cast<double>(ny - 1); }
  double x(std::size_t i) const { return x0 + dx() * static_cast<double>(i); }
  double y(std::size_t j) const { return y0 + dy() * static_cast<double>(j); }
  Vec2d point(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }
  ParamRect rect() const { return {{x0, x1}, {y0, y1}}; }
};

/// Runs fn(begin, end) over contiguous chunks of [0, n); threads == 0 uses
/// the hardware count, threads == 1 runs inline.
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn,
                         unsigned threads = 0) {
  if (n == 0) return;
  unsigned nt = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (nt == 0) nt = 1;
  if (nt > n) nt = static_cast<unsigned>(n);
  if (nt == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  for (unsigned t = 0; t < nt; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * chunk;
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back(fn, begin, end);
  }
  for (auto& th : pool) th.join();
}

}  // namespace lcskit

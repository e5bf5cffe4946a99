#include "lcskit/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcskit {

Chart build_chart(const ChartConfig& cfg) {
  if (cfg.name == "euclidean") return make_euclidean_chart();
  if (cfg.name == "sphere") {
    return make_sphere_chart(cfg.radius, cfg.pole_clamp);
  }
  throw ConfigError("chart.name: unknown chart '" + cfg.name + "'");
}

VelocityField build_field(const FieldConfig& cfg) {
  if (cfg.name == "nonlinear_saddle") {
    return make_nonlinear_saddle({cfg.L, cfg.q1, cfg.q2});
  }
  if (cfg.name == "linear_saddle") return make_linear_saddle(cfg.lambda);
  if (cfg.name == "sphere_rotation") return make_sphere_rotation(cfg.omega);
  throw ConfigError("field.name: unknown field '" + cfg.name + "'");
}

Grid2 build_grid(const GridConfig& cfg) {
  return Grid2(cfg.nx, cfg.ny, cfg.x0, cfg.x1, cfg.y0, cfg.y1);
}

PipelineResult run_deformation(const RunConfig& cfg, double t1, double t2,
                               GradientRoute route) {
  const Chart chart = build_chart(cfg.chart);
  const VelocityField field = build_field(cfg.field);
  const Grid2 grid = build_grid(cfg.grid);
  PipelineResult out;
  if (route == GradientRoute::fd) {
    out.fm = deformation_gradient_grid(field, grid, t1, t2, cfg.deriv.h,
                                       cfg.integrator, &chart.domain,
                                       cfg.threads);
  } else {
    out.fm = variational_gradient_grid(field, grid, t1, t2, cfg.integrator,
                                       &chart.domain, cfg.threads);
  }
  if (chart.name != "euclidean") {
    apply_metric_representation(chart, out.fm);
  }
  out.def = analyze_deformation(out.fm);
  return out;
}

PipelineResult run_forward(const RunConfig& cfg, GradientRoute route) {
  return run_deformation(cfg, cfg.time.t1, cfg.time.t1 + cfg.time.T, route);
}

Grid2 image_grid(const DeformationField& f, double pad_fraction,
                 std::size_t nx, std::size_t ny) {
  double x_lo = kInf, x_hi = -kInf, y_lo = kInf, y_hi = -kInf;
  for (std::size_t idx = 0; idx < f.valid.size(); ++idx) {
    if (f.valid[idx] == 0) continue;
    x_lo = std::min(x_lo, f.x2[idx][0]);
    x_hi = std::max(x_hi, f.x2[idx][0]);
    y_lo = std::min(y_lo, f.x2[idx][1]);
    y_hi = std::max(y_hi, f.x2[idx][1]);
  }
  if (!(x_lo < x_hi) || !(y_lo < y_hi)) {
    throw std::runtime_error("image_grid: no valid image points");
  }
  const double px = pad_fraction * (x_hi - x_lo);
  const double py = pad_fraction * (y_hi - y_lo);
  return Grid2(nx, ny, x_lo - px, x_hi + px, y_lo - py, y_hi + py);
}

}  // namespace lcskit

#include "lcskit/flowmap.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace lcskit {

std::size_t FlowMapGrid::invalid_count() const {
  std::size_t n = 0;
  for (const auto v : valid) {
    if (v == 0) ++n;
  }
  return n;
}

double FlowMapGrid::invalid_fraction() const {
  if (valid.empty()) return 0.0;
  return static_cast<double>(invalid_count()) /
         static_cast<double>(valid.size());
}

FlowMapGrid advect_grid(const VelocityField& field, const Grid2& grid,
                        double t1, double t2, const IntegratorParams& params,
                        const ParamRect* domain, unsigned threads) {
  FlowMapGrid fm;
  fm.grid = grid;
  fm.t1 = t1;
  fm.t2 = t2;
  const std::size_t n = grid.size();
  fm.x2.assign(n, Vec2d::Zero());
  fm.valid.assign(n, 0);
  fm.status.assign(n, TrajectoryStatus::ok);
  parallel_for(
      n,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
          const std::size_t i = idx % grid.nx;
          const std::size_t j = idx / grid.nx;
          const TrajectoryResult r = integrate_trajectory(
              field, grid.point(i, j), t1, t2, params, domain);
          fm.x2[idx] = r.x;
          fm.status[idx] = r.status;
          fm.valid[idx] = r.ok() ? 1 : 0;
        }
      },
      threads);
  return fm;
}

std::optional<Mat2d> deformation_gradient_fd(const VelocityField& field,
                                             const Vec2d& x, double t1,
                                             double t2, double h,
                                             const IntegratorParams& params,
                                             const ParamRect* domain) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("deformation_gradient_fd: h must be positive");
  }
  const Vec2d seeds[4] = {x + Vec2d{h, 0.0}, x - Vec2d{h, 0.0},
                          x + Vec2d{0.0, h}, x - Vec2d{0.0, h}};
  Vec2d images[4];
  for (int s = 0; s < 4; ++s) {
    const TrajectoryResult r =
        integrate_trajectory(field, seeds[s], t1, t2, params, domain);
    if (!r.ok()) return std::nullopt;
    images[s] = r.x;
  }
  Mat2d df;
  df.col(0) = (images[0] - images[1]) / (2.0 * h);
  df.col(1) = (images[2] - images[3]) / (2.0 * h);
  if (!all_finite(df)) return std::nullopt;
  return df;
}

FlowMapGrid deformation_gradient_grid(const VelocityField& field,
                                      const Grid2& grid, double t1, double t2,
                                      double h, const IntegratorParams& params,
                                      const ParamRect* domain,
                                      unsigned threads) {
  FlowMapGrid fm;
  fm.grid = grid;
  fm.t1 = t1;
  fm.t2 = t2;
  const std::size_t n = grid.size();
  fm.x2.assign(n, Vec2d::Zero());
  fm.df.assign(n, Mat2d::Zero());
  fm.valid.assign(n, 0);
  fm.status.assign(n, TrajectoryStatus::ok);
  parallel_for(
      n,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
          const std::size_t i = idx % grid.nx;
          const std::size_t j = idx / grid.nx;
          const Vec2d x1 = grid.point(i, j);
          const TrajectoryResult r =
              integrate_trajectory(field, x1, t1, t2, params, domain);
          fm.x2[idx] = r.x;
          fm.status[idx] = r.status;
          if (!r.ok()) continue;
          const auto df =
              deformation_gradient_fd(field, x1, t1, t2, h, params, domain);
          if (!df) continue;
          fm.df[idx] = *df;
          fm.valid[idx] = 1;
        }
      },
      threads);
  return fm;
}

std::optional<std::pair<Vec2d, Mat2d>> deformation_gradient_variational(
    const VelocityField& field, const Vec2d& x, double t1, double t2,
    const IntegratorParams& params, const ParamRect* domain) {
  if (!field.jacobian) {
    throw std::invalid_argument(
        "deformation_gradient_variational: field has no jacobian");
  }
  using Vec6 = Eigen::Matrix<double, 6, 1>;
  std::function<Vec6(double, const Vec6&)> rhs = [&field](double t,
                                                          const Vec6& y) {
    const Vec2d p{y[0], y[1]};
    Mat2d f;
    f << y[2], y[4], y[3], y[5];
    const Vec2d v = field.eval(t, p);
    const Mat2d df = field.jacobian(t, p) * f;
    Vec6 dy;
    dy << v[0], v[1], df(0, 0), df(1, 0), df(0, 1), df(1, 1);
    return dy;
  };
  std::function<bool(const Vec6&)> guard;
  if (domain != nullptr) {
    const ParamRect rect = *domain;
    guard = [rect](const Vec6& y) { return rect.contains({y[0], y[1]}); };
  }
  Vec6 y0;
  y0 << x[0], x[1], 1.0, 0.0, 0.0, 1.0;
  const OdeResult<6> r = integrate_ode<6>(rhs, y0, t1, t2, params, guard);
  if (r.status != TrajectoryStatus::ok) return std::nullopt;
  Mat2d f;
  f << r.y[2], r.y[4], r.y[3], r.y[5];
  return std::make_pair(Vec2d{r.y[0], r.y[1]}, f);
}

FlowMapGrid variational_gradient_grid(const VelocityField& field,
                                      const Grid2& grid, double t1, double t2,
                                      const IntegratorParams& params,
                                      const ParamRect* domain,
                                      unsigned threads) {
  if (!field.jacobian) {
    throw std::invalid_argument(
        "variational_gradient_grid: field has no jacobian");
  }
  FlowMapGrid fm;
  fm.grid = grid;
  fm.t1 = t1;
  fm.t2 = t2;
  const std::size_t n = grid.size();
  fm.x2.assign(n, Vec2d::Zero());
  fm.df.assign(n, Mat2d::Zero());
  fm.valid.assign(n, 0);
  fm.status.assign(n, TrajectoryStatus::ok);
  parallel_for(
      n,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
          const std::size_t i = idx % grid.nx;
          const std::size_t j = idx / grid.nx;
          const auto r = deformation_gradient_variational(
              field, grid.point(i, j), t1, t2, params, domain);
          if (!r) {
            fm.status[idx] = TrajectoryStatus::left_domain;
            continue;
          }
          fm.x2[idx] = r->first;
          fm.df[idx] = r->second;
          fm.valid[idx] = 1;
        }
      },
      threads);
  return fm;
}

void apply_metric_representation(const Chart& chart, FlowMapGrid& fm) {
  if (!fm.has_df()) {
    throw std::invalid_argument(
        "apply_metric_representation: flow map has no gradients");
  }
  for (std::size_t idx = 0; idx < fm.valid.size(); ++idx) {
    if (fm.valid[idx] == 0) continue;
    const std::size_t i = idx % fm.grid.nx;
    const std::size_t j = idx / fm.grid.nx;
    const Vec2d x1 = fm.grid.point(i, j);
    try {
      fm.df[idx] = metric_representation(chart, x1, fm.x2[idx], fm.df[idx]);
    } catch (const std::exception&) {
      fm.valid[idx] = 0;
    }
  }
}

}  // namespace lcskit

#include "lcskit/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcskit {

std::size_t DeformationField::invalid_count() const {
  std::size_t n = 0;
  for (const auto v : valid) {
    if (v == 0) ++n;
  }
  return n;
}

double DeformationField::invalid_fraction() const {
  if (valid.empty()) return 0.0;
  return static_cast<double>(invalid_count()) /
         static_cast<double>(valid.size());
}

DeformationField analyze_deformation(const FlowMapGrid& fm,
                                     double gap_tol_rel) {
  if (!fm.has_df()) {
    throw std::invalid_argument("analyze_deformation: flow map has no gradients");
  }
  const double T = fm.t2 - fm.t1;
  if (T == 0.0) {
    throw std::invalid_argument("analyze_deformation: zero advection time");
  }
  DeformationField out;
  out.grid = fm.grid;
  out.t1 = fm.t1;
  out.t2 = fm.t2;
  out.x2 = fm.x2;
  out.df = fm.df;
  const std::size_t n = fm.grid.size();
  out.sigma1.assign(n, 0.0);
  out.sigma2.assign(n, 0.0);
  out.xi1.assign(n, Vec2d::Zero());
  out.xi2.assign(n, Vec2d::Zero());
  out.th1.assign(n, Vec2d::Zero());
  out.th2.assign(n, Vec2d::Zero());
  out.ftle_f.assign(n, 0.0);
  out.ftle_b.assign(n, 0.0);
  out.valid.assign(n, 0);
  out.degenerate.assign(n, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (fm.valid[idx] == 0) continue;
    Svd2d s;
    try {
      s = svd2(fm.df[idx], gap_tol_rel);
    } catch (const std::exception&) {
      continue;
    }
    out.sigma1[idx] = s.s1;
    out.sigma2[idx] = s.s2;
    out.xi1[idx] = s.xi1;
    out.xi2[idx] = s.xi2;
    out.th1[idx] = s.th1;
    out.th2[idx] = s.th2;
    out.ftle_f[idx] = ftle_forward(s.s2, T);
    out.ftle_b[idx] = ftle_backward_from_forward(s.s1, T);
    out.valid[idx] = 1;
    out.degenerate[idx] = s.degenerate ? 1 : 0;
  }
  return out;
}

ScatteredDeformation analyze_deformation_at(const VelocityField& field,
                                            const std::vector<Vec2d>& seeds,
                                            double t1, double t2, double h,
                                            const IntegratorParams& params,
                                            const ParamRect* domain) {
  ScatteredDeformation out;
  out.t1 = t1;
  out.t2 = t2;
  out.x1 = seeds;
  const std::size_t n = seeds.size();
  out.x2.assign(n, Vec2d::Zero());
  out.df.assign(n, Mat2d::Zero());
  out.svd.assign(n, Svd2d{});
  out.valid.assign(n, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const TrajectoryResult r =
        integrate_trajectory(field, seeds[idx], t1, t2, params, domain);
    if (!r.ok()) continue;
    out.x2[idx] = r.x;
    const auto df =
        deformation_gradient_fd(field, seeds[idx], t1, t2, h, params, domain);
    if (!df) continue;
    out.df[idx] = *df;
    try {
      out.svd[idx] = svd2(*df);
    } catch (const std::exception&) {
      continue;
    }
    out.valid[idx] = 1;
  }
  return out;
}

double verify_incompressibility(const DeformationField& f) {
  double worst = 0.0;
  for (std::size_t idx = 0; idx < f.valid.size(); ++idx) {
    if (f.valid[idx] == 0) continue;
    worst = std::max(worst, std::abs(f.sigma1[idx] * f.sigma2[idx] - 1.0));
  }
  return worst;
}

BackwardRelationReport verify_backward_relations(
    const VelocityField& field, const std::vector<Vec2d>& seeds, double t1,
    double t2, double h, const IntegratorParams& params,
    const ParamRect* domain) {
  const double T = t2 - t1;
  if (T == 0.0) {
    throw std::invalid_argument(
        "verify_backward_relations: zero advection time");
  }
  BackwardRelationReport rep;
  rep.n_points = seeds.size();
  const ScatteredDeformation fwd =
      analyze_deformation_at(field, seeds, t1, t2, h, params, domain);
  for (std::size_t idx = 0; idx < seeds.size(); ++idx) {
    if (fwd.valid[idx] == 0) continue;
    const Vec2d x2 = fwd.x2[idx];
    const TrajectoryResult back =
        integrate_trajectory(field, x2, t2, t1, params, domain);
    if (!back.ok()) continue;
    const auto df_b =
        deformation_gradient_fd(field, x2, t2, t1, h, params, domain);
    if (!df_b) continue;
    Svd2d sb;
    try {
      sb = svd2(*df_b);
    } catch (const std::exception&) {
      continue;
    }
    ++rep.n_valid;
    const Svd2d& sf = fwd.svd[idx];

    rep.max_product_err =
        std::max({rep.max_product_err, std::abs(sb.s1 * sf.s2 - 1.0),
                  std::abs(sb.s2 * sf.s1 - 1.0)});
    rep.max_axis_misalignment =
        std::max({rep.max_axis_misalignment,
                  1.0 - std::abs(sb.xi1.dot(sf.th2)),
                  1.0 - std::abs(sb.xi2.dot(sf.th1))});
    const Vec2d pull1 = (*df_b) * sf.th1;
    const Vec2d pull2 = (*df_b) * sf.th2;
    rep.max_pullback_err =
        std::max({rep.max_pullback_err,
                  (pull1 - sf.xi1 / sf.s1).norm(),
                  (pull2 - sf.xi2 / sf.s2).norm()});
    const double ftle_b_run = std::log(sb.s2) / std::abs(T);
    const double ftle_b_pred = ftle_backward_from_forward(sf.s1, T);
    rep.max_ftle_err =
        std::max(rep.max_ftle_err, std::abs(ftle_b_run - ftle_b_pred));
    const double ftle_f_seed = ftle_forward(sf.s2, T);
    rep.max_duality_err =
        std::max(rep.max_duality_err, std::abs(ftle_b_run - ftle_f_seed));
    rep.max_return_err =
        std::max(rep.max_return_err, (back.x - seeds[idx]).norm());
  }
  return rep;
}

}  // namespace lcskit

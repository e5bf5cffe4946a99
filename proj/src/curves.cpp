#include "lcskit/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcskit {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kDegToRad = 0.017453292519943295;
}  // namespace

std::string to_string(CurveKind k) {
  return k == CurveKind::strainline ? "strainline" : "stretchline";
}

std::string to_string(CurveClass c) {
  switch (c) {
    case CurveClass::repelling:
      return "repelling";
    case CurveClass::attracting:
      return "attracting";
    case CurveClass::unclassified:
      return "unclassified";
  }
  return "unknown";
}

namespace {

/// One branch of fixed-step RK4 line-field integration, seed excluded.
std::vector<Vec2d> grow_branch(const DirectionField& v, const Vec2d& seed,
                               Vec2d tangent,
                               const LineIntegrationParams& p) {
  std::vector<Vec2d> branch;
  Vec2d x = seed;
  double len = 0.0;
  const double h = p.step;
  while (len + 0.5 * h < p.max_len) {
    auto stage = [&](const Vec2d& q) { return v.eval(q, &tangent); };
    const auto k1 = stage(x);
    if (!k1) break;
    const auto k2 = stage(x + (0.5 * h) * *k1);
    if (!k2) break;
    const auto k3 = stage(x + (0.5 * h) * *k2);
    if (!k3) break;
    const auto k4 = stage(x + h * *k3);
    if (!k4) break;
    const Vec2d x_new = x + (h / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
    const auto t_new = v.eval(x_new, &tangent);
    if (!t_new) break;
    if (t_new->dot(tangent) < p.min_alignment) break;
    len += (x_new - x).norm();
    x = x_new;
    tangent = *t_new;
    branch.push_back(x);
  }
  return branch;
}

}  // namespace

MaterialCurve integrate_line_field(const DirectionField& v, const Vec2d& seed,
                                   const LineIntegrationParams& params) {
  if (!(params.step > 0.0) || !(params.max_len > 0.0)) {
    throw std::invalid_argument("integrate_line_field: step and max_len must be positive");
  }
  const auto dir0 = v.eval(seed);
  if (!dir0) {
    throw std::domain_error("integrate_line_field: seed is degenerate or outside the field");
  }
  MaterialCurve curve;
  curve.kind = (v.tag == DirectionTag::xi1 || v.tag == DirectionTag::th1)
                   ? CurveKind::strainline
                   : CurveKind::stretchline;
  const std::vector<Vec2d> fwd = grow_branch(v, seed, *dir0, params);
  const std::vector<Vec2d> bwd = grow_branch(v, seed, -*dir0, params);
  curve.vertices.reserve(fwd.size() + bwd.size() + 1);
  curve.vertices.assign(bwd.rbegin(), bwd.rend());
  curve.vertices.push_back(seed);
  curve.vertices.insert(curve.vertices.end(), fwd.begin(), fwd.end());
  curve.arclength = 0.0;
  for (std::size_t k = 1; k < curve.vertices.size(); ++k) {
    curve.arclength += (curve.vertices[k] - curve.vertices[k - 1]).norm();
  }
  return curve;
}

namespace {

Vec2d vertex_tangent(const std::vector<Vec2d>& verts, std::size_t k) {
  const std::size_t last = verts.size() - 1;
  const Vec2d d = k == 0      ? verts[1] - verts[0]
                  : k == last ? verts[last] - verts[last - 1]
                              : verts[k + 1] - verts[k - 1];
  const double n = d.norm();
  return n > 0.0 ? Vec2d(d / n) : Vec2d{1.0, 0.0};
}

double field_scale(const SampledScalarField& f) {
  double scale = 0.0;
  for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
    if (f.sample_valid(idx)) scale = std::max(scale, std::abs(f.values[idx]));
  }
  return scale;
}

}  // namespace

ClassificationReport classify_variational(MaterialCurve& curve,
                                          const DeformationField& field,
                                          const ClassifyParams& params) {
  const std::size_t n = curve.vertices.size();
  if (n < 3) {
    throw std::invalid_argument("classify_variational: curve needs at least 3 vertices");
  }
  const SampledScalarField f_s1 = scalar_field(field, FieldQuantity::sigma1);
  const SampledScalarField f_s2 = scalar_field(field, FieldQuantity::sigma2);
  const DirectionField d_xi1 = direction_field(field, DirectionTag::xi1);
  const DirectionField d_xi2 = direction_field(field, DirectionTag::xi2);
  const double gate1 = params.lie_tol_rel * field_scale(f_s1);
  const double gate2 = params.lie_tol_rel * field_scale(f_s2);
  const double cos_tol = std::sin(params.angle_tol_deg * kDegToRad);

  struct VertexEval {
    bool assessed = false;
    bool pass = false;
    double s1 = kNan, s2 = kNan, l1 = kNan, l2 = kNan;
  };

  auto run_test = [&](bool repelling) {
    std::vector<VertexEval> evals(n);
    for (std::size_t k = 0; k < n; ++k) {
      VertexEval& e = evals[k];
      const Vec2d& p = curve.vertices[k];
      const auto s1 = interp_bicubic(f_s1, p);
      const auto s2 = interp_bicubic(f_s2, p);
      if (!s1 || !s2) continue;
      e.s1 = *s1;
      e.s2 = *s2;
      const DirectionField& dir = repelling ? d_xi2 : d_xi1;
      const SampledScalarField& f = repelling ? f_s2 : f_s1;
      const auto vdir = dir.eval(p);
      if (!vdir) continue;
      const auto l1 = lie_derivative(f, *vdir, p, params.lie_h);
      const auto l2 = lie_derivative2(f, *vdir, p, params.lie_h);
      if (!l1 || !l2) continue;
      e.assessed = true;
      e.l1 = *l1;
      e.l2 = *l2;
      const bool normal_ok =
          std::abs(vdir->dot(vertex_tangent(curve.vertices, k))) <= cos_tol;
      const bool gap_ok = (e.s2 - e.s1) > params.gap_tol_rel * e.s2;
      if (repelling) {
        e.pass = normal_ok && std::abs(*l1) <= gate2 && *l2 < 0.0 &&
                 e.s2 > 1.0 && gap_ok;
      } else {
        e.pass = normal_ok && std::abs(*l1) <= gate1 && *l2 > 0.0 &&
                 e.s1 < 1.0 && gap_ok;
      }
    }
    return evals;
  };

  const auto rep = run_test(true);
  const auto att = run_test(false);
  ClassificationReport report;
  report.n_vertices = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (rep[k].pass) ++report.n_repelling;
    if (att[k].pass) ++report.n_attracting;
  }
  report.repelling_fraction =
      static_cast<double>(report.n_repelling) / static_cast<double>(n);
  report.attracting_fraction =
      static_cast<double>(report.n_attracting) / static_cast<double>(n);
  if (report.repelling_fraction >= params.coverage &&
      report.repelling_fraction >= report.attracting_fraction) {
    report.cls = CurveClass::repelling;
  } else if (report.attracting_fraction >= params.coverage) {
    report.cls = CurveClass::attracting;
  }

  const auto& diag = report.cls == CurveClass::attracting ? att : rep;
  curve.cls = report.cls;
  curve.s1.resize(n);
  curve.s2.resize(n);
  curve.lie1.resize(n);
  curve.lie2.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    curve.s1[k] = diag[k].s1;
    curve.s2[k] = diag[k].s2;
    curve.lie1[k] = diag[k].l1;
    curve.lie2[k] = diag[k].l2;
  }
  return report;
}

namespace {

HeightRidgeReport ridge_impl(const SampledScalarField& f,
                             const MaterialCurve& curve,
                             const DirectionField* normal_field,
                             const Vec2d* normal_fixed, double h, double tol1) {
  const std::size_t n = curve.vertices.size();
  HeightRidgeReport rep;
  rep.n_vertices = n;
  rep.checked.assign(n, 0);
  rep.lie1.assign(n, kNan);
  rep.lie2.assign(n, kNan);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2d& p = curve.vertices[k];
    Vec2d dir;
    if (normal_fixed != nullptr) {
      dir = *normal_fixed;
    } else {
      const auto d = normal_field->eval(p);
      if (!d) {
        ++rep.n_skipped;
        continue;
      }
      dir = *d;
    }
    const auto l1 = lie_derivative(f, dir, p, h);
    const auto l2 = lie_derivative2(f, dir, p, h);
    if (!l1 || !l2) {
      ++rep.n_skipped;
      continue;
    }
    rep.checked[k] = 1;
    ++rep.n_checked;
    rep.lie1[k] = *l1;
    rep.lie2[k] = *l2;
    rep.max_abs_lie1 = std::max(rep.max_abs_lie1, std::abs(*l1));
    rep.max_lie2 = std::max(rep.max_lie2, *l2);
    if (std::abs(*l1) <= tol1) ++rep.n_first_pass;
    if (*l2 < 0.0) ++rep.n_second_pass;
  }
  rep.first_order_ok = rep.n_checked > 0 && rep.n_first_pass == rep.n_checked;
  rep.second_order_ok = rep.n_checked > 0 && rep.n_second_pass == rep.n_checked;
  return rep;
}

}  // namespace

HeightRidgeReport height_ridge_test(const SampledScalarField& f,
                                    const MaterialCurve& curve,
                                    const Vec2d& normal, double h,
                                    double tol1) {
  return ridge_impl(f, curve, nullptr, &normal, h, tol1);
}

HeightRidgeReport height_ridge_test(const SampledScalarField& f,
                                    const MaterialCurve& curve,
                                    const DirectionField& normal, double h,
                                    double tol1) {
  return ridge_impl(f, curve, &normal, nullptr, h, tol1);
}

DualityReport verify_strain_stretch_duality(const DeformationField& fwd,
                                            const DeformationField& bwd,
                                            std::size_t max_samples) {
  if (max_samples == 0) {
    throw std::invalid_argument("verify_strain_stretch_duality: max_samples must be positive");
  }
  const DirectionField b_xi1 = direction_field(bwd, DirectionTag::xi1);
  const DirectionField b_xi2 = direction_field(bwd, DirectionTag::xi2);
  DualityReport rep;
  std::vector<std::size_t> usable;
  for (std::size_t idx = 0; idx < fwd.valid.size(); ++idx) {
    if (fwd.valid[idx] != 0 && fwd.degenerate[idx] == 0) usable.push_back(idx);
  }
  const std::size_t stride = std::max<std::size_t>(1, usable.size() / max_samples);
  double sum = 0.0;
  for (std::size_t k = 0; k < usable.size() && rep.n_samples < max_samples;
       k += stride) {
    const std::size_t idx = usable[k];
    ++rep.n_samples;
    const Vec2d& x2 = fwd.x2[idx];
    const auto bx1 = b_xi1.eval(x2);
    const auto bx2 = b_xi2.eval(x2);
    if (!bx1 || !bx2) continue;
    ++rep.n_valid;
    const double mis_stretch = 1.0 - std::abs(fwd.th1[idx].dot(*bx2));
    const double mis_strain = 1.0 - std::abs(fwd.th2[idx].dot(*bx1));
    rep.max_misalign_stretch = std::max(rep.max_misalign_stretch, mis_stretch);
    rep.max_misalign_strain = std::max(rep.max_misalign_strain, mis_strain);
    sum += 0.5 * (mis_stretch + mis_strain);
  }
  if (rep.n_valid > 0) sum /= static_cast<double>(rep.n_valid);
  rep.mean_misalign = sum;
  return rep;
}

}  // namespace lcskit

#pragma once

#include "lcskit/direction.hpp"
#include "lcskit/lie.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lcskit {

enum class CurveKind { strainline, stretchline };
enum class CurveClass { repelling, attracting, unclassified };

std::string to_string(CurveKind k);
std::string to_string(CurveClass c);

/// Oriented polyline tangent to a singular-direction line field, with the
/// per-vertex diagnostics attached by classification.
struct MaterialCurve {
  CurveKind kind = CurveKind::strainline;
  CurveClass cls = CurveClass::unclassified;
  std::vector<Vec2d> vertices;
  double arclength = 0.0;
  std::vector<double> s1, s2, lie1, lie2;  // filled by classify_variational
};

struct LineIntegrationParams {
  double step = 1e-3;
  double max_len = 0.2;  // cap per branch; a curve spans up to twice this
  double min_alignment = 0.7;
};

/// Grows the curve from the seed in both directions by fixed-step RK4 on the
/// unit line field, re-aligning each stage evaluation with the running
/// tangent. A branch stops at the length cap, at a field evaluation failure
/// (mask, degeneracy, grid boundary), or when consecutive tangents fall
/// below the alignment threshold. Strainlines follow the minor field (xi1),
/// stretchlines the major one (xi2).
MaterialCurve integrate_line_field(const DirectionField& v, const Vec2d& seed,
                                   const LineIntegrationParams& params = {});

struct ClassifyParams {
  double lie_h = 0.01;
  double lie_tol_rel = 1e-3;  // first-derivative gate, relative to the sigma scale
  double angle_tol_deg = 5.0;
  double coverage = 0.9;
  double gap_tol_rel = 1e-9;
};

struct ClassificationReport {
  CurveClass cls = CurveClass::unclassified;
  std::size_t n_vertices = 0;
  std::size_t n_repelling = 0;   // vertices passing the repelling test
  std::size_t n_attracting = 0;  // vertices passing the attracting test
  double repelling_fraction = 0.0;
  double attracting_fraction = 0.0;
};

/// Pointwise variational tests along the curve. A vertex counts as
/// repelling when the major strain direction is normal to the curve within
/// the angle tolerance, sigma2 sits at a generalized maximum along it, and
/// sigma2 > 1 with a nondegenerate gap; attracting mirrors this with the
/// minor direction, a generalized minimum of sigma1, and sigma1 < 1. The
/// curve takes a label when the matching vertex fraction reaches the
/// coverage threshold, and its diagnostic columns are filled from the
/// winning test (repelling test when unclassified).
ClassificationReport classify_variational(MaterialCurve& curve,
                                          const DeformationField& field,
                                          const ClassifyParams& params = {});

struct HeightRidgeReport {
  std::size_t n_vertices = 0;
  std::size_t n_checked = 0;
  std::size_t n_skipped = 0;
  std::size_t n_first_pass = 0;
  std::size_t n_second_pass = 0;
  double max_abs_lie1 = 0.0;
  double max_lie2 = -kInf;  // largest second derivative (ridge wants < 0)
  bool first_order_ok = false;
  bool second_order_ok = false;
  std::vector<std::uint8_t> checked;  // per vertex
  std::vector<double> lie1, lie2;     // NaN where skipped
};

/// Ridge conditions of f transverse to the curve: |L_n f| <= tol1 and
/// L2_n f < 0 at each vertex, with the normal supplied as a fixed direction
/// or a line field.
HeightRidgeReport height_ridge_test(const SampledScalarField& f,
                                    const MaterialCurve& curve,
                                    const Vec2d& normal, double h,
                                    double tol1);
HeightRidgeReport height_ridge_test(const SampledScalarField& f,
                                    const MaterialCurve& curve,
                                    const DirectionField& normal, double h,
                                    double tol1);

struct DualityReport {
  std::size_t n_samples = 0;
  std::size_t n_valid = 0;
  double max_misalign_stretch = 0.0;  // forward th1 vs backward xi2 at x2
  double max_misalign_strain = 0.0;   // forward th2 vs backward xi1 at x2
  double mean_misalign = 0.0;
};

/// Checks that forward image-side singular directions reappear as the
/// backward field's seed-side directions: at up to max_samples valid forward
/// points, evaluates the backward direction fields at the image point and
/// reports 1 - |cos| misalignments.
DualityReport verify_strain_stretch_duality(const DeformationField& fwd,
                                            const DeformationField& bwd,
                                            std::size_t max_samples = 100);

}  // namespace lcskit

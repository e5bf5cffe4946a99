#pragma once

#include "lcskit/flowmap.hpp"
#include "lcskit/svd2.hpp"

#include <cstdint>
#include <vector>

namespace lcskit {

/// Pointwise singular-value decomposition of a flow-map gradient field,
/// plus the stretching exponents derived from it.
///
/// sigma1 <= sigma2. xi vectors live at the seed point, th vectors at its
/// image. ftle_b is the backward-time exponent attached at the image point
/// x2 (computed from sigma1 of the forward gradient).
struct DeformationField {
  Grid2 grid;
  double t1 = 0.0;
  double t2 = 0.0;
  std::vector<Vec2d> x2;
  std::vector<Mat2d> df;
  std::vector<double> sigma1;
  std::vector<double> sigma2;
  std::vector<Vec2d> xi1;
  std::vector<Vec2d> xi2;
  std::vector<Vec2d> th1;
  std::vector<Vec2d> th2;
  std::vector<double> ftle_f;
  std::vector<double> ftle_b;
  std::vector<std::uint8_t> valid;
  std::vector<std::uint8_t> degenerate;

  /// Inverse stretching rates of the backward map, attached at x2:
  /// kappa1 = 1/sigma2, kappa2 = 1/sigma1.
  double kappa1(std::size_t idx) const { return 1.0 / sigma2[idx]; }
  double kappa2(std::size_t idx) const { return 1.0 / sigma1[idx]; }

  std::size_t invalid_count() const;
  double invalid_fraction() const;
};

/// Runs the 2x2 SVD at every valid flow-map point. Points with singular or
/// non-finite gradients become invalid; nearly isotropic ones are kept and
/// flagged degenerate.
DeformationField analyze_deformation(const FlowMapGrid& fm,
                                     double gap_tol_rel = 1e-9);

/// Deformation data at arbitrary seed points (no grid structure).
struct ScatteredDeformation {
  double t1 = 0.0;
  double t2 = 0.0;
  std::vector<Vec2d> x1;
  std::vector<Vec2d> x2;
  std::vector<Mat2d> df;
  std::vector<Svd2d> svd;
  std::vector<std::uint8_t> valid;
};

ScatteredDeformation analyze_deformation_at(const VelocityField& field,
                                            const std::vector<Vec2d>& seeds,
                                            double t1, double t2, double h,
                                            const IntegratorParams& params,
                                            const ParamRect* domain = nullptr);

/// Max |sigma1 * sigma2 - 1| over valid points.
double verify_incompressibility(const DeformationField& f);

/// Worst-case residuals of the forward/backward singular-value relations,
/// measured by running the map both ways from each seed.
struct BackwardRelationReport {
  std::size_t n_points = 0;
  std::size_t n_valid = 0;
  /// max over j of |sigma_b,j(x2) * sigma_{3-j}(x1) - 1|
  double max_product_err = 0.0;
  /// max over j of 1 - |xi_b,j . th_{3-j}|
  double max_axis_misalignment = 0.0;
  /// max over j of ||DF_b th_j - xi_j / sigma_j||
  double max_pullback_err = 0.0;
  /// |backward exponent at x2 + log(sigma1(x1)) / T|
  double max_ftle_err = 0.0;
  /// |backward exponent at x2 - forward exponent at x1|, the area-preserving
  /// coincidence of the two FTLE fields
  double max_duality_err = 0.0;
  /// ||F^back(F(x1)) - x1||
  double max_return_err = 0.0;
};

BackwardRelationReport verify_backward_relations(
    const VelocityField& field, const std::vector<Vec2d>& seeds, double t1,
    double t2, double h, const IntegratorParams& params,
    const ParamRect* domain = nullptr);

}  // namespace lcskit

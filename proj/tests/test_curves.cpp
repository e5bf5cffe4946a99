#include "lcskit/curves.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace lcskit;

namespace {

DirectionField uniform_direction(const Grid2& g, const Vec2d& major) {
  DirectionField v;
  v.grid = g;
  v.tag = DirectionTag::xi2;
  const std::size_t n = g.size();
  v.t11.assign(n, 4.0 * major[0] * major[0] + major[1] * major[1]);
  v.t12.assign(n, 3.0 * major[0] * major[1]);
  v.t22.assign(n, 4.0 * major[1] * major[1] + major[0] * major[0]);
  return v;
}

/// Tangent-linear deformation data for the hyperbolic test flow, shared
/// across cases (the grid run dominates this file's cost).
const DeformationField& saddle_def() {
  static const DeformationField d = [] {
    const VelocityField field = make_nonlinear_saddle({});
    const Grid2 grid{71, 71, -0.35, 0.35, -0.35, 0.35};
    const IntegratorParams params;
    return analyze_deformation(
        variational_gradient_grid(field, grid, 0.0, 1.0, params));
  }();
  return d;
}

}  // namespace

TEST_CASE("uniform line field integrates to a straight segment") {
  const Grid2 g{21, 21, -1.0, 1.0, -1.0, 1.0};
  const DirectionField v = uniform_direction(g, {1.0, 0.0});
  const MaterialCurve c = integrate_line_field(v, {0.2, 0.1});
  CHECK(c.kind == CurveKind::stretchline);  // xi2 tag follows the major axis
  CHECK(c.cls == CurveClass::unclassified);
  REQUIRE(c.vertices.size() == 401);
  CHECK(c.arclength == doctest::Approx(0.4).epsilon(1e-12));
  for (const auto& p : c.vertices) CHECK(p[1] == 0.1);
  CHECK(c.vertices.front()[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.vertices.back()[0] == doctest::Approx(0.4).epsilon(1e-12));
  for (std::size_t k = 1; k < c.vertices.size(); ++k) {
    CHECK(c.vertices[k][0] > c.vertices[k - 1][0]);
  }
}

TEST_CASE("branches stop at the grid boundary") {
  const Grid2 g{21, 21, -1.0, 1.0, -1.0, 1.0};
  const DirectionField v = uniform_direction(g, {1.0, 0.0});
  const MaterialCurve c = integrate_line_field(v, {0.9, 0.0});
  CHECK(c.vertices.back()[0] <= 1.0);
  CHECK(c.arclength > 0.29);
  CHECK(c.arclength < 0.32);
}

TEST_CASE("line integration rejects bad seeds and parameters") {
  const Grid2 g{11, 11, -1.0, 1.0, -1.0, 1.0};
  const DirectionField v = uniform_direction(g, {1.0, 0.0});
  CHECK_THROWS_AS(integrate_line_field(v, {2.0, 0.0}), std::domain_error);
  LineIntegrationParams bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(integrate_line_field(v, {0.0, 0.0}, bad),
                  std::invalid_argument);
  DirectionField iso = v;
  std::fill(iso.t11.begin(), iso.t11.end(), 1.0);
  std::fill(iso.t12.begin(), iso.t12.end(), 0.0);
  std::fill(iso.t22.begin(), iso.t22.end(), 1.0);
  CHECK_THROWS_AS(integrate_line_field(iso, {0.0, 0.0}), std::domain_error);
}

TEST_CASE("strainline through the hyperbolic point hugs the horizontal axis") {
  const DirectionField minor = direction_field(saddle_def(), DirectionTag::xi1);
  MaterialCurve c = integrate_line_field(minor, {0.01, 0.0});
  CHECK(c.kind == CurveKind::strainline);
  REQUIRE(c.vertices.size() > 300);
  double max_dev = 0.0;
  for (const auto& p : c.vertices) max_dev = std::max(max_dev, std::abs(p[1]));
  CHECK(max_dev < 1e-3);
  CHECK(c.arclength > 0.35);

  const ClassificationReport rep = classify_variational(c, saddle_def());
  CHECK(rep.cls == CurveClass::repelling);
  CHECK(c.cls == CurveClass::repelling);
  CHECK(rep.repelling_fraction >= 0.9);
  CHECK(rep.n_vertices == c.vertices.size());
  REQUIRE(c.s2.size() == c.vertices.size());
  for (std::size_t k = 0; k < c.vertices.size(); ++k) {
    CHECK(c.s2[k] > 1.0);
  }
}

TEST_CASE("stretchline through the hyperbolic point hugs the vertical axis") {
  const DirectionField major = direction_field(saddle_def(), DirectionTag::xi2);
  MaterialCurve c = integrate_line_field(major, {0.0, 0.01});
  CHECK(c.kind == CurveKind::stretchline);
  REQUIRE(c.vertices.size() > 300);
  double max_dev = 0.0;
  for (const auto& p : c.vertices) max_dev = std::max(max_dev, std::abs(p[0]));
  CHECK(max_dev < 1e-3);

  const ClassificationReport rep = classify_variational(c, saddle_def());
  CHECK(rep.cls == CurveClass::attracting);
  CHECK(rep.attracting_fraction >= 0.9);
  REQUIRE(c.s1.size() == c.vertices.size());
  for (std::size_t k = 0; k < c.vertices.size(); ++k) {
    CHECK(c.s1[k] < 1.0);
  }
}

TEST_CASE("a curve off the ridge stays unclassified") {
  MaterialCurve c;
  c.kind = CurveKind::strainline;
  for (int k = -20; k <= 20; ++k) {
    c.vertices.push_back({5e-3 * k, 0.15});
  }
  const ClassificationReport rep = classify_variational(c, saddle_def());
  CHECK(rep.cls == CurveClass::unclassified);
  CHECK(c.cls == CurveClass::unclassified);
  CHECK(rep.repelling_fraction < 0.9);
}

TEST_CASE("classification needs at least three vertices") {
  MaterialCurve c;
  c.vertices = {{0.0, 0.0}, {0.01, 0.0}};
  CHECK_THROWS_AS(classify_variational(c, saddle_def()),
                  std::invalid_argument);
}

TEST_CASE("height ridge conditions hold along the strainline") {
  const DirectionField minor = direction_field(saddle_def(), DirectionTag::xi1);
  const MaterialCurve c = integrate_line_field(minor, {0.01, 0.0});
  const SampledScalarField ftle = scalar_field(saddle_def(), FieldQuantity::ftle_f);

  const HeightRidgeReport fixed =
      height_ridge_test(ftle, c, Vec2d{0.0, 1.0}, 0.01, 5e-4);
  CHECK(fixed.n_checked == c.vertices.size());
  CHECK(fixed.n_skipped == 0);
  CHECK(fixed.first_order_ok);
  CHECK(fixed.second_order_ok);
  CHECK(fixed.max_abs_lie1 <= 5e-4);
  CHECK(fixed.max_lie2 < 0.0);

  const DirectionField major = direction_field(saddle_def(), DirectionTag::xi2);
  const HeightRidgeReport along =
      height_ridge_test(ftle, c, major, 0.01, 5e-4);
  CHECK(along.n_checked == c.vertices.size());
  CHECK(along.first_order_ok);
  CHECK(along.second_order_ok);
}

TEST_CASE("forward and backward singular directions swap for the linear saddle") {
  const VelocityField field = make_linear_saddle(0.3);
  const IntegratorParams params;
  const Grid2 fwd_grid{21, 21, -1.0, 1.0, -1.0, 1.0};
  const Grid2 bwd_grid{41, 41, -2.0, 2.0, -2.0, 2.0};
  const DeformationField fwd = analyze_deformation(
      variational_gradient_grid(field, fwd_grid, 0.0, 2.0, params));
  const DeformationField bwd = analyze_deformation(
      variational_gradient_grid(field, bwd_grid, 2.0, 0.0, params));
  const DualityReport rep = verify_strain_stretch_duality(fwd, bwd);
  CHECK(rep.n_samples == 100);
  CHECK(rep.n_valid == 100);
  CHECK(rep.max_misalign_stretch < 1e-10);
  CHECK(rep.max_misalign_strain < 1e-10);
  CHECK(rep.mean_misalign <= rep.max_misalign_stretch + rep.max_misalign_strain);
}

TEST_CASE("forward and backward singular directions swap for the hyperbolic flow") {
  const VelocityField field = make_nonlinear_saddle({});
  const IntegratorParams params;
  const Grid2 bwd_grid{81, 111, -0.4, 0.4, -0.55, 0.55};
  const DeformationField bwd = analyze_deformation(
      variational_gradient_grid(field, bwd_grid, 1.0, 0.0, params));
  const DualityReport rep = verify_strain_stretch_duality(saddle_def(), bwd);
  CHECK(rep.n_samples == 100);
  CHECK(rep.n_valid == 100);
  CHECK(rep.max_misalign_stretch < 1e-5);
  CHECK(rep.max_misalign_strain < 1e-5);
  CHECK_THROWS_AS(verify_strain_stretch_duality(saddle_def(), bwd, 0),
                  std::invalid_argument);
}

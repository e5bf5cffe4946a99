#include "lcskit/velocity.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lcskit;

TEST_CASE("saddle velocity at reference points") {
  const SaddleParams p;
  const Vec2d at_origin = saddle_velocity(p, {0.0, 0.0});
  CHECK(at_origin[0] == 0.0);
  CHECK(at_origin[1] == 0.0);

  const Vec2d v = saddle_velocity(p, {0.5, 0.0});
  CHECK(v[0] == doctest::Approx(-0.13863514717800292).epsilon(1e-15));
  CHECK(v[1] == 0.0);

  const Vec2d w = saddle_velocity(p, {0.0, 0.5});
  CHECK(w[0] == 0.0);
  CHECK(w[1] == doctest::Approx(2.0 * std::tanh(0.075)).epsilon(1e-15));
}

TEST_CASE("saddle jacobian at the origin is the linearization") {
  const SaddleParams p;
  const Mat2d j = saddle_velocity_jacobian(p, {0.0, 0.0});
  CHECK(j(0, 0) == doctest::Approx(-0.3).epsilon(1e-15));
  CHECK(j(1, 1) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(j(0, 1) == 0.0);
  CHECK(j(1, 0) == 0.0);
}

TEST_CASE("saddle jacobian is trace-free and matches finite differences") {
  const SaddleParams p;
  std::mt19937 rng(314159u);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec2d x{u(rng), u(rng)};
    const Mat2d j = saddle_velocity_jacobian(p, x);
    CHECK(std::abs(j.trace()) < 1e-15);
    Mat2d fd;
    fd.col(0) = (saddle_velocity(p, x + Vec2d{h, 0.0}) -
                 saddle_velocity(p, x - Vec2d{h, 0.0})) /
                (2.0 * h);
    fd.col(1) = (saddle_velocity(p, x + Vec2d{0.0, h}) -
                 saddle_velocity(p, x - Vec2d{0.0, h})) /
                (2.0 * h);
    CHECK((j - fd).norm() < 1e-8);
  }
}

TEST_CASE("velocity field factories") {
  const VelocityField saddle = make_nonlinear_saddle();
  CHECK(saddle.incompressible);
  CHECK(saddle.name == "nonlinear_saddle");
  const Vec2d v = saddle.eval(3.7, {0.5, 0.0});
  CHECK(v[0] == doctest::Approx(-0.13863514717800292).epsilon(1e-15));

  const VelocityField lin = make_linear_saddle(0.3);
  const Vec2d lv = lin.eval(0.0, {1.0, -2.0});
  CHECK(lv[0] == doctest::Approx(-0.3));
  CHECK(lv[1] == doctest::Approx(-0.6));
  const Mat2d lj = lin.jacobian(0.0, {0.4, 0.4});
  CHECK(lj(0, 0) == doctest::Approx(-0.3));
  CHECK(lj(1, 1) == doctest::Approx(0.3));

  const VelocityField rot = make_sphere_rotation(0.25);
  const Vec2d rv = rot.eval(1.0, {2.0, 0.5});
  CHECK(rv[0] == doctest::Approx(0.25));
  CHECK(rv[1] == 0.0);

  CHECK_THROWS_AS((void)make_nonlinear_saddle({-1.0, 1.0, 0.15}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)make_linear_saddle(0.0), std::invalid_argument);
}

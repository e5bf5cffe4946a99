#include "lcskit/chart.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lcskit;

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_CASE("euclidean chart is the identity geometry") {
  const Chart chart = make_euclidean_chart();
  std::mt19937 rng(17u);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec2d p{u(rng), u(rng)};
    CHECK((gramian(chart, p) - Mat2d::Identity()).norm() < 1e-15);
    CHECK((modulus(chart, p) - Mat2d::Identity()).norm() < 1e-15);
  }
  Mat2d df;
  df << 1.5, 0.25, -0.75, 2.0;
  const Mat2d rep = metric_representation(chart, {0.3, -0.4}, {1.0, 2.0}, df);
  CHECK((rep - df).norm() < 1e-15);
}

TEST_CASE("sphere chart gramian and modulus") {
  const Chart chart = make_sphere_chart(2.0);
  const Vec2d p{0.7, kPi / 3.0};
  const Mat2d g = gramian(chart, p);
  CHECK(g(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(std::abs(g(0, 1)) < 1e-14);
  const Mat2d m = modulus(chart, p);
  CHECK(m(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sphere chart gramian matches the embedding differential") {
  const Chart chart = make_sphere_chart(1.7);
  std::mt19937 rng(23u);
  std::uniform_real_distribution<double> uphi(-kPi, kPi);
  std::uniform_real_distribution<double> uth(-1.4, 1.4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec2d p{uphi(rng), uth(rng)};
    const Mat32d dp = chart.pushforward(p);
    const Mat2d g_closed = gramian(chart, p);
    const Mat2d g_embed = dp.transpose() * dp;
    CHECK((g_closed - g_embed).norm() < 1e-12);
    const Mat2d m = modulus(chart, p);
    CHECK((m * m - g_closed).norm() < 1e-12);
    CHECK((m - m.transpose()).norm() < 1e-13);
  }
}

TEST_CASE("sphere metric representation of the identity gradient") {
  const Chart chart = make_sphere_chart(2.0);
  const Mat2d rep = metric_representation(chart, {0.0, 0.0}, {0.0, kPi / 3.0},
                                          Mat2d::Identity());
  CHECK(rep(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(rep(0, 1)) < 1e-15);
  CHECK(std::abs(rep(1, 0)) < 1e-15);
}

TEST_CASE("sphere chart excludes polar caps") {
  const Chart chart = make_sphere_chart(1.0, 1e-3);
  CHECK(chart.domain.contains({0.0, kPi / 2.0 - 2e-3}));
  CHECK_FALSE(chart.domain.contains({0.0, kPi / 2.0 - 1e-4}));
  CHECK_FALSE(chart.domain.contains({0.0, -kPi / 2.0}));
  CHECK_THROWS_AS((void)gramian(chart, {0.0, kPi / 2.0}), std::domain_error);
  CHECK_THROWS_AS((void)make_sphere_chart(-1.0), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "fpm/adam.hpp"
#include "fpm/tv.hpp"
#include "test_support.hpp"

using namespace fpm;

TEST_CASE("tv of a constant image is zero") {
  for (double eta : {0.5, 1.0, 2.0}) CHECK(tv_value(RealGrid(5, 7, 0.3), eta) == 0.0);
  for (double v : tv_grad(RealGrid(5, 7, 0.3), 1.0)) CHECK(v == 0.0);
}

TEST_CASE("tv of two unit horizontal steps") {
  const RealGrid img(2, 2, std::vector<double>{0.0, 1.0, 0.0, 1.0});
  // Two pixels see dx = 1; the smoothing term shifts each by sqrt(1 + eps) - sqrt(eps).
  const double expected = 2.0 * (std::sqrt(1.0 + kTvSmoothing) - std::sqrt(kTvSmoothing));
  CHECK(tv_value(img, 1.0) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(tv_value(img, 1.0) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(tv_value(img, 2.0) == 2.0);
  CHECK_THROWS_AS(tv_value(img, 0.0), InvalidConfig);
}

TEST_CASE("tv gradient matches central finite differences") {
  std::mt19937_64 rng(41);
  for (double eta : {1.0, 1.5, 2.0, 0.8}) {
    for (int trial = 0; trial < 5; ++trial) {
      RealGrid img = test::random_real(8, 8, rng);
      const RealGrid g = tv_grad(img, eta);
      const double h = 1e-6;
      for (std::size_t i = 0; i < img.size(); ++i) {
        const double keep = img[i];
        img[i] = keep + h;
        const double plus = tv_value(img, eta);
        img[i] = keep - h;
        const double minus = tv_value(img, eta);
        img[i] = keep;
        const double fd = (plus - minus) / (2 * h);
        CHECK(std::abs(fd - g[i]) <= 1e-5 * std::max({std::abs(fd), std::abs(g[i]), 1e-3}));
      }
    }
  }
}

TEST_CASE("adam leaves parameters alone under a zero gradient") {
  std::vector<double> p{0.5, -1.0, 2.0};
  const std::vector<double> g(3, 0.0);
  AdamMoments m;
  adam_step(p, g, m, {});
  CHECK(p == std::vector<double>{0.5, -1.0, 2.0});
  CHECK(m.step == 1);
}

TEST_CASE("adam first step") {
  std::vector<double> p{1.0};
  AdamMoments m;
  adam_step(p, std::vector<double>{1.0}, m, {0.01, 0.9, 0.999, 1e-8});
  CHECK(p[0] - 1.0 == doctest::Approx(-0.01 / (1.0 + 1e-8)).epsilon(1e-12));
  CHECK(m.m[0] == doctest::Approx(0.1));
  CHECK(m.v[0] == doctest::Approx(0.001));
}

TEST_CASE("adam matches a scalar reference over many steps") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> n;
  const AdamHyper hyper{0.05, 0.8, 0.99, 1e-6};
  std::vector<double> p(4, 0.0);
  std::vector<double> ref = p;
  std::vector<double> rm(4, 0.0);
  std::vector<double> rv(4, 0.0);
  AdamMoments m;
  for (int t = 1; t <= 30; ++t) {
    std::vector<double> g(4);
    for (auto& v : g) v = n(rng);
    adam_step(p, g, m, hyper);
    for (std::size_t i = 0; i < 4; ++i) {
      rm[i] = 0.8 * rm[i] + 0.2 * g[i];
      rv[i] = 0.99 * rv[i] + 0.01 * g[i] * g[i];
      const double mh = rm[i] / (1 - std::pow(0.8, t));
      const double vh = rv[i] / (1 - std::pow(0.99, t));
      ref[i] -= 0.05 * mh / (std::sqrt(vh) + 1e-6);
    }
  }
  for (std::size_t i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  CHECK(m.step == 30);
  CHECK_THROWS_AS(adam_step(p, std::vector<double>(3), m, hyper), DimensionMismatch);
}

TEST_CASE("real_view interleaves real and imaginary parts") {
  ComplexGrid g(1, 2, std::vector<complex>{{1.0, 2.0}, {3.0, 4.0}});
  auto v = real_view(g);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 2.0);
  CHECK(v[3] == 4.0);
  v[2] = -3.0;
  CHECK(g[1] == complex{-3.0, 4.0});
}

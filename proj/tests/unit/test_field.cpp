#include <doctest.h>

#include <random>

#include "fpm/field.hpp"
#include "test_support.hpp"

using namespace fpm;
using fpm::test::max_abs_diff;

TEST_CASE("grid rejects zero dimensions and mismatched data") {
  CHECK_THROWS_AS(RealGrid(0, 3), DimensionMismatch);
  CHECK_THROWS_AS(RealGrid(2, 2, std::vector<double>(3)), DimensionMismatch);
}

TEST_CASE("dft2 small examples") {
  const ComplexGrid one(1, 1, complex{2.5, -1.0});
  CHECK(dft2(one)[0] == complex{2.5, -1.0});
  CHECK(idft2(one)[0] == complex{2.5, -1.0});

  const ComplexGrid ones(2, 2, complex{1.0, 0.0});
  const ComplexGrid f = dft2(ones);
  CHECK(f(0, 0) == complex{4.0, 0.0});
  CHECK(std::abs(f(0, 1)) == doctest::Approx(0.0));
  CHECK(std::abs(f(1, 0)) == doctest::Approx(0.0));
  CHECK(std::abs(f(1, 1)) == doctest::Approx(0.0));

  ComplexGrid dc(2, 2);
  dc(0, 0) = 4.0;
  for (const auto& v : idft2(dc)) CHECK(std::abs(v - complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("dft2 matches direct summation") {
  std::mt19937_64 rng(11);
  for (auto [r, c] : {std::pair{8, 8}, {5, 7}, {6, 3}, {1, 9}}) {
    const ComplexGrid x = test::random_complex(r, c, rng);
    const ComplexGrid fast = dft2(x);
    const ComplexGrid slow = test::naive_dft2(x);
    CHECK(max_abs_diff(fast, slow) <= 1e-12 * test::max_abs(slow));

    ComplexGrid inv = test::naive_dft2(x, +1.0);
    for (auto& v : inv) v /= static_cast<double>(x.size());
    CHECK(max_abs_diff(idft2(x), inv) <= 1e-12 * test::max_abs(inv));
  }
}

TEST_CASE("dft2 round trip and Parseval") {
  std::mt19937_64 rng(12);
  const ComplexGrid x = test::random_complex(16, 12, rng);
  CHECK(max_abs_diff(idft2(dft2(x)), x) < 1e-13);
  CHECK(sum_abs2(dft2(x)) == doctest::Approx(static_cast<double>(x.size()) * sum_abs2(x)).epsilon(1e-12));
}

TEST_CASE("center_shift examples") {
  ComplexGrid g(2, 2);
  g(0, 0) = 1.0;
  g(0, 1) = 2.0;
  g(1, 0) = 3.0;
  g(1, 1) = 4.0;
  const ComplexGrid s = center_shift(g);
  CHECK(s(0, 0) == complex{4.0});
  CHECK(s(0, 1) == complex{3.0});
  CHECK(s(1, 0) == complex{2.0});
  CHECK(s(1, 1) == complex{1.0});

  ComplexGrid delta(8, 8);
  delta(0, 0) = 1.0;
  const ComplexGrid moved = center_shift(delta);
  CHECK(moved(4, 4) == complex{1.0});
  CHECK(sum_abs2(moved) == 1.0);
  CHECK(dc_index(moved) == GridIndex{4, 4});
}

TEST_CASE("inverse_center_shift undoes center_shift on odd and even sizes") {
  std::mt19937_64 rng(13);
  for (auto [r, c] : {std::pair{5, 7}, {8, 8}, {1, 4}, {9, 2}}) {
    const ComplexGrid x = test::random_complex(r, c, rng);
    CHECK(inverse_center_shift(center_shift(x)) == x);
    CHECK(center_shift(inverse_center_shift(x)) == x);
    const RealGrid re = test::random_real(r, c, rng);
    CHECK(inverse_center_shift(center_shift(re)) == re);
  }
  ComplexGrid odd(5, 5);
  odd(0, 0) = 1.0;
  CHECK(center_shift(odd)(2, 2) == complex{1.0});
}

TEST_CASE("crop_window follows the centering rule") {
  ComplexGrid g(8, 8);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(i);

  CHECK(crop_window(g, {4, 4}, 8, 8) == g);

  const ComplexGrid w = crop_window(g, {4, 4}, 2, 2);
  CHECK(w(0, 0) == g(3, 3));
  CHECK(w(0, 1) == g(3, 4));
  CHECK(w(1, 0) == g(4, 3));
  CHECK(w(1, 1) == g(4, 4));

  const ComplexGrid odd = crop_window(g, {2, 5}, 3, 3);
  CHECK(odd(0, 0) == g(1, 4));
  CHECK(odd(2, 2) == g(3, 6));

  CHECK_THROWS_AS(crop_window(g, {0, 0}, 4, 4), WindowOutOfBounds);
  CHECK_THROWS_AS(crop_window(g, {6, 4}, 6, 2), WindowOutOfBounds);
  CHECK_FALSE(window_fits(8, 8, {7, 4}, 4, 4));
  CHECK(window_fits(8, 8, {6, 4}, 4, 4));
}

TEST_CASE("embed_window") {
  std::mt19937_64 rng(14);
  const ComplexGrid patch = test::random_complex(3, 4, rng);
  const ComplexGrid placed = embed_window(ComplexGrid(8, 8), patch, {4, 3});
  CHECK(crop_window(placed, {4, 3}, 3, 4) == patch);
  CHECK(sum_abs2(placed) == doctest::Approx(sum_abs2(patch)));

  ComplexGrid twice(8, 8);
  embed_window_into(twice, patch, {4, 3}, EmbedMode::add);
  embed_window_into(twice, patch, {4, 3}, EmbedMode::add);
  const ComplexGrid doubled = crop_window(twice, {4, 3}, 3, 4);
  for (std::size_t i = 0; i < patch.size(); ++i) CHECK(doubled[i] == 2.0 * patch[i]);

  ComplexGrid dst(8, 8);
  CHECK_THROWS_AS(embed_window_into(dst, patch, {0, 0}), WindowOutOfBounds);
  CHECK_THROWS_AS(embed_window_into(dst, patch, {7, 7}), WindowOutOfBounds);
}

TEST_CASE("crop/embed round trip is bitwise exact for random in-bounds windows") {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<std::size_t> dim(1, 64);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t R = dim(rng);
    const std::size_t C = dim(rng);
    const std::size_t wr = std::uniform_int_distribution<std::size_t>(1, R)(rng);
    const std::size_t wc = std::uniform_int_distribution<std::size_t>(1, C)(rng);
    const auto cr = static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(wr / 2, R - wr + wr / 2)(rng));
    const auto cc = static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(wc / 2, C - wc + wc / 2)(rng));
    REQUIRE(window_fits(R, C, {cr, cc}, wr, wc));
    const ComplexGrid base = test::random_complex(R, C, rng);
    const ComplexGrid patch = test::random_complex(wr, wc, rng);
    const ComplexGrid out = embed_window(base, patch, {cr, cc});
    CHECK(crop_window(out, {cr, cc}, wr, wc) == patch);
    CHECK(embed_window(out, crop_window(base, {cr, cc}, wr, wc), {cr, cc}) == base);
  }
}

TEST_CASE("element-wise helpers") {
  const ComplexGrid a(2, 3, complex{1.0, 1.0});
  const ComplexGrid b(2, 3, complex{1.0, -1.0});
  for (const auto& v : hadamard(a, b)) CHECK(v == complex{2.0, 0.0});
  CHECK_THROWS_AS(hadamard(a, ComplexGrid(3, 2)), DimensionMismatch);

  CHECK(phase_unit(complex{0.0, 0.0}) == complex{1.0, 0.0});
  CHECK(std::abs(phase_unit(complex{0.0, -2.0}) - complex{0.0, -1.0}) < 1e-16);
  CHECK(amplitude(ComplexGrid(1, 1, complex{3.0, 4.0}))[0] == 5.0);

  const RealGrid ph = phase_angle(ComplexGrid(1, 1, complex{-1.0, 0.0}));
  CHECK(ph[0] == doctest::Approx(std::numbers::pi));

  RealGrid amp(1, 2, std::vector<double>{2.0, 0.5});
  RealGrid phase(1, 2, std::vector<double>{0.25, -1.0});
  const ComplexGrid p = polar_grid(amp, phase);
  CHECK(std::abs(p[0] - std::polar(2.0, 0.25)) < 1e-16);
  CHECK(std::abs(p[1] - std::polar(0.5, -1.0)) < 1e-16);

  ComplexGrid bad(1, 1, complex{std::nan(""), 0.0});
  CHECK_FALSE(all_finite(bad));
  CHECK(all_finite(a));
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fpm/forward_sim.hpp"
#include "fpm/rng.hpp"
#include "test_support.hpp"

using namespace fpm;

namespace {

// Capture computed without crop_window, center shifts or FFTs: the shifted
// pupil C(k - k_n) is laid over the full high-res spectrum, and the product is
// inverse-transformed directly at capture resolution over the surviving bins.
RealGrid full_grid_capture(const ComplexGrid& object, const ComplexGrid& pupil, GridIndex offset) {
  const auto P = static_cast<std::ptrdiff_t>(object.rows());
  const auto Q = static_cast<std::ptrdiff_t>(object.cols());
  const auto N = static_cast<std::ptrdiff_t>(pupil.rows());
  const auto M = static_cast<std::ptrdiff_t>(pupil.cols());
  const double two_pi = 2.0 * std::numbers::pi;

  // Spectrum with frequency index kp = p - P/2 stored at row p.
  ComplexGrid spec(object.rows(), object.cols());
  for (std::ptrdiff_t p = 0; p < P; ++p) {
    for (std::ptrdiff_t q = 0; q < Q; ++q) {
      complex acc{};
      for (std::ptrdiff_t r = 0; r < P; ++r)
        for (std::ptrdiff_t c = 0; c < Q; ++c)
          acc += object(r, c) * std::polar(1.0, -two_pi * (static_cast<double>((p - P / 2) * r) / P +
                                                             static_cast<double>((q - Q / 2) * c) / Q));
      spec(p, q) = acc;
    }
  }

  struct Term {
    complex value;
    double kr, kc;
  };
  std::vector<Term> terms;
  for (std::ptrdiff_t p = 0; p < P; ++p) {
    for (std::ptrdiff_t q = 0; q < Q; ++q) {
      const std::ptrdiff_t kr = p - P / 2 - offset.row;
      const std::ptrdiff_t kc = q - Q / 2 - offset.col;
      const std::ptrdiff_t pr = kr + N / 2;
      const std::ptrdiff_t pc = kc + M / 2;
      if (pr < 0 || pr >= N || pc < 0 || pc >= M) continue;
      const complex cp = pupil(static_cast<std::size_t>(pr), static_cast<std::size_t>(pc));
      if (cp == complex{}) continue;
      terms.push_back({spec(p, q) * cp, static_cast<double>(kr), static_cast<double>(kc)});
    }
  }

  const double scale = static_cast<double>(N * M) / static_cast<double>(P * Q);
  RealGrid out(pupil.rows(), pupil.cols());
  for (std::ptrdiff_t u = 0; u < N; ++u) {
    for (std::ptrdiff_t v = 0; v < M; ++v) {
      complex acc{};
      for (const auto& t : terms)
        acc += t.value * std::polar(1.0, two_pi * (t.kr * static_cast<double>(u) / N +
                                                   t.kc * static_cast<double>(v) / M));
      acc *= scale / static_cast<double>(N * M);
      out(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) = std::norm(acc);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("uniform object through the central pupil gives unit intensity") {
  const OpticalConfig cfg = test::paper_config();
  const GroundTruth gt{ComplexGrid(128, 128, complex{1.0, 0.0}), make_ctf(cfg)};
  for (double v : forward_capture(gt, {0, 0})) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  for (double v : forward_capture(gt, {-36, -36})) CHECK(v <= 1e-20);
}

TEST_CASE("forward_capture matches the full-grid oracle") {
  OpticalConfig cfg = test::paper_config();
  cfg.upsample = 2;
  cfg.illuminations = {{0.0, 0.0}, {0.1, -0.15}, {-0.15, 0.05}};
  std::mt19937_64 rng(21);
  const ComplexGrid object = test::random_complex(64, 64, rng);
  const RealGrid mask = pupil_mask(cfg);
  ComplexGrid pupil = test::random_complex(32, 32, rng);
  for (std::size_t i = 0; i < pupil.size(); ++i) pupil[i] *= mask[i];
  const GroundTruth gt{object, pupil};

  const auto offsets = illumination_offsets(cfg);
  CHECK(offsets[1] == GridIndex{-16, 10});
  for (const auto& off : offsets) {
    const RealGrid fast = forward_capture(gt, off);
    const RealGrid slow = full_grid_capture(object, pupil, off);
    double peak = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      peak = std::max(peak, slow[i]);
      err = std::max(err, std::abs(fast[i] - slow[i]));
    }
    CHECK(err <= 1e-10 * peak);
  }

  const Dataset ds = simulate_dataset(gt, cfg, {});
  for (std::size_t n = 0; n < offsets.size(); ++n) CHECK(ds.images[n] == forward_capture(gt, offsets[n]));
}

TEST_CASE("simulate_dataset shape and validation") {
  const OpticalConfig cfg = test::paper_config();
  const GroundTruth gt{test::phantom_object(cfg, 3), make_ctf(cfg)};
  const Dataset ds = simulate_dataset(gt, cfg, {});
  REQUIRE(ds.images.size() == 225);
  for (const auto& img : ds.images) {
    CHECK(img.rows() == 32);
    CHECK(img.cols() == 32);
  }
  CHECK_NOTHROW(validate(ds));
  CHECK_FALSE(ds.saturation.has_value());

  const GroundTruth small{ComplexGrid(64, 64), make_ctf(cfg)};
  CHECK_THROWS_AS(simulate_dataset(small, cfg, {}), DimensionMismatch);
  SimOptions neg;
  neg.gaussian_noise_sigma = -1.0;
  CHECK_THROWS_AS(simulate_dataset(gt, cfg, neg), InvalidConfig);
}

TEST_CASE("saturation clips at the stated level only") {
  const OpticalConfig cfg = test::small_config();
  std::mt19937_64 rng(22);
  const GroundTruth gt{test::random_object(16, 16, rng), make_ctf(cfg)};
  const Dataset raw = simulate_dataset(gt, cfg, {});
  SimOptions opts;
  opts.saturation = 0.5;
  const Dataset sat = simulate_dataset(gt, cfg, opts);
  REQUIRE(sat.saturation == 0.5);
  bool saw_clip = false;
  for (std::size_t n = 0; n < raw.images.size(); ++n) {
    const auto& a = raw.images[n];
    const auto& b = sat.images[n];
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < 0.5) {
        CHECK(b[i] == a[i]);
      } else {
        CHECK(b[i] == 0.5);
        saw_clip = true;
      }
    }
    if (*std::max_element(a.begin(), a.end()) >= 0.5) CHECK(*std::max_element(b.begin(), b.end()) == 0.5);
  }
  CHECK(saw_clip);
}

TEST_CASE("noise determinism") {
  const OpticalConfig cfg = test::small_config();
  std::mt19937_64 rng(23);
  const GroundTruth gt{test::random_object(16, 16, rng), make_ctf(cfg)};
  SimOptions a;
  a.seed = 1;
  SimOptions b;
  b.seed = 99;
  CHECK(simulate_dataset(gt, cfg, a) == simulate_dataset(gt, cfg, b));

  a.gaussian_noise_sigma = b.gaussian_noise_sigma = 0.05;
  const Dataset na = simulate_dataset(gt, cfg, a);
  CHECK(na == simulate_dataset(gt, cfg, a));
  CHECK_FALSE(na == simulate_dataset(gt, cfg, b));
  for (const auto& img : na.images)
    for (double v : img) CHECK(v >= 0.0);
  CHECK_FALSE(na.images[0] == na.images[1]);
}

TEST_CASE("gaussian source statistics") {
  GaussianSource g(5);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = g.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.01);

  GaussianSource a(42);
  GaussianSource b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  GaussianSource u(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("clip_brightest overexposes the brightest captures") {
  const OpticalConfig cfg = test::paper_config();
  const GroundTruth gt{test::phantom_object(cfg, 3), defocused_pupil(cfg, 50.0)};
  const Dataset raw = simulate_dataset(gt, cfg, {});
  Dataset clipped = raw;
  clip_brightest(clipped, 0.1, 0.5);

  std::vector<double> peaks;
  for (const auto& img : raw.images) peaks.push_back(*std::max_element(img.begin(), img.end()));
  std::vector<double> sorted = peaks;
  std::sort(sorted.rbegin(), sorted.rend());
  const double threshold = sorted[22];

  std::size_t changed = 0;
  for (std::size_t n = 0; n < raw.images.size(); ++n) {
    if (clipped.images[n] == raw.images[n]) {
      CHECK(peaks[n] <= threshold);
      continue;
    }
    ++changed;
    CHECK(peaks[n] >= threshold);
    const double level = 0.5 * peaks[n];
    for (std::size_t i = 0; i < raw.images[n].size(); ++i)
      CHECK(clipped.images[n][i] == std::min(raw.images[n][i], level));
  }
  CHECK(changed == 23);
  CHECK_THROWS_AS(clip_brightest(clipped, 1.5, 0.5), InvalidConfig);
}

TEST_CASE("defocused pupil") {
  const OpticalConfig cfg = test::paper_config();
  CHECK(defocused_pupil(cfg, 0.0) == make_ctf(cfg));
  const ComplexGrid p = defocused_pupil(cfg, 50.0);
  const RealGrid mask = pupil_mask(cfg);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i]) == doctest::Approx(mask[i]));
}

TEST_CASE("phantom is deterministic and within range") {
  const Phantom a = make_phantom(64, 48, 9);
  const Phantom b = make_phantom(64, 48, 9);
  CHECK(a.amplitude == b.amplitude);
  CHECK(a.phase == b.phase);
  CHECK_FALSE(make_phantom(64, 48, 10).amplitude == a.amplitude);
  for (double v : a.amplitude) {
    CHECK(v >= 0.3);
    CHECK(v <= 1.0);
  }
  for (double v : a.phase) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

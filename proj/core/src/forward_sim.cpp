#include "fpm/forward_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fpm/rng.hpp"

namespace fpm {

RealGrid forward_capture_from_spectrum(const ComplexGrid& centered_spectrum,
                                       const ComplexGrid& pupil, GridIndex center) {
  const ComplexGrid window = crop_window(centered_spectrum, center, pupil.rows(), pupil.cols());
  const ComplexGrid field = idft2(inverse_center_shift(hadamard(window, pupil)));
  const double scale = static_cast<double>(pupil.size()) / static_cast<double>(centered_spectrum.size());
  RealGrid out(field.rows(), field.cols());
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = std::norm(field[i]) * scale * scale;
  return out;
}

RealGrid forward_capture(const GroundTruth& gt, GridIndex offset) {
  const ComplexGrid spectrum = center_shift(dft2(gt.object));
  const GridIndex dc = dc_index(spectrum);
  return forward_capture_from_spectrum(spectrum, gt.pupil,
                                       {dc.row + offset.row, dc.col + offset.col});
}

ComplexGrid defocused_pupil(const OpticalConfig& cfg, double defocus_um) {
  return polar_grid(pupil_mask(cfg), defocus_phase(cfg, defocus_um));
}

Dataset simulate_dataset(const GroundTruth& gt, const OpticalConfig& cfg, const SimOptions& opts) {
  validate(cfg);
  if (gt.object.rows() != cfg.high_rows() || gt.object.cols() != cfg.high_cols())
    throw DimensionMismatch("ground-truth object must be upsample x capture dims");
  if (gt.pupil.rows() != cfg.low_rows || gt.pupil.cols() != cfg.low_cols)
    throw DimensionMismatch("ground-truth pupil must match capture dims");
  if (!(opts.gaussian_noise_sigma >= 0.0)) throw InvalidConfig("noise sigma must be >= 0");
  if (opts.saturation && !(*opts.saturation > 0.0)) throw InvalidConfig("saturation must be > 0");

  const ComplexGrid spectrum = center_shift(dft2(gt.object));
  const auto centers = window_centers(cfg);

  Dataset ds{cfg, {}, opts.saturation};
  ds.images.reserve(centers.size());
  for (std::size_t n = 0; n < centers.size(); ++n) {
    RealGrid img = forward_capture_from_spectrum(spectrum, gt.pupil, centers[n]);
    if (opts.gaussian_noise_sigma > 0.0) {
      GaussianSource noise(opts.seed ^ static_cast<std::uint64_t>(n));
      for (double& v : img) v = std::max(0.0, v + opts.gaussian_noise_sigma * noise.normal());
    }
    if (opts.saturation)
      for (double& v : img) v = std::min(v, *opts.saturation);
    ds.images.push_back(std::move(img));
  }
  return ds;
}

void clip_brightest(Dataset& ds, double fraction, double relative_level) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidConfig("fraction must lie in [0, 1]");
  if (!(relative_level > 0.0)) throw InvalidConfig("relative clip level must be > 0");
  std::vector<double> peaks;
  peaks.reserve(ds.images.size());
  for (const auto& img : ds.images) peaks.push_back(*std::max_element(img.begin(), img.end()));
  std::vector<std::size_t> order(ds.images.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return peaks[a] > peaks[b]; });
  const auto count = static_cast<std::size_t>(std::round(fraction * static_cast<double>(order.size())));
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = order[k];
    const double level = relative_level * peaks[n];
    for (double& v : ds.images[n]) v = std::min(v, level);
  }
}

namespace {

RealGrid band_limited_texture(std::size_t rows, std::size_t cols, double radius, GaussianSource& rng) {
  ComplexGrid spectrum(rows, cols);
  const double r2 = radius * radius;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double dr = static_cast<double>(r) - static_cast<double>(rows / 2);
      const double dc = static_cast<double>(c) - static_cast<double>(cols / 2);
      const double d2 = dr * dr + dc * dc;
      if (d2 > r2) continue;
      // 1/f-like roll-off keeps the texture dominated by mid frequencies.
      const double weight = 1.0 / (1.0 + std::sqrt(d2));
      spectrum(r, c) = weight * complex{rng.normal(), rng.normal()};
    }
  }
  const ComplexGrid field = idft2(inverse_center_shift(spectrum));
  RealGrid tex(rows, cols);
  double peak = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    tex[i] = field[i].real();
    peak = std::max(peak, std::abs(tex[i]));
  }
  if (peak > 0.0)
    for (double& v : tex) v /= peak;
  return tex;
}

}  // namespace

Phantom make_phantom(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  GaussianSource rng(seed);
  const double band = 0.2 * static_cast<double>(std::min(rows, cols));
  const RealGrid tex_amp = band_limited_texture(rows, cols, band, rng);
  const RealGrid tex_phase = band_limited_texture(rows, cols, band, rng);

  RealGrid amp(rows, cols);
  RealGrid phase(rows, cols);
  for (std::size_t i = 0; i < amp.size(); ++i) {
    amp[i] = 0.7 + 0.2 * tex_amp[i];
    phase[i] = 0.6 * tex_phase[i];
  }

  const double scale = static_cast<double>(std::min(rows, cols));
  for (int d = 0; d < 6; ++d) {
    const double cy = (0.15 + 0.7 * rng.uniform()) * static_cast<double>(rows);
    const double cx = (0.15 + 0.7 * rng.uniform()) * static_cast<double>(cols);
    const double radius = (0.05 + 0.07 * rng.uniform()) * scale;
    const double damp = (d % 2 ? -0.25 : 0.15);
    const double dphase = (d % 3 == 0 ? 0.4 : -0.3);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const double dist = std::hypot(static_cast<double>(r) - cy, static_cast<double>(c) - cx);
        const double w = 0.5 * (1.0 - std::tanh((dist - radius) / 1.5));
        amp(r, c) += damp * w;
        phase(r, c) += dphase * w;
      }
    }
  }
  for (std::size_t i = 0; i < amp.size(); ++i) {
    amp[i] = std::clamp(amp[i], 0.3, 1.0);
    phase[i] = std::clamp(phase[i], -1.0, 1.0);
  }
  return {std::move(amp), std::move(phase)};
}

}  // namespace fpm

#include "fpm/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fpm {
namespace {

// Spatial frequency (cycles/um) of bin (r, c) in a DC-centred grid.
struct Frequency {
  double fy;
  double fx;
};

Frequency bin_frequency(std::size_t r, std::size_t c, std::size_t rows, std::size_t cols,
                        double pixel_um) {
  const double dr = static_cast<double>(r) - static_cast<double>(rows / 2);
  const double dc = static_cast<double>(c) - static_cast<double>(cols / 2);
  return {dr / (static_cast<double>(rows) * pixel_um), dc / (static_cast<double>(cols) * pixel_um)};
}

double cutoff_frequency(const OpticalConfig& cfg) { return cfg.na / cfg.wavelength_um; }

bool inside_pupil(const Frequency& f, double cutoff) {
  return f.fx * f.fx + f.fy * f.fy < cutoff * cutoff;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double zernike_radial(int n, int m, double rho) {
  double sum = 0.0;
  for (int k = 0; k <= (n - m) / 2; ++k) {
    const double coef = factorial(n - k) /
                        (factorial(k) * factorial((n + m) / 2 - k) * factorial((n - m) / 2 - k));
    sum += ((k % 2) ? -coef : coef) * std::pow(rho, n - 2 * k);
  }
  return sum;
}

}  // namespace

void validate(const OpticalConfig& cfg) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(cfg.wavelength_um)) throw InvalidConfig("wavelength_um must be > 0");
  if (!(std::isfinite(cfg.na) && cfg.na > 0.0 && cfg.na < 1.0))
    throw InvalidConfig("na must lie in (0, 1)");
  if (!positive(cfg.magnification)) throw InvalidConfig("magnification must be > 0");
  if (!positive(cfg.camera_pixel_um)) throw InvalidConfig("camera_pixel_um must be > 0");
  if (cfg.upsample < 1) throw InvalidConfig("upsample must be >= 1");
  if (cfg.low_rows == 0 || cfg.low_cols == 0) throw InvalidConfig("capture dims must be positive");
  if (cfg.illuminations.empty()) throw InvalidConfig("at least one illumination is required");
  for (std::size_t i = 0; i < cfg.illuminations.size(); ++i) {
    const auto& il = cfg.illuminations[i];
    if (!std::isfinite(il.sx) || !std::isfinite(il.sy) || il.sx * il.sx + il.sy * il.sy >= 1.0)
      throw InvalidConfig("illumination " + std::to_string(i) + " needs sx^2 + sy^2 < 1");
  }
  for (const auto& c : window_centers(cfg))
    check_window(cfg.high_rows(), cfg.high_cols(), c, cfg.low_rows, cfg.low_cols);
}

std::vector<Illumination> led_grid(int n, double step) {
  std::vector<Illumination> out;
  out.reserve(static_cast<std::size_t>(n * n));
  const int half = n / 2;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) out.push_back({(ix - half) * step, (iy - half) * step});
  return out;
}

RealGrid pupil_mask(const OpticalConfig& cfg) {
  RealGrid mask(cfg.low_rows, cfg.low_cols);
  const double cutoff = cutoff_frequency(cfg);
  for (std::size_t r = 0; r < mask.rows(); ++r)
    for (std::size_t c = 0; c < mask.cols(); ++c)
      mask(r, c) = inside_pupil(bin_frequency(r, c, mask.rows(), mask.cols(), cfg.object_pixel_um()),
                                cutoff)
                       ? 1.0
                       : 0.0;
  return mask;
}

ComplexGrid make_ctf(const OpticalConfig& cfg) { return to_complex(pupil_mask(cfg)); }

std::pair<int, int> noll_to_nm(int j) {
  if (j < 1) throw InvalidModeCount("Noll index must be >= 1");
  int n = 0;
  int rem = j - 1;
  while (rem > n) {
    ++n;
    rem -= n;
  }
  const int magnitude = (n % 2) + 2 * ((rem + ((n + 1) % 2)) / 2);
  const int m = (j % 2 == 0) ? magnitude : -magnitude;
  return {n, m};
}

double zernike_noll(int j, double rho, double theta) {
  const auto [n, m] = noll_to_nm(j);
  const int am = std::abs(m);
  const double radial = zernike_radial(n, am, rho);
  if (m == 0) return std::sqrt(n + 1.0) * radial;
  const double norm = std::sqrt(2.0 * (n + 1.0));
  return norm * radial * (m > 0 ? std::cos(am * theta) : std::sin(am * theta));
}

ZernikeBasis zernike_basis(const OpticalConfig& cfg, int count) {
  if (count < 1) throw InvalidModeCount("Zernike mode count must be >= 1");
  const double cutoff = cutoff_frequency(cfg);
  std::vector<RealGrid> modes(static_cast<std::size_t>(count), RealGrid(cfg.low_rows, cfg.low_cols));
  for (std::size_t r = 0; r < cfg.low_rows; ++r) {
    for (std::size_t c = 0; c < cfg.low_cols; ++c) {
      const auto f = bin_frequency(r, c, cfg.low_rows, cfg.low_cols, cfg.object_pixel_um());
      if (!inside_pupil(f, cutoff)) continue;
      const double rho = std::hypot(f.fx, f.fy) / cutoff;
      const double theta = std::atan2(f.fy, f.fx);
      for (int j = 1; j <= count; ++j)
        modes[static_cast<std::size_t>(j - 1)](r, c) = zernike_noll(j, rho, theta);
    }
  }
  return ZernikeBasis(std::move(modes));
}

RealGrid zernike_phase(std::span<const double> coeffs, const ZernikeBasis& basis) {
  if (coeffs.size() != basis.count())
    throw DimensionMismatch("coefficient count differs from Zernike basis size");
  RealGrid phase(basis.mode(0).rows(), basis.mode(0).cols());
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    if (coeffs[l] == 0.0) continue;
    const auto& z = basis.mode(l);
    for (std::size_t i = 0; i < phase.size(); ++i) phase[i] += coeffs[l] * z[i];
  }
  return phase;
}

ComplexGrid pupil_from_params(const RealGrid& amp, std::span<const double> coeffs,
                              const ZernikeBasis& basis) {
  if (basis.count() == 0) throw InvalidModeCount("empty Zernike basis");
  require_same_shape(amp, basis.mode(0), "pupil amplitude and Zernike basis shapes differ");
  const RealGrid phase = zernike_phase(coeffs, basis);
  ComplexGrid out(amp.rows(), amp.cols());
  for (std::size_t i = 0; i < amp.size(); ++i)
    out[i] = amp[i] == 0.0 ? complex{} : std::polar(amp[i], phase[i]);
  return out;
}

std::vector<GridIndex> illumination_offsets(const OpticalConfig& cfg) {
  // Frequency step on the high-res grid is 1/(N_h * pixel_h), and
  // N_h * pixel_h equals the capture field of view.
  const double fov_rows = static_cast<double>(cfg.high_rows()) * cfg.high_pixel_um();
  const double fov_cols = static_cast<double>(cfg.high_cols()) * cfg.high_pixel_um();
  std::vector<GridIndex> out;
  out.reserve(cfg.illuminations.size());
  for (const auto& il : cfg.illuminations) {
    out.push_back({static_cast<std::ptrdiff_t>(std::round(il.sy / cfg.wavelength_um * fov_rows)),
                   static_cast<std::ptrdiff_t>(std::round(il.sx / cfg.wavelength_um * fov_cols))});
  }
  return out;
}

std::vector<GridIndex> window_centers(const OpticalConfig& cfg) {
  const auto dc_row = static_cast<std::ptrdiff_t>(cfg.high_rows() / 2);
  const auto dc_col = static_cast<std::ptrdiff_t>(cfg.high_cols() / 2);
  auto centers = illumination_offsets(cfg);
  for (auto& c : centers) {
    c.row += dc_row;
    c.col += dc_col;
  }
  return centers;
}

RealGrid defocus_phase(const OpticalConfig& cfg, double z_um) {
  RealGrid phase(cfg.low_rows, cfg.low_cols);
  if (z_um == 0.0) return phase;
  const double k0 = 2.0 * std::numbers::pi / cfg.wavelength_um;
  const double cutoff = cutoff_frequency(cfg);
  for (std::size_t r = 0; r < cfg.low_rows; ++r) {
    for (std::size_t c = 0; c < cfg.low_cols; ++c) {
      const auto f = bin_frequency(r, c, cfg.low_rows, cfg.low_cols, cfg.object_pixel_um());
      if (!inside_pupil(f, cutoff)) continue;
      const double kx = 2.0 * std::numbers::pi * f.fx;
      const double ky = 2.0 * std::numbers::pi * f.fy;
      phase(r, c) = z_um * (std::sqrt(k0 * k0 - kx * kx - ky * ky) - k0);
    }
  }
  return phase;
}

RealGrid synthetic_aperture(const OpticalConfig& cfg) {
  const RealGrid mask = pupil_mask(cfg);
  RealGrid out(cfg.high_rows(), cfg.high_cols());
  const auto half_r = static_cast<std::ptrdiff_t>(cfg.low_rows / 2);
  const auto half_c = static_cast<std::ptrdiff_t>(cfg.low_cols / 2);
  for (const auto& center : window_centers(cfg)) {
    check_window(out.rows(), out.cols(), center, cfg.low_rows, cfg.low_cols);
    const auto r0 = static_cast<std::size_t>(center.row - half_r);
    const auto c0 = static_cast<std::size_t>(center.col - half_c);
    for (std::size_t r = 0; r < mask.rows(); ++r)
      for (std::size_t c = 0; c < mask.cols(); ++c)
        if (mask(r, c) != 0.0) out(r0 + r, c0 + c) = 1.0;
  }
  return out;
}

}  // namespace fpm

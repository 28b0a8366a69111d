#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fpm/field.hpp"

namespace fpm {

/// Direction sines (sin theta_x, sin theta_y) of one incident plane wave.
struct Illumination {
  double sx = 0.0;
  double sy = 0.0;
  friend bool operator==(const Illumination&, const Illumination&) = default;
};

/// Microscope geometry. Lengths are in micrometres; `upsample` is the ratio
/// between the reconstructed grid and the capture grid on each axis.
struct OpticalConfig {
  double wavelength_um = 0.532;
  double na = 0.1;
  double magnification = 2.0;
  double camera_pixel_um = 3.45;
  int upsample = 4;
  std::size_t low_rows = 32;
  std::size_t low_cols = 32;
  std::vector<Illumination> illuminations;

  double object_pixel_um() const { return camera_pixel_um / magnification; }
  double high_pixel_um() const { return object_pixel_um() / upsample; }
  std::size_t high_rows() const { return low_rows * static_cast<std::size_t>(upsample); }
  std::size_t high_cols() const { return low_cols * static_cast<std::size_t>(upsample); }
  /// Field amplitude factor between a capture-sized spectrum window and the
  /// full-resolution spectrum: (low_rows*low_cols)/(high_rows*high_cols).
  double energy_scale() const {
    return static_cast<double>(low_rows * low_cols) /
           static_cast<double>(high_rows() * high_cols());
  }

  friend bool operator==(const OpticalConfig&, const OpticalConfig&) = default;
};

/// Throws InvalidConfig on any violated field invariant, and
/// WindowOutOfBounds if an illumination's pupil window exits the high-res grid.
void validate(const OpticalConfig& cfg);

/// n x n illumination lattice centred on the optical axis, spaced `step` in
/// direction sine, listed row by row (sy outer, sx inner).
std::vector<Illumination> led_grid(int n, double step);

/// Binary coherent transfer function on the capture grid, DC-centred:
/// 1 strictly inside |k| < NA*k0, 0 elsewhere.
ComplexGrid make_ctf(const OpticalConfig& cfg);
RealGrid pupil_mask(const OpticalConfig& cfg);

/// Zernike polynomial by Noll index j >= 1 on the unit disk.
double zernike_noll(int j, double rho, double theta);
/// Noll index -> (n, m); m > 0 selects cos(m theta), m < 0 selects sin(|m| theta).
std::pair<int, int> noll_to_nm(int j);

/// The first L Noll-ordered Zernike modes sampled on the pupil grid,
/// zero outside the pupil disk.
class ZernikeBasis {
 public:
  ZernikeBasis() = default;
  ZernikeBasis(std::vector<RealGrid> modes) : modes_(std::move(modes)) {}

  std::size_t count() const { return modes_.size(); }
  /// Zero-based access; mode(0) is the Noll Z_1 piston.
  const RealGrid& mode(std::size_t l) const { return modes_.at(l); }
  std::span<const RealGrid> modes() const { return modes_; }

 private:
  std::vector<RealGrid> modes_;
};

ZernikeBasis zernike_basis(const OpticalConfig& cfg, int count);

/// Phase map sum_l c_l Z_l over the pupil grid.
RealGrid zernike_phase(std::span<const double> coeffs, const ZernikeBasis& basis);
/// amp * exp(i * sum_l c_l Z_l), element-wise.
ComplexGrid pupil_from_params(const RealGrid& amp, std::span<const double> coeffs,
                              const ZernikeBasis& basis);

/// Integer spectrum offset of each illumination on the high-res grid
/// (row offset from sy, column offset from sx), rounded half away from zero.
std::vector<GridIndex> illumination_offsets(const OpticalConfig& cfg);
/// Window centre (DC index + offset) of each illumination in the high-res spectrum.
std::vector<GridIndex> window_centers(const OpticalConfig& cfg);

/// Angular-spectrum defocus phase z*(sqrt(k0^2 - |k|^2) - k0) inside the pupil.
RealGrid defocus_phase(const OpticalConfig& cfg, double z_um);

/// Union of all shifted pupil supports on the high-res DC-centred grid.
RealGrid synthetic_aperture(const OpticalConfig& cfg);

}  // namespace fpm

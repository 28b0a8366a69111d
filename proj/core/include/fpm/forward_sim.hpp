#pragma once

#include <cstdint>
#include <optional>

#include "fpm/dataset.hpp"
#include "fpm/field.hpp"
#include "fpm/optics.hpp"

namespace fpm {

/// High-res complex transmission o(r) and capture-sized pupil C(k).
struct GroundTruth {
  ComplexGrid object;
  ComplexGrid pupil;
};

struct SimOptions {
  std::optional<double> saturation;
  double gaussian_noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Capture from a DC-centred object spectrum:
/// |idft2(ishift(crop(spectrum, center) . pupil))|^2 * scale^2, where
/// scale = (low pixels)/(high pixels) makes a unit object give unit intensity.
RealGrid forward_capture_from_spectrum(const ComplexGrid& centered_spectrum,
                                       const ComplexGrid& pupil, GridIndex center);

/// Capture for one illumination, given its integer spectrum offset.
RealGrid forward_capture(const GroundTruth& gt, GridIndex offset);

/// One capture per illumination, followed by optional noise (clamped at 0)
/// and optional saturation clipping. Image n draws its noise from seed ^ n.
Dataset simulate_dataset(const GroundTruth& gt, const OpticalConfig& cfg, const SimOptions& opts);

/// Ground-truth pupil: binary CTF carrying the angular-spectrum defocus phase.
ComplexGrid defocused_pupil(const OpticalConfig& cfg, double defocus_um);

/// Overexposes the `fraction` of captures with the largest peak intensity,
/// clipping each at `relative_level` times its own peak.
void clip_brightest(Dataset& ds, double fraction, double relative_level);

/// Deterministic amplitude/phase test object: smooth band-limited texture
/// plus a few soft-edged disks. Amplitude in [0.3, 1], phase in [-1, 1] rad.
struct Phantom {
  RealGrid amplitude;
  RealGrid phase;
};
Phantom make_phantom(std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace fpm

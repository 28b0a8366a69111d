#pragma once

#include <cstdint>
#include <vector>

#include "fpm/dataset.hpp"
#include "fpm/field.hpp"
#include "fpm/optics.hpp"

namespace fpm {

enum class Traversal { manifest_order, center_out };

/// Immutable per-dataset quantities shared by both reconstruction engines.
struct Problem {
  OpticalConfig config;
  std::vector<RealGrid> intensities;
  std::vector<RealGrid> amplitudes;  // sqrt of each capture
  std::vector<GridIndex> centers;    // window centres in the high-res spectrum
  RealGrid mask;                     // pupil support on the capture grid

  std::size_t count() const { return intensities.size(); }
  std::size_t index_of_central() const;

  static Problem from(const Dataset& ds);
};

/// First/second moment buffers and step counter of one Adam parameter group.
struct AdamMoments {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;

  friend bool operator==(const AdamMoments&, const AdamMoments&) = default;
};

enum class PupilModel { free, zernike };

/// Learnable parameters of a reconstruction.
///
/// `object_spectrum` is the DC-centred high-res spectrum multiplied by the
/// capture/high-res energy scale, so that a window of it times the pupil
/// inverse-transforms (at capture size) directly to the predicted field.
/// In `free` mode the pupil is the complex grid `pupil`; in `zernike` mode it
/// is pupil_amp * exp(i sum c_l Z_l).
struct ReconState {
  ComplexGrid object_spectrum;
  PupilModel pupil_model = PupilModel::free;
  ComplexGrid pupil;
  RealGrid pupil_amp;
  std::vector<double> zern_coeffs;

  AdamMoments object_moments;
  AdamMoments pupil_moments;
  AdamMoments zern_moments;

  friend bool operator==(const ReconState&, const ReconState&) = default;
};

/// Object: zero-padded spectrum of sqrt(central capture), zero phase.
/// Pupil: binary CTF with zero phase (and zero Zernike coefficients).
ReconState initial_state(const Problem& problem, PupilModel model, int zernike_modes);

/// Complex pupil currently represented by the state.
ComplexGrid current_pupil(const ReconState& state, const ZernikeBasis* basis);

std::vector<std::size_t> traversal_order(const Problem& problem, Traversal traversal);

/// Predicted sub-spectrum crop(O, center_n) . C (DC-centred, capture size).
ComplexGrid predicted_spectrum(const Problem& problem, const ComplexGrid& object_spectrum,
                               const ComplexGrid& pupil, std::size_t n);

/// Amplitude projection of a DC-centred sub-spectrum:
/// F{sqrt(measured) . phase_unit(F^-1{phi})}, returned DC-centred.
ComplexGrid ap_project(const ComplexGrid& phi_centered, const RealGrid& measured);
/// Same, taking the measured amplitude sqrt(I) directly.
ComplexGrid ap_project_amplitude(const ComplexGrid& phi_centered, const RealGrid& measured_amp);

/// Sum over images of ||phi_h - phi_l||^2 in the spectrum domain.
double dataset_data_loss(const Problem& problem, const ComplexGrid& object_spectrum,
                         const ComplexGrid& pupil);
/// Sum over images of ||sqrt(I) - |F^-1{phi_l}| ||^2 in the spatial domain.
double dataset_amplitude_residual(const Problem& problem, const ComplexGrid& object_spectrum,
                                  const ComplexGrid& pupil);

/// Spatial high-res object o(r) represented by a (scaled) state spectrum.
ComplexGrid spatial_object(const OpticalConfig& cfg, const ComplexGrid& object_spectrum);
/// Inverse of spatial_object.
ComplexGrid object_to_spectrum(const OpticalConfig& cfg, const ComplexGrid& object);

}  // namespace fpm

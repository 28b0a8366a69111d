#include "fpm/recon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fpm {

std::size_t Problem::index_of_central() const {
  std::size_t best = 0;
  double best_r2 = INFINITY;
  for (std::size_t n = 0; n < config.illuminations.size(); ++n) {
    const auto& il = config.illuminations[n];
    const double r2 = il.sx * il.sx + il.sy * il.sy;
    if (r2 < best_r2) {
      best_r2 = r2;
      best = n;
    }
  }
  return best;
}

Problem Problem::from(const Dataset& ds) {
  validate(ds);
  Problem p;
  p.config = ds.config;
  p.intensities = ds.images;
  p.amplitudes.reserve(ds.images.size());
  for (const auto& img : ds.images) {
    RealGrid a(img.rows(), img.cols());
    for (std::size_t i = 0; i < img.size(); ++i) a[i] = std::sqrt(img[i]);
    p.amplitudes.push_back(std::move(a));
  }
  p.centers = window_centers(ds.config);
  p.mask = pupil_mask(ds.config);
  return p;
}

ReconState initial_state(const Problem& problem, PupilModel model, int zernike_modes) {
  const auto& cfg = problem.config;
  ReconState s;
  const ComplexGrid low = center_shift(dft2(to_complex(problem.amplitudes[problem.index_of_central()])));
  s.object_spectrum = ComplexGrid(cfg.high_rows(), cfg.high_cols());
  embed_window_into(s.object_spectrum, low, dc_index(s.object_spectrum));
  s.object_moments = {std::vector<double>(2 * s.object_spectrum.size()),
                      std::vector<double>(2 * s.object_spectrum.size()), 0};

  s.pupil_model = model;
  if (model == PupilModel::free) {
    s.pupil = to_complex(problem.mask);
    s.pupil_moments = {std::vector<double>(2 * s.pupil.size()), std::vector<double>(2 * s.pupil.size()), 0};
  } else {
    if (zernike_modes < 1) throw InvalidModeCount("Zernike mode count must be >= 1");
    s.pupil_amp = problem.mask;
    s.zern_coeffs.assign(static_cast<std::size_t>(zernike_modes), 0.0);
    s.pupil_moments = {std::vector<double>(s.pupil_amp.size()), std::vector<double>(s.pupil_amp.size()), 0};
    s.zern_moments = {std::vector<double>(s.zern_coeffs.size()), std::vector<double>(s.zern_coeffs.size()), 0};
  }
  return s;
}

ComplexGrid current_pupil(const ReconState& state, const ZernikeBasis* basis) {
  if (state.pupil_model == PupilModel::free) return state.pupil;
  if (basis == nullptr) throw InvalidModeCount("Zernike pupil requires a basis");
  return pupil_from_params(state.pupil_amp, state.zern_coeffs, *basis);
}

std::vector<std::size_t> traversal_order(const Problem& problem, Traversal traversal) {
  std::vector<std::size_t> order(problem.count());
  std::iota(order.begin(), order.end(), 0);
  if (traversal == Traversal::center_out) {
    const GridIndex dc{static_cast<std::ptrdiff_t>(problem.config.high_rows() / 2),
                       static_cast<std::ptrdiff_t>(problem.config.high_cols() / 2)};
    auto radius2 = [&](std::size_t n) {
      const auto dr = problem.centers[n].row - dc.row;
      const auto dc_ = problem.centers[n].col - dc.col;
      return dr * dr + dc_ * dc_;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return radius2(a) < radius2(b); });
  }
  return order;
}

ComplexGrid predicted_spectrum(const Problem& problem, const ComplexGrid& object_spectrum,
                               const ComplexGrid& pupil, std::size_t n) {
  return hadamard(crop_window(object_spectrum, problem.centers.at(n), pupil.rows(), pupil.cols()), pupil);
}

ComplexGrid ap_project_amplitude(const ComplexGrid& phi_centered, const RealGrid& measured_amp) {
  if (!phi_centered.same_shape(measured_amp)) throw DimensionMismatch("ap_project: shapes differ");
  ComplexGrid field = idft2(inverse_center_shift(phi_centered));
  for (std::size_t i = 0; i < field.size(); ++i) field[i] = measured_amp[i] * phase_unit(field[i]);
  return center_shift(dft2(field));
}

ComplexGrid ap_project(const ComplexGrid& phi_centered, const RealGrid& measured) {
  RealGrid amp(measured.rows(), measured.cols());
  for (std::size_t i = 0; i < measured.size(); ++i) amp[i] = std::sqrt(measured[i]);
  return ap_project_amplitude(phi_centered, amp);
}

double dataset_data_loss(const Problem& problem, const ComplexGrid& object_spectrum,
                         const ComplexGrid& pupil) {
  double total = 0.0;
  for (std::size_t n = 0; n < problem.count(); ++n) {
    const ComplexGrid phi_l = predicted_spectrum(problem, object_spectrum, pupil, n);
    const ComplexGrid phi_h = ap_project_amplitude(phi_l, problem.amplitudes[n]);
    for (std::size_t i = 0; i < phi_l.size(); ++i) total += std::norm(phi_h[i] - phi_l[i]);
  }
  return total;
}

double dataset_amplitude_residual(const Problem& problem, const ComplexGrid& object_spectrum,
                                  const ComplexGrid& pupil) {
  double total = 0.0;
  for (std::size_t n = 0; n < problem.count(); ++n) {
    const ComplexGrid field =
        idft2(inverse_center_shift(predicted_spectrum(problem, object_spectrum, pupil, n)));
    const auto& amp = problem.amplitudes[n];
    for (std::size_t i = 0; i < field.size(); ++i) {
      const double d = amp[i] - std::abs(field[i]);
      total += d * d;
    }
  }
  return total;
}

ComplexGrid spatial_object(const OpticalConfig& cfg, const ComplexGrid& object_spectrum) {
  ComplexGrid o = idft2(inverse_center_shift(object_spectrum));
  const double inv = 1.0 / cfg.energy_scale();
  for (auto& v : o) v *= inv;
  return o;
}

ComplexGrid object_to_spectrum(const OpticalConfig& cfg, const ComplexGrid& object) {
  ComplexGrid spec = center_shift(dft2(object));
  const double s = cfg.energy_scale();
  for (auto& v : spec) v *= s;
  return spec;
}

}  // namespace fpm

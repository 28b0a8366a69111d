#include "fpm/epie.hpp"

#include <algorithm>
#include <cmath>

namespace fpm {
namespace {

double max_norm(const ComplexGrid& g) {
  double m = 0.0;
  for (const auto& v : g) m = std::max(m, std::norm(v));
  return m;
}

}  // namespace

void epie_step(ReconState& state, const Problem& problem, const EpieConfig& cfg, std::size_t n) {
  if (state.pupil_model != PupilModel::free)
    throw InvalidConfig("ePIE operates on a free complex pupil");
  if (cfg.alpha < 0.0 || cfg.beta < 0.0) throw InvalidConfig("ePIE step sizes must be >= 0");

  ComplexGrid& pupil = state.pupil;
  const GridIndex center = problem.centers.at(n);
  const ComplexGrid window = crop_window(state.object_spectrum, center, pupil.rows(), pupil.cols());
  const ComplexGrid phi_l = hadamard(window, pupil);
  const ComplexGrid phi_h = ap_project_amplitude(phi_l, problem.amplitudes.at(n));

  const double pupil_peak = max_norm(pupil);
  if (pupil_peak == 0.0) throw DegeneratePupil("ePIE step with an all-zero pupil");

  if (cfg.alpha > 0.0) {
    ComplexGrid delta(pupil.rows(), pupil.cols());
    const double step = cfg.alpha / pupil_peak;
    for (std::size_t i = 0; i < delta.size(); ++i)
      delta[i] = step * std::conj(pupil[i]) * (phi_h[i] - phi_l[i]);
    embed_window_into(state.object_spectrum, delta, center, EmbedMode::add);
  }

  if (cfg.update_pupil && cfg.beta > 0.0) {
    const ComplexGrid& weight = cfg.pupil_rule == PupilRule::literal ? phi_h : window;
    const double peak = max_norm(weight);
    if (peak == 0.0) throw DegenerateField("ePIE pupil update with an all-zero field");
    const double step = cfg.beta / peak;
    for (std::size_t i = 0; i < pupil.size(); ++i)
      if (problem.mask[i] != 0.0) pupil[i] += step * std::conj(weight[i]) * (phi_h[i] - phi_l[i]);
  }
}

EpieResult run_epie(const Problem& problem, const EpieConfig& cfg) {
  if (cfg.iterations < 0) throw InvalidConfig("iterations must be >= 0");
  ReconState state = initial_state(problem, PupilModel::free, 0);
  std::vector<double> history{dataset_amplitude_residual(problem, state.object_spectrum, state.pupil)};
  const auto order = traversal_order(problem, cfg.traversal);
  for (int it = 0; it < cfg.iterations; ++it) {
    for (std::size_t n : order) epie_step(state, problem, cfg, n);
    const double residual = dataset_amplitude_residual(problem, state.object_spectrum, state.pupil);
    if (!std::isfinite(residual)) throw NumericalError("ePIE residual became non-finite");
    history.push_back(residual);
  }
  return {spatial_object(problem.config, state.object_spectrum), state.pupil, std::move(history),
          std::move(state)};
}

EpieResult run_epie(const Dataset& ds, const EpieConfig& cfg) {
  return run_epie(Problem::from(ds), cfg);
}

}  // namespace fpm

#pragma once

#include <vector>

#include "fpm/dataset.hpp"
#include "fpm/recon.hpp"

namespace fpm {

/// Pupil correction term. `literal` multiplies the residual by
/// conj(phi_h)/max|phi_h|^2; `conventional` uses the object window
/// conj(O_w)/max|O_w|^2 as in standard embedded pupil recovery.
enum class PupilRule { literal, conventional };

struct EpieConfig {
  int iterations = 20;
  double alpha = 1.0;
  double beta = 1.0;
  bool update_pupil = true;
  Traversal traversal = Traversal::center_out;
  PupilRule pupil_rule = PupilRule::literal;
};

/// One alternating-projection update for image n, in place. The object
/// window receives alpha * conj(C)/max|C|^2 . (phi_h - phi_l); the pupil
/// (restricted to its support) receives the configured correction.
void epie_step(ReconState& state, const Problem& problem, const EpieConfig& cfg, std::size_t n);

struct EpieResult {
  ComplexGrid object;  // spatial high-res object
  ComplexGrid pupil;
  /// Entry 0 is the initial residual; entry i follows iteration i.
  std::vector<double> residual_history;
  ReconState state;
};

EpieResult run_epie(const Problem& problem, const EpieConfig& cfg);
EpieResult run_epie(const Dataset& ds, const EpieConfig& cfg);

}  // namespace fpm

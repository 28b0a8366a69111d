#pragma once

#include <cstdint>
#include <vector>

#include "fpm/adam.hpp"
#include "fpm/dataset.hpp"
#include "fpm/optics.hpp"
#include "fpm/recon.hpp"

namespace fpm {

struct PgnnConfig {
  int stages = 10;  // 2M; odd stages train the object, even stages the pupil
  int epochs_per_stage = 5;
  double lr_object = 0.3;
  double lr_pupil_amp = 1e-3;  // also the rate of the free complex pupil
  double lr_zern = 1e-2;
  /// Each group's rates are multiplied by lr_decay^k, k = epochs that group has already trained.
  double lr_decay = 0.88;
  double tv_alpha1 = 0.0;  // amplitude TV weight
  double tv_alpha2 = 0.0;  // phase TV weight
  double tv_eta = 1.0;
  int zernike_modes = 9;
  bool use_zernike = true;
  /// false: every stage trains the object and the pupil stays at its initial value.
  bool alternate = true;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  Traversal traversal = Traversal::center_out;
  std::uint64_t seed = 0;
};

void validate(const PgnnConfig& cfg);

enum class ParamGroup { object, pupil };

/// Result of one varying-angle illumination unit.
struct VaiuOutput {
  ComplexGrid phi_l;  // crop(O, center_n) . C
  ComplexGrid phi_h;  // amplitude-projected target, treated as a constant
  double data_loss = 0.0;
};

/// Gradients with respect to real parameters. Complex blocks pack
/// dL/dRe + i dL/dIm per element.
struct Gradients {
  ComplexGrid object;      // full high-res spectrum
  ComplexGrid pupil;       // free pupil model
  RealGrid pupil_amp;      // Zernike pupil model
  std::vector<double> zern;
};

struct PgnnResult {
  ComplexGrid object;  // spatial high-res object
  ComplexGrid pupil;
  /// Entry 0 evaluates the initialization; entry e follows epoch e.
  std::vector<double> loss_history;
  ReconState state;
};

/// Alternating-stage Adam solver over a fixed differentiable forward model.
class PgnnSolver {
 public:
  PgnnSolver(const Problem& problem, PgnnConfig cfg);

  const Problem& problem() const { return *problem_; }
  const PgnnConfig& config() const { return cfg_; }
  const ZernikeBasis& basis() const { return basis_; }

  ReconState initial_state() const;
  ComplexGrid pupil(const ReconState& state) const;

  VaiuOutput vaiu_forward(const ReconState& state, std::size_t n) const;

  struct TvTerms {
    double amplitude = 0.0;
    double phase = 0.0;
  };
  /// TV of the amplitude and wrapped phase of the current spatial object.
  TvTerms tv_terms(const ReconState& state) const;

  double total_loss(const ReconState& state, std::size_t n) const;

  Gradients gradients(const ReconState& state, std::size_t n) const;
  Gradients gradients(const ReconState& state, std::size_t n, ParamGroup group) const;

  /// Sum over all images of total_loss at the current state.
  double epoch_loss(const ReconState& state) const;

  bool is_object_stage(int stage_index) const;
  /// Runs stage `stage_index` (1-based); returns the loss after each epoch.
  std::vector<double> run_stage(ReconState& state, int stage_index) const;

  PgnnResult run() const;

 private:
  void step_group(ReconState& state, std::size_t n, ParamGroup group, double lr_scale) const;
  int prior_group_stages(int stage_index) const;
  void add_tv_gradient(const ReconState& state, ComplexGrid& grad_object) const;

  const Problem* problem_;
  PgnnConfig cfg_;
  ZernikeBasis basis_;
  std::vector<std::size_t> order_;
};

PgnnResult run_pgnn(const Dataset& ds, const PgnnConfig& cfg);

}  // namespace fpm

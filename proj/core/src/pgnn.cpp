#include "fpm/pgnn.hpp"

#include <cmath>

#include "fpm/tv.hpp"

namespace fpm {
namespace {

// Amplitude floor for the |o| and arg(o) derivatives.
constexpr double kAmplitudeGuard = 1e-12;

void require_finite(const ComplexGrid& g, const char* what) {
  if (!all_finite(g)) throw NumericalError(std::string("non-finite values in ") + what);
}

}  // namespace

void validate(const PgnnConfig& cfg) {
  if (cfg.stages < 0) throw InvalidConfig("stages must be >= 0");
  if (cfg.epochs_per_stage < 1) throw InvalidConfig("epochs_per_stage must be >= 1");
  if (!(cfg.lr_object > 0.0 && cfg.lr_pupil_amp > 0.0 && cfg.lr_zern > 0.0))
    throw InvalidConfig("learning rates must be > 0");
  if (!(cfg.lr_decay > 0.0 && cfg.lr_decay <= 1.0)) throw InvalidConfig("lr_decay must lie in (0, 1]");
  if (!(cfg.tv_alpha1 >= 0.0 && cfg.tv_alpha2 >= 0.0)) throw InvalidConfig("TV weights must be >= 0");
  if (!(cfg.tv_eta > 0.0)) throw InvalidConfig("tv_eta must be > 0");
  if (cfg.use_zernike && cfg.zernike_modes < 1)
    throw InvalidModeCount("Zernike mode count must be >= 1");
  if (!(cfg.adam_beta1 > 0.0 && cfg.adam_beta1 < 1.0 && cfg.adam_beta2 > 0.0 && cfg.adam_beta2 < 1.0))
    throw InvalidConfig("Adam betas must lie in (0, 1)");
  if (!(cfg.adam_eps > 0.0)) throw InvalidConfig("adam_eps must be > 0");
}

PgnnSolver::PgnnSolver(const Problem& problem, PgnnConfig cfg)
    : problem_(&problem), cfg_(cfg) {
  validate(cfg_);
  if (cfg_.use_zernike) basis_ = zernike_basis(problem.config, cfg_.zernike_modes);
  order_ = traversal_order(problem, cfg_.traversal);
}

ReconState PgnnSolver::initial_state() const {
  return fpm::initial_state(*problem_, cfg_.use_zernike ? PupilModel::zernike : PupilModel::free,
                            cfg_.zernike_modes);
}

ComplexGrid PgnnSolver::pupil(const ReconState& state) const {
  return current_pupil(state, cfg_.use_zernike ? &basis_ : nullptr);
}

VaiuOutput PgnnSolver::vaiu_forward(const ReconState& state, std::size_t n) const {
  VaiuOutput out;
  out.phi_l = predicted_spectrum(*problem_, state.object_spectrum, pupil(state), n);
  out.phi_h = ap_project_amplitude(out.phi_l, problem_->amplitudes.at(n));
  for (std::size_t i = 0; i < out.phi_l.size(); ++i) out.data_loss += std::norm(out.phi_h[i] - out.phi_l[i]);
  return out;
}

PgnnSolver::TvTerms PgnnSolver::tv_terms(const ReconState& state) const {
  TvTerms t;
  if (cfg_.tv_alpha1 == 0.0 && cfg_.tv_alpha2 == 0.0) return t;
  const ComplexGrid o = spatial_object(problem_->config, state.object_spectrum);
  if (cfg_.tv_alpha1 != 0.0) t.amplitude = tv_value(amplitude(o), cfg_.tv_eta);
  if (cfg_.tv_alpha2 != 0.0) t.phase = tv_value(phase_angle(o), cfg_.tv_eta);
  return t;
}

double PgnnSolver::total_loss(const ReconState& state, std::size_t n) const {
  const TvTerms tv = tv_terms(state);
  return vaiu_forward(state, n).data_loss + cfg_.tv_alpha1 * tv.amplitude + cfg_.tv_alpha2 * tv.phase;
}

double PgnnSolver::epoch_loss(const ReconState& state) const {
  const TvTerms tv = tv_terms(state);
  const double data = dataset_data_loss(*problem_, state.object_spectrum, pupil(state));
  return data + static_cast<double>(problem_->count()) *
                    (cfg_.tv_alpha1 * tv.amplitude + cfg_.tv_alpha2 * tv.phase);
}

void PgnnSolver::add_tv_gradient(const ReconState& state, ComplexGrid& grad_object) const {
  if (cfg_.tv_alpha1 == 0.0 && cfg_.tv_alpha2 == 0.0) return;
  const auto& cfg = problem_->config;
  const ComplexGrid o = spatial_object(cfg, state.object_spectrum);
  RealGrid ga(o.rows(), o.cols());
  RealGrid gp(o.rows(), o.cols());
  if (cfg_.tv_alpha1 != 0.0) ga = tv_grad(amplitude(o), cfg_.tv_eta);
  if (cfg_.tv_alpha2 != 0.0) gp = tv_grad(phase_angle(o), cfg_.tv_eta);

  // Chain through |o| and arg(o): d|o| -> o/|o|, d arg(o) -> i o/|o|^2.
  ComplexGrid g_spatial(o.rows(), o.cols());
  for (std::size_t i = 0; i < o.size(); ++i) {
    const double a = std::max(std::abs(o[i]), kAmplitudeGuard);
    const complex unit = o[i] / a;
    g_spatial[i] = cfg_.tv_alpha1 * ga[i] * unit + cfg_.tv_alpha2 * gp[i] * complex{0.0, 1.0} * unit / a;
  }
  // o = idft2(ishift(O)) / s is linear; its adjoint is center_shift(dft2(.)) / (s N).
  const ComplexGrid back = center_shift(dft2(g_spatial));
  const double norm = 1.0 / (cfg.energy_scale() * static_cast<double>(o.size()));
  for (std::size_t i = 0; i < back.size(); ++i) grad_object[i] += norm * back[i];
}

Gradients PgnnSolver::gradients(const ReconState& state, std::size_t n) const {
  Gradients obj = gradients(state, n, ParamGroup::object);
  Gradients pup = gradients(state, n, ParamGroup::pupil);
  pup.object = std::move(obj.object);
  return pup;
}

Gradients PgnnSolver::gradients(const ReconState& state, std::size_t n, ParamGroup group) const {
  const ComplexGrid c = pupil(state);
  const GridIndex center = problem_->centers.at(n);
  const ComplexGrid window = crop_window(state.object_spectrum, center, c.rows(), c.cols());
  const ComplexGrid phi_l = hadamard(window, c);
  const ComplexGrid phi_h = ap_project_amplitude(phi_l, problem_->amplitudes.at(n));

  // L = sum |phi_l - phi_h|^2 with phi_h held fixed; dL/dRe + i dL/dIm of
  // phi_l is 2 (phi_l - phi_h).
  ComplexGrid residual(c.rows(), c.cols());
  for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = 2.0 * (phi_l[i] - phi_h[i]);

  Gradients g;
  if (group == ParamGroup::object) {
    g.object = ComplexGrid(state.object_spectrum.rows(), state.object_spectrum.cols());
    ComplexGrid gw(c.rows(), c.cols());
    for (std::size_t i = 0; i < gw.size(); ++i) gw[i] = std::conj(c[i]) * residual[i];
    embed_window_into(g.object, gw, center, EmbedMode::add);
    add_tv_gradient(state, g.object);
    return g;
  }

  ComplexGrid gc(c.rows(), c.cols());
  for (std::size_t i = 0; i < gc.size(); ++i)
    gc[i] = problem_->mask[i] != 0.0 ? std::conj(window[i]) * residual[i] : complex{};

  if (state.pupil_model == PupilModel::free) {
    g.pupil = std::move(gc);
    return g;
  }

  // C = A exp(i theta): dL/dA = Re(conj(G) e^{i theta}),
  // dL/dc_l = sum_k Re(conj(G) i Z_l C) = -sum_k Z_l Im(conj(G) C).
  const RealGrid theta = zernike_phase(state.zern_coeffs, basis_);
  g.pupil_amp = RealGrid(c.rows(), c.cols());
  for (std::size_t i = 0; i < gc.size(); ++i)
    g.pupil_amp[i] = std::real(std::conj(gc[i]) * std::polar(1.0, theta[i]));
  g.zern.assign(basis_.count(), 0.0);
  for (std::size_t l = 0; l < basis_.count(); ++l) {
    const auto& z = basis_.mode(l);
    double acc = 0.0;
    for (std::size_t i = 0; i < gc.size(); ++i)
      if (z[i] != 0.0) acc += z[i] * std::imag(std::conj(gc[i]) * c[i]);
    g.zern[l] = -acc;
  }
  return g;
}

bool PgnnSolver::is_object_stage(int stage_index) const {
  return !cfg_.alternate || stage_index % 2 == 1;
}

void PgnnSolver::step_group(ReconState& state, std::size_t n, ParamGroup group,
                            double lr_scale) const {
  Gradients g = gradients(state, n, group);
  AdamHyper hyper{0.0, cfg_.adam_beta1, cfg_.adam_beta2, cfg_.adam_eps};
  if (group == ParamGroup::object) {
    hyper.lr = lr_scale * cfg_.lr_object;
    adam_step(real_view(state.object_spectrum), real_view(g.object), state.object_moments, hyper);
    require_finite(state.object_spectrum, "object spectrum");
    return;
  }
  const auto& mask = problem_->mask;
  if (state.pupil_model == PupilModel::free) {
    hyper.lr = lr_scale * cfg_.lr_pupil_amp;
    adam_step(real_view(state.pupil), real_view(g.pupil), state.pupil_moments, hyper);
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i] == 0.0) state.pupil[i] = complex{};
    require_finite(state.pupil, "pupil");
    return;
  }
  hyper.lr = lr_scale * cfg_.lr_pupil_amp;
  adam_step(state.pupil_amp.values(), g.pupil_amp.values(), state.pupil_moments, hyper);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i] == 0.0) state.pupil_amp[i] = 0.0;
  hyper.lr = lr_scale * cfg_.lr_zern;
  adam_step(state.zern_coeffs, g.zern, state.zern_moments, hyper);
  if (!all_finite(state.pupil_amp)) throw NumericalError("non-finite values in pupil amplitude");
  for (double v : state.zern_coeffs)
    if (!std::isfinite(v)) throw NumericalError("non-finite Zernike coefficient");
}

int PgnnSolver::prior_group_stages(int stage_index) const {
  if (!cfg_.alternate) return stage_index - 1;
  return stage_index % 2 == 1 ? (stage_index - 1) / 2 : stage_index / 2 - 1;
}

std::vector<double> PgnnSolver::run_stage(ReconState& state, int stage_index) const {
  const ParamGroup group = is_object_stage(stage_index) ? ParamGroup::object : ParamGroup::pupil;
  const int trained = prior_group_stages(stage_index) * cfg_.epochs_per_stage;
  std::vector<double> losses;
  losses.reserve(static_cast<std::size_t>(cfg_.epochs_per_stage));
  for (int epoch = 0; epoch < cfg_.epochs_per_stage; ++epoch) {
    const double lr_scale = std::pow(cfg_.lr_decay, trained + epoch);
    for (std::size_t n : order_) step_group(state, n, group, lr_scale);
    const double loss = epoch_loss(state);
    if (!std::isfinite(loss)) throw NumericalError("epoch loss became non-finite");
    losses.push_back(loss);
  }
  return losses;
}

PgnnResult PgnnSolver::run() const {
  ReconState state = initial_state();
  std::vector<double> history{epoch_loss(state)};
  for (int stage = 1; stage <= cfg_.stages; ++stage) {
    const auto losses = run_stage(state, stage);
    history.insert(history.end(), losses.begin(), losses.end());
  }
  return {spatial_object(problem_->config, state.object_spectrum), pupil(state), std::move(history),
          std::move(state)};
}

PgnnResult run_pgnn(const Dataset& ds, const PgnnConfig& cfg) {
  const Problem problem = Problem::from(ds);
  return PgnnSolver(problem, cfg).run();
}

}  // namespace fpm

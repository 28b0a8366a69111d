#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "fpm/dataset_io.hpp"
#include "fpm/epie.hpp"
#include "fpm/forward_sim.hpp"
#include "fpm/image_export.hpp"
#include "fpm/metrics.hpp"
#include "fpm/pgnn.hpp"

namespace fpm::cli {
namespace {

namespace fs = std::filesystem;

struct SimulateArgs {
  std::string truth_amp;
  std::string truth_phase;
  std::string config;
  double defocus_um = 0.0;
  double noise_sigma = 0.0;
  std::optional<double> saturation;
  std::uint64_t seed = 0;
  std::string out;
};

struct ReconstructArgs {
  std::string dataset;
  std::string method = "pgnn";
  PgnnConfig pgnn;
  EpieConfig epie;
  std::string zernike;
  std::string pupil_rule = "literal";
  bool fixed_pupil = false;
  std::string out;
};

struct PhantomArgs {
  std::size_t rows = 128;
  std::size_t cols = 128;
  std::uint64_t seed = 7;
  std::string out;
};

struct GridConfigArgs {
  OpticalConfig config;
  int leds = 15;
  double step = 0.05;
  std::string out;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string history_csv(const std::vector<double>& history) {
  std::string text;
  for (std::size_t e = 0; e < history.size(); ++e) text += fmt::format("{},{}\n", e, history[e]);
  return text;
}

void write_result(const fs::path& dir, const ComplexGrid& object, const ComplexGrid& pupil,
                  const std::vector<double>& history) {
  if (!all_finite(object) || !all_finite(pupil)) throw NumericalError("reconstruction produced NaN");
  make_dir(dir);
  write_field(object, dir / "object.fpc");
  write_field(pupil, dir / "pupil.fpc");
  export_component(object, dir / "amplitude.pgm", Component::amp);
  export_component(object, dir / "phase.pgm", Component::phase);
  write_text(dir / "loss.csv", history_csv(history));
}

int simulate(const SimulateArgs& a, std::ostream& out) {
  const Manifest m = read_manifest(a.config, false);
  const RealGrid amp = read_intensity(a.truth_amp);
  const RealGrid phase = read_intensity(a.truth_phase);
  if (!amp.same_shape(phase)) throw DimensionMismatch("truth amplitude and phase dims differ");

  GroundTruth gt{polar_grid(amp, phase), defocused_pupil(m.config, a.defocus_um)};
  SimOptions opts;
  opts.gaussian_noise_sigma = a.noise_sigma;
  opts.saturation = a.saturation ? a.saturation : m.saturation;
  opts.seed = a.seed;
  const Dataset ds = simulate_dataset(gt, m.config, opts);

  write_dataset(ds, a.out);
  write_field(gt.object, fs::path(a.out) / "truth.fpc");
  write_field(gt.pupil, fs::path(a.out) / "truth_pupil.fpc");
  fmt::print(out, "wrote {} captures to {}\n", ds.images.size(), a.out);
  return kExitOk;
}

int reconstruct(ReconstructArgs a, std::ostream& out) {
  const Dataset ds = read_dataset(a.dataset);
  const Problem problem = Problem::from(ds);
  const fs::path dir = a.out;

  if (a.method == "epie") {
    a.epie.update_pupil = !a.fixed_pupil;
    a.epie.pupil_rule = a.pupil_rule == "conventional" ? PupilRule::conventional : PupilRule::literal;
    const EpieResult r = run_epie(problem, a.epie);
    write_result(dir, r.object, r.pupil, r.residual_history);
    fmt::print(out, "epie: {} iterations, residual {} -> {}\n", a.epie.iterations,
               r.residual_history.front(), r.residual_history.back());
    return kExitOk;
  }

  if (a.zernike == "off") {
    a.pgnn.use_zernike = false;
  } else if (!a.zernike.empty()) {
    try {
      std::size_t used = 0;
      a.pgnn.zernike_modes = std::stoi(a.zernike, &used);
      if (used != a.zernike.size()) throw std::invalid_argument(a.zernike);
    } catch (const std::logic_error&) {
      throw InvalidConfig("--zernike expects a mode count or 'off'");
    }
  }
  const PgnnResult r = PgnnSolver(problem, a.pgnn).run();
  write_result(dir, r.object, r.pupil, r.loss_history);
  if (a.pgnn.use_zernike) {
    std::string text;
    for (std::size_t l = 0; l < r.state.zern_coeffs.size(); ++l)
      text += fmt::format("{},{}\n", l + 1, r.state.zern_coeffs[l]);
    write_text(dir / "zernike.csv", text);
  }
  fmt::print(out, "pgnn: {} stages x {} epochs, loss {} -> {}\n", a.pgnn.stages,
             a.pgnn.epochs_per_stage, r.loss_history.front(), r.loss_history.back());
  return kExitOk;
}

int metrics_cmd(const std::string& recon, const std::string& truth, std::ostream& out) {
  const Metrics m = metrics(read_field(recon), read_field(truth));
  fmt::print(out, "{},{},{}\n", m.rel_err_complex, m.rel_err_amp, m.psnr_amp);
  return kExitOk;
}

int inspect(const std::string& dataset, std::ostream& out) {
  const Dataset ds = read_dataset(dataset);
  const auto& c = ds.config;
  fmt::print(out, "wavelength_um {}\nna {}\nmagnification {}\ncamera_pixel_um {}\n", c.wavelength_um,
             c.na, c.magnification, c.camera_pixel_um);
  fmt::print(out, "capture {}x{}\nupsample {} -> {}x{}\n", c.low_rows, c.low_cols, c.upsample,
             c.high_rows(), c.high_cols());
  if (ds.saturation)
    fmt::print(out, "saturation {}\n", *ds.saturation);
  else
    fmt::print(out, "saturation none\n");
  fmt::print(out, "images {}\n", ds.images.size());
  fmt::print(out, "index,sx,sy,min,max,mean\n");
  for (std::size_t n = 0; n < ds.images.size(); ++n) {
    const auto& img = ds.images[n];
    const auto [lo, hi] = std::minmax_element(img.begin(), img.end());
    double sum = 0.0;
    for (double v : img) sum += v;
    fmt::print(out, "{},{},{},{},{},{}\n", n, c.illuminations[n].sx, c.illuminations[n].sy, *lo, *hi,
               sum / static_cast<double>(img.size()));
  }
  return kExitOk;
}

int phantom(const PhantomArgs& a, std::ostream& out) {
  const Phantom p = make_phantom(a.rows, a.cols, a.seed);
  make_dir(a.out);
  write_intensity(p.amplitude, fs::path(a.out) / "amp.fpd");
  write_intensity(p.phase, fs::path(a.out) / "phase.fpd");
  fmt::print(out, "wrote {}x{} phantom to {}\n", a.rows, a.cols, a.out);
  return kExitOk;
}

int grid_config(GridConfigArgs a, std::ostream& out) {
  a.config.illuminations = led_grid(a.leds, a.step);
  validate(a.config);
  const Manifest m{a.config, std::nullopt, {}};
  if (a.out.empty() || a.out == "-") {
    out << format_manifest(m);
  } else {
    write_text(a.out, format_manifest(m));
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier ptychography simulation and reconstruction"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "simulate captures from a ground-truth object");
  sim_cmd->add_option("--truth-amp", sim.truth_amp, "FPD1 amplitude of the object")->required();
  sim_cmd->add_option("--truth-phase", sim.truth_phase, "FPD1 phase of the object (rad)")->required();
  sim_cmd->add_option("--config", sim.config, "manifest giving the geometry")->required();
  sim_cmd->add_option("--defocus-um", sim.defocus_um, "defocus distance");
  sim_cmd->add_option("--noise-sigma", sim.noise_sigma, "additive Gaussian noise sigma");
  sim_cmd->add_option("--saturation", sim.saturation, "clip level (overrides the manifest)");
  sim_cmd->add_option("--seed", sim.seed, "noise seed");
  sim_cmd->add_option("--out", sim.out, "output dataset directory")->required();

  ReconstructArgs rec;
  auto* rec_cmd = app.add_subcommand("reconstruct", "reconstruct a dataset");
  rec_cmd->add_option("--dataset", rec.dataset, "dataset directory")->required();
  rec_cmd->add_option("--method", rec.method, "pgnn or epie")
      ->check(CLI::IsMember({"pgnn", "epie"}))
      ->capture_default_str();
  rec_cmd->add_option("--stages", rec.pgnn.stages, "pgnn stages")->capture_default_str();
  rec_cmd->add_option("--epochs", rec.pgnn.epochs_per_stage, "pgnn epochs per stage")
      ->capture_default_str();
  rec_cmd->add_option("--iterations", rec.epie.iterations, "epie iterations")->capture_default_str();
  rec_cmd->add_option("--tv-alpha1", rec.pgnn.tv_alpha1, "amplitude TV weight")->capture_default_str();
  rec_cmd->add_option("--tv-alpha2", rec.pgnn.tv_alpha2, "phase TV weight")->capture_default_str();
  rec_cmd->add_option("--zernike", rec.zernike, "Zernike mode count, or off for a free pupil");
  rec_cmd->add_option("--lr-object", rec.pgnn.lr_object, "object learning rate")->capture_default_str();
  rec_cmd->add_option("--lr-pupil", rec.pgnn.lr_pupil_amp, "pupil learning rate")->capture_default_str();
  rec_cmd->add_option("--lr-zern", rec.pgnn.lr_zern, "Zernike learning rate")->capture_default_str();
  rec_cmd->add_option("--lr-decay", rec.pgnn.lr_decay, "per-epoch learning-rate factor")
      ->capture_default_str();
  rec_cmd->add_option("--seed", rec.pgnn.seed, "seed (the engines are deterministic)");
  rec_cmd->add_option("--pupil-rule", rec.pupil_rule, "epie pupil correction")
      ->check(CLI::IsMember({"literal", "conventional"}))
      ->capture_default_str();
  rec_cmd->add_flag("--fixed-pupil", rec.fixed_pupil, "epie: keep the pupil fixed");
  rec_cmd->add_option("--out", rec.out, "output directory")->required();

  std::string recon_path;
  std::string truth_path;
  auto* met_cmd = app.add_subcommand("metrics", "compare a reconstruction with the truth");
  met_cmd->add_option("--recon", recon_path, "FPC1 reconstruction")->required();
  met_cmd->add_option("--truth", truth_path, "FPC1 ground truth")->required();

  std::string inspect_path;
  auto* ins_cmd = app.add_subcommand("inspect", "summarize a dataset");
  ins_cmd->add_option("--dataset", inspect_path, "dataset directory")->required();

  PhantomArgs ph;
  auto* ph_cmd = app.add_subcommand("phantom", "write a synthetic amplitude/phase object");
  ph_cmd->add_option("--rows", ph.rows)->capture_default_str();
  ph_cmd->add_option("--cols", ph.cols)->capture_default_str();
  ph_cmd->add_option("--seed", ph.seed)->capture_default_str();
  ph_cmd->add_option("--out", ph.out, "output directory")->required();

  GridConfigArgs gc;
  auto* gc_cmd = app.add_subcommand("grid-config", "write a manifest for a square LED grid");
  gc_cmd->add_option("--leds", gc.leds, "LEDs per side")->capture_default_str();
  gc_cmd->add_option("--step", gc.step, "direction-sine spacing")->capture_default_str();
  gc_cmd->add_option("--wavelength-um", gc.config.wavelength_um)->capture_default_str();
  gc_cmd->add_option("--na", gc.config.na)->capture_default_str();
  gc_cmd->add_option("--magnification", gc.config.magnification)->capture_default_str();
  gc_cmd->add_option("--camera-pixel-um", gc.config.camera_pixel_um)->capture_default_str();
  gc_cmd->add_option("--upsample", gc.config.upsample)->capture_default_str();
  gc_cmd->add_option("--rows", gc.config.low_rows)->capture_default_str();
  gc_cmd->add_option("--cols", gc.config.low_cols)->capture_default_str();
  gc_cmd->add_option("--out", gc.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitOther;
  }

  try {
    if (*sim_cmd) return simulate(sim, out);
    if (*rec_cmd) return reconstruct(rec, out);
    if (*met_cmd) return metrics_cmd(recon_path, truth_path, out);
    if (*ins_cmd) return inspect(inspect_path, out);
    if (*ph_cmd) return phantom(ph, out);
    if (*gc_cmd) return grid_config(gc, out);
  } catch (const FormatError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFormat;
  } catch (const ManifestError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFormat;
  } catch (const NumericalError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace fpm::cli

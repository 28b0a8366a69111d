#include <random>

#include <benchmark/benchmark.h>

#include "fpm/epie.hpp"
#include "fpm/forward_sim.hpp"
#include "fpm/pgnn.hpp"

namespace {

using namespace fpm;

OpticalConfig paper_geometry() {
  OpticalConfig cfg;
  cfg.illuminations = led_grid(15, 0.05);
  return cfg;
}

const Problem& paper_problem() {
  static const Problem problem = [] {
    const OpticalConfig cfg = paper_geometry();
    const Phantom p = make_phantom(cfg.high_rows(), cfg.high_cols(), 7);
    const GroundTruth gt{polar_grid(p.amplitude, p.phase), defocused_pupil(cfg, 50.0)};
    return Problem::from(simulate_dataset(gt, cfg, {}));
  }();
  return problem;
}

void BM_dft2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  ComplexGrid x(n, n);
  for (auto& v : x) v = {g(rng), g(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(dft2(x));
}
BENCHMARK(BM_dft2)->Arg(32)->Arg(128)->Arg(256);

void BM_pgnn_gradients(benchmark::State& state) {
  const Problem& problem = paper_problem();
  PgnnConfig cfg;
  cfg.tv_alpha1 = cfg.tv_alpha2 = state.range(0) ? 1e-3 : 0.0;
  const PgnnSolver solver(problem, cfg);
  const ReconState st = solver.initial_state();
  const std::size_t n = problem.count() / 3;
  for (auto _ : state) benchmark::DoNotOptimize(solver.gradients(st, n));
}
BENCHMARK(BM_pgnn_gradients)->Arg(0)->Arg(1);

void BM_pgnn_epoch(benchmark::State& state) {
  const Problem& problem = paper_problem();
  PgnnConfig cfg;
  cfg.stages = 1;
  cfg.epochs_per_stage = 1;
  const PgnnSolver solver(problem, cfg);
  for (auto _ : state) {
    ReconState st = solver.initial_state();
    benchmark::DoNotOptimize(solver.run_stage(st, 1));
  }
}
BENCHMARK(BM_pgnn_epoch)->Unit(benchmark::kMillisecond);

void BM_epie_step(benchmark::State& state) {
  const Problem& problem = paper_problem();
  ReconState st = initial_state(problem, PupilModel::free, 0);
  const std::size_t n = problem.count() / 3;
  for (auto _ : state) epie_step(st, problem, EpieConfig{}, n);
}
BENCHMARK(BM_epie_step);

}  // namespace
BENCHMARK_MAIN();

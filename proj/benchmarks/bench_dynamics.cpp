#include <benchmark/benchmark.h>

#include <random>

#include "altgd/analysis.hpp"
#include "altgd/dynamics.hpp"
#include "altgd/metrics.hpp"

namespace {

using namespace altgd;

GameInstance make_game(std::size_t k) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vec entries(k * k);
  for (double& e : entries) e = dist(rng);
  PayoffMatrix a(k, k, entries);
  double cap = 2.0 / spectral_norm(a);
  Vec x1(k), x2(k);
  for (double& v : x1) v = dist(rng);
  for (double& v : x2) v = dist(rng);
  return GameInstance(std::move(a), StepSizes(0.4 * cap, 0.4 * cap),
                      JointState{std::move(x1), std::move(x2), 0, Stage::Full});
}

void BM_AltStep(benchmark::State& state) {
  GameInstance g = make_game(static_cast<std::size_t>(state.range(0)));
  JointState s = g.initial;
  for (auto _ : state) {
    s = alt_gd_step(g, s);
    benchmark::DoNotOptimize(s.x1.data());
  }
}
BENCHMARK(BM_AltStep)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

void BM_Rollout(benchmark::State& state) {
  GameInstance g = make_game(4);
  for (auto _ : state) {
    Trajectory traj = rollout(g, Mode::Alt, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(traj.states.data());
  }
}
BENCHMARK(BM_Rollout)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SpectralNorm(benchmark::State& state) {
  GameInstance g = make_game(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_norm(g.matrix));
  }
}
BENCHMARK(BM_SpectralNorm)->Arg(2)->Arg(8)->Arg(32);

void BM_PerturbedEnergy(benchmark::State& state) {
  GameInstance g = make_game(16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(perturbed_energy(g, g.initial));
  }
}
BENCHMARK(BM_PerturbedEnergy);

}  // namespace

BENCHMARK_MAIN();

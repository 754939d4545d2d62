#include <benchmark/benchmark.h>

#include <boost/random/normal_distribution.hpp>

#include "bandfill/forecast.hpp"
#include "bandfill/lab.hpp"
#include "bandfill/oracle.hpp"
#include "bandfill/recover.hpp"

namespace {

using bandfill::Index;

bandfill::Series noise(const bandfill::IndexWindow& w, std::uint64_t seed) {
  bandfill::Rng rng(seed);
  boost::random::normal_distribution<double> normal;
  bandfill::Series s(w);
  for (double& v : s.values()) {
    v = normal(rng);
  }
  return s;
}

std::vector<Index> gap(std::int64_t m) {
  std::vector<Index> out;
  for (std::int64_t t = 1; t <= m; ++t) {
    out.push_back(Index{t, 0});
  }
  return out;
}

const bandfill::Band kBand(bandfill::BandLimit::fraction_of_pi(0.25));

void BM_Assemble(benchmark::State& state) {
  const auto w = bandfill::IndexWindow::one_d(-state.range(0), state.range(0));
  const auto mask = bandfill::make_mask(w, gap(12));
  const auto x = noise(w, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bandfill::assemble(x, mask, kBand));
  }
}
BENCHMARK(BM_Assemble)->Arg(60)->Arg(500)->Arg(5000);

void BM_SolveDirect(benchmark::State& state) {
  const auto w = bandfill::IndexWindow::one_d(-200, 200);
  const auto op = bandfill::assemble(noise(w, 2), bandfill::make_mask(w, gap(state.range(0))), kBand);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bandfill::solve_direct(op, 0.01));
  }
}
BENCHMARK(BM_SolveDirect)->Arg(12)->Arg(40)->Arg(160);

void BM_SolveNeumann(benchmark::State& state) {
  const auto w = bandfill::IndexWindow::one_d(-60, 60);
  const auto op = bandfill::assemble(noise(w, 3), bandfill::make_mask(w, gap(12)), kBand);
  const double rho = static_cast<double>(state.range(0)) / 1000.0;
  bandfill::SolverConfig config;
  config.method = bandfill::SolveMethod::neumann;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bandfill::solve_neumann(op, rho, config));
  }
}
BENCHMARK(BM_SolveNeumann)->Arg(0)->Arg(10)->Arg(100);

void BM_Forecast(benchmark::State& state) {
  bandfill::ForecastSpec spec{noise(bandfill::IndexWindow::one_d(-60, 0), 4)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bandfill::forecast(spec));
  }
}
BENCHMARK(BM_Forecast);

void BM_Oracle(benchmark::State& state) {
  const auto w = bandfill::IndexWindow::one_d(-state.range(0), state.range(0));
  const bandfill::RecoveryProblem p{noise(w, 5), bandfill::make_mask(w, gap(5)), kBand, 0.1,
                                    bandfill::SolverConfig{}};
  const int grid = bandfill::oracle_default_grid(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bandfill::oracle_recover(p, grid));
  }
}
BENCHMARK(BM_Oracle)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

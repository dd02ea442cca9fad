// Copyright 2026 The stinc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "stinc/fejer_riesz.hpp"
#include "stinc/interpolate.hpp"
#include "stinc/minimax.hpp"
#include "stinc/oracle.hpp"

namespace {

using namespace stinc;

void BM_FourierCoefficients(benchmark::State& state) {
  const IncrementSpec s{1, 1};
  const auto m = DensityModel::from_increment_density(s, [](double l) { return 1.0 / (1.5 + std::cos(l)); });
  const auto K = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_coefficients(m, K));
}
BENCHMARK(BM_FourierCoefficients)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SolveFunctional(benchmark::State& state) {
  const IncrementSpec s{1, 1};
  InterpolationProblem p{s, {1.0, 1.0, 1.0},
                         DensityModel::from_increment_density(s, [](double l) { return 1.0 / (1.5 + std::cos(l)); }),
                         DensityModel::increment_constant(s, 0.25), {}};
  p.trunc.L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_functional(p).mse);
}
BENCHMARK(BM_SolveFunctional)->Arg(50)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_TimeWeights(benchmark::State& state) {
  const IncrementSpec s{1, 1};
  InterpolationProblem p{s, {1.0, 1.0}, DensityModel::increment_constant(s, 1.0),
                         DensityModel::increment_constant(s, 0.25), {}};
  p.trunc.L = 64;
  const auto sol = solve_functional(p);
  for (auto _ : state) benchmark::DoNotOptimize(extract_time_weights(sol).max_weight);
}
BENCHMARK(BM_TimeWeights)->Unit(benchmark::kMillisecond);

void BM_ProjectionOracle(benchmark::State& state) {
  const IncrementSpec s{1, 1};
  const auto f = DensityModel::increment_constant(s, 1.0), g = DensityModel::increment_constant(s, 0.25);
  const std::vector<double> b{3.0, 2.0, 1.0};
  OracleConfig cfg;
  cfg.T = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(projection_oracle(s, b, f, g, cfg).mse);
}
BENCHMARK(BM_ProjectionOracle)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const IncrementSpec s{1, 1};
  const auto f = DensityModel::increment_constant(s, 1.0), g = DensityModel::increment_constant(s, 0.25);
  const std::vector<double> b{3.0, 2.0, 1.0};
  OracleConfig cfg;
  cfg.T = 100;
  cfg.samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_check(s, b, f, g, cfg).empirical_mse);
}
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_FejerRiesz(benchmark::State& state) {
  std::vector<double> h(static_cast<std::size_t>(state.range(0)) + 1);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = std::cos(1.7 * static_cast<double>(i)) + 0.1;
  const FourierTable c{autocorrelation(h)};
  for (auto _ : state) benchmark::DoNotOptimize(fejer_riesz_factorize(c));
}
BENCHMARK(BM_FejerRiesz)->Arg(4)->Arg(16)->Arg(64);

void BM_FixedPoint(benchmark::State& state) {
  const IncrementSpec s{1, 1};
  const std::vector<double> a{1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(solve_D0_fixed_point(s, 1, a, DensityClass::d0(1.0, 4.0)).p1);
}
BENCHMARK(BM_FixedPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

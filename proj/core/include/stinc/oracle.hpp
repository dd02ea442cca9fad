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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stinc/filtering.hpp"
#include "stinc/interpolate.hpp"
#include "stinc/spectral.hpp"

namespace stinc {

struct OracleConfig {
  int T = 200;
  std::uint64_t seed = 0;
  long samples = 0;
  std::optional<double> jitter;  // default 1e-10 * trace / dim
  int batch = 1000;
  QuadratureConfig quadrature;

  void validate() const;
};

struct OracleResult {
  double mse = 0.0;
  std::vector<double> past;    // weight on x(-1-i)
  std::vector<double> future;  // weight on y(N+mu n+1+i)
  double jitter = 0.0;
  int jitter_retries = 0;
  std::optional<double> empirical_mse;
  std::optional<double> standard_error;
  long samples = 0;
};

// R(m) = (1/2pi) int phi(lambda) cos(m lambda), m = 0..max_lag.
std::vector<double> increment_autocovariance(const DensityModel& model, int max_lag, const QuadratureConfig& q = {});

// Normal equations for sum_k b(k) x(k) given x(-T..-1) and y = x + z on
// N+mu n+1..N+mu n+T.
OracleResult projection_oracle(const IncrementSpec& spec, std::span<const double> b, const DensityModel& f,
                               const DensityModel& g, const OracleConfig& cfg);

OracleResult monte_carlo_check(const IncrementSpec& spec, std::span<const double> b, const DensityModel& f,
                               const DensityModel& g, const OracleConfig& cfg);

struct OracleComparison {
  double mse_spectral = 0.0;
  double mse_oracle = 0.0;
  double relative_gap = 0.0;
  double max_weight_gap = 0.0;
  int overlap = 0;
  bool pass = false;
  EstimateSolution spectral;
  OracleResult oracle;
};

OracleComparison compare_spectral_vs_oracle(const InterpolationProblem& problem, const OracleConfig& cfg,
                                            double tolerance = 1e-3);
OracleComparison compare_spectral_vs_oracle(const FilteringProblem& problem, const OracleConfig& cfg,
                                            double tolerance = 1e-3);

}  // namespace stinc

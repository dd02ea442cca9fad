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

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stinc/increments.hpp"
#include "stinc/operators.hpp"
#include "stinc/spectral.hpp"

namespace stinc {

struct TruncationConfig {
  int L = 0;  // 0 selects 4*(N+mu*n+1)+64
  QuadratureConfig quadrature;
  SolverOptions solver;

  int resolve(int horizon) const;
};

struct SolverDiagnostics {
  double residual_c = 0.0;
  double residual_e = 0.0;
  double b_norm = 0.0;
  double cond_Ge = 0.0;
  double cond_Fmu = 0.0;
  double mse_quadratic = 0.0;
  double mse_inner = 0.0;
  std::size_t table_K = 0;
  std::size_t truncated_hankel_entries = 0;
  QuadratureReport mse_quadrature;
  bool valid = false;
};

struct TimeWeights {
  std::vector<double> past;    // past[i] is s(-1-i)
  std::vector<double> future;  // future[i] is s(N+mu*n+1+i)
  int tail = 0;
  int nodes = 0;
  double max_weight = 0.0;
  double forbidden_leak = 0.0;  // max |coefficient| on [0, N+mu*n]
  double outer_leak = 0.0;      // H1 on k > N+mu*n, H2 on k < 0, within the tail
};

struct EstimateSolution {
  IncrementSpec spec;
  int N = 0;
  int L = 0;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> e;  // e[j] stores e(N+mu*n-j)
  std::vector<double> v;  // v(-mu*n..-1), ascending
  double mse = 0.0;
  std::vector<double> past_weights;
  std::vector<double> future_weights;
  SolverDiagnostics diagnostics;
  FourierTable f_table;
  FourierTable g_table;
  std::optional<DensityModel> f;
  std::optional<DensityModel> g;
  TruncationConfig trunc;
  bool minimax = false;

  int horizon() const { return N + spec.span(); }
};

struct InterpolationProblem {
  IncrementSpec spec;
  std::vector<double> a;
  DensityModel f;
  DensityModel g;
  TruncationConfig trunc;
};

EstimateSolution solve_increment_functional(const IncrementSpec& spec, std::span<const double> b, const DensityModel& f,
                                            const DensityModel& g, const TruncationConfig& trunc = {});

EstimateSolution solve_functional(const InterpolationProblem& problem);

EstimateSolution solve_single_increment(const IncrementSpec& spec, int m, int N, const DensityModel& f,
                                        const DensityModel& g, const TruncationConfig& trunc = {});

// sum_i coef[i] e^{i (first + i) lambda}
std::complex<double> trig_series(std::span<const double> coef, long first, double lambda);

// (1/2pi) int |C|^2 wf + |C - E|^2 wg, with C, E built from c and e~.
double spectral_mse(std::span<const double> c, std::span<const double> e, int horizon,
                    const std::function<double(double)>& wf, const std::function<double(double)>& wg,
                    std::span<const double> breakpoints, double extra_bandwidth, const QuadratureConfig& q,
                    QuadratureReport* report = nullptr);

// Increment-domain characteristics: H1 = B - C wf - (C - E) wg, H2 = (C - E) wg.
std::complex<double> increment_characteristic(const EstimateSolution& sol, int which, double lambda);

// h(j) = H(j) (1 - e^{-i lambda mu})^n / (i lambda)^n.
std::complex<double> evaluate_characteristic(const EstimateSolution& sol, int which, double lambda);

TimeWeights extract_time_weights(const EstimateSolution& sol, int tail = 0, int nodes = 4096);

void attach_time_weights(EstimateSolution& sol, int tail = 0);

struct OrthogonalityRow {
  int l = 0;
  std::optional<double> signal_residual;
  std::optional<double> noise_residual;
};

std::vector<OrthogonalityRow> orthogonality_residuals(const EstimateSolution& sol, std::span<const int> lags);

}  // namespace stinc

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
#include <string>
#include <vector>

#include "stinc/interpolate.hpp"
#include "stinc/spectral.hpp"

namespace stinc {

enum class ClassKind { kD0, kDM };

// D0: (1/2pi) int u >= P.  DM: (1/2pi) int u cos(m lambda) = r(m), m = 0..M.
struct DensityClass {
  ClassKind kind = ClassKind::kD0;
  double P1 = 1.0;
  std::optional<double> P2;
  std::vector<double> r1;
  std::optional<std::vector<double>> r2;

  static DensityClass d0(double P1, std::optional<double> P2 = std::nullopt);
  static DensityClass dm(std::vector<double> r1, std::optional<std::vector<double>> r2 = std::nullopt);

  int M() const { return kind == ClassKind::kD0 ? 0 : static_cast<int>(r1.size()) - 1; }
  // Moment targets as sequences; D0 yields a single entry.
  std::vector<double> f_moments() const;
  std::optional<std::vector<double>> g_moments() const;
  void validate() const;
};

struct SaddleResiduals {
  double eq_f = 0.0;      // ||b + Gc p2 - (Ge + Fe) p1||
  double eq_e = 0.0;      // ||Gc p1 - Ge p2||, index N+mu n holds p1 - p2
  double eq_e_alt = 0.0;  // same with p2 itself at index N+mu n
  double b_norm = 0.0;
  double cond_Gc = 0.0;
  std::vector<double> moment_f;  // |f0(m) - target(m)|
  std::vector<double> moment_g;
  double modulus_f = 0.0;  // max | |C|^2 - |p1(e^{i lambda})|^2 | on the grid
  double modulus_g = 0.0;  // max | |C - E|^2 - |p2(e^{i lambda})|^2 |
  double tail_equality = 0.0;  // max |p1(k) - p2(k)|, k = N+mu n..M, when M > N+mu n
  bool modulus_evaluated = false;
  std::string modulus_error;
  int grid = 0;

  double worst_moment() const;
};

struct LeastFavorableSolution {
  IncrementSpec spec;
  int N = 0;
  FourierTable f0;
  FourierTable g0;
  std::vector<double> p1;      // p1(0..M)
  std::vector<double> p2;      // p2(0..M)
  std::vector<double> p1_vec;  // first element of the coupled pair, indices 0..N+mu n
  std::vector<double> p2_vec;  // second element, p2_vec(j) = p1(P-j) - p2(P-j)
  SaddleResiduals residuals;
  std::vector<double> moments_f;
  std::vector<double> moments_g;
  std::optional<std::vector<double>> gamma;
  std::optional<std::vector<double>> zeta;
  int iterations = 0;
  bool converged = false;
  bool valid = false;
  std::string method;
};

// (1/2pi) int |C|^2 u_f + |C - E|^2 u_g with u_f, u_g the table sums.
double pair_objective(const FourierTable& f, const FourierTable& g, std::span<const double> c, std::span<const double> e,
                        const IncrementSpec& spec, int N, const QuadratureConfig& q = {});

// Objective of the fixed characteristic h0 against an arbitrary pair (f, g):
// (1/2pi) int |C0|^2 u0_f^2 / u_f + |C0 - E0|^2 u0_g^2 / u_g.
double saddle_objective(const EstimateSolution& h0, const DensityModel& f, const DensityModel& g,
                        const QuadratureConfig& q = {});

// Pair vectors for the coupled equations given p1(0..M), p2(0..M).
std::vector<double> coupled_p1_vector(std::span<const double> p1, int horizon);
std::vector<double> coupled_p2_vector(std::span<const double> p1, std::span<const double> p2, int horizon);

// g0 is the white-noise table with weighted inverse 1/noise_sigma2.
LeastFavorableSolution white_noise_least_favorable(const IncrementSpec& spec, int N, std::span<const double> a, double P1,
                                                   double noise_sigma2 = 1.0);

SaddleResiduals verify_saddle_D0(const LeastFavorableSolution& candidate, const IncrementSpec& spec, int N,
                                 std::span<const double> a, const DensityClass& cls, const TruncationConfig& trunc = {},
                                 int grid = 1024);

SaddleResiduals verify_saddle_DM(const LeastFavorableSolution& candidate, const IncrementSpec& spec, int N,
                                 std::span<const double> a, const DensityClass& cls, const TruncationConfig& trunc = {},
                                 int grid = 1024);

struct FixedPointOptions {
  double damping = 0.5;
  int max_iterations = 200;
  double tolerance = 1e-6;
};

LeastFavorableSolution solve_D0_fixed_point(const IncrementSpec& spec, int N, std::span<const double> a,
                                            const DensityClass& cls, const TruncationConfig& trunc = {},
                                            const FixedPointOptions& opt = {},
                                            const std::optional<LeastFavorableSolution>& start = std::nullopt);

// g known; class D0 (P1) or DM (r1).
LeastFavorableSolution solve_known_g(const IncrementSpec& spec, int N, std::span<const double> a, const FourierTable& g,
                                     const DensityClass& cls, const TruncationConfig& trunc = {});

struct PositivityScan {
  double min_value = 0.0;
  double argmin = 0.0;
  double scale = 0.0;
  bool nonnegative = false;
};

PositivityScan scan_trig_positivity(std::span<const double> coeffs, int nodes = 4096);

DensityModel assemble_density(const FourierTable& coeffs, const IncrementSpec& spec);

EstimateSolution minimax_characteristic(const LeastFavorableSolution& lf, const IncrementSpec& spec, int N,
                                        std::span<const double> a, const TruncationConfig& trunc = {});

// Weighted inverse multiplied by a random positive cosine polynomial of the
// given degree and relative amplitude, rescaled to keep coefficient 0.
FourierTable perturb_admissible(const FourierTable& u, std::uint64_t seed, double amplitude, int degree);

}  // namespace stinc

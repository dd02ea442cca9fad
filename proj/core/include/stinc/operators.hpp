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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stinc/spectral.hpp"

namespace stinc {

struct SolverOptions {
  double condition_bound = 1e12;
  double residual_tolerance = 1e-8;
};

// Truncated operators on l2 with P = N + mu n:
//   Gc(l,k) = g(P-l-k), Ge(l,k) = g(k-l), Fc(l,k) = f(P-l-k), Fe(l,k) = f(k-l).
struct OperatorSet {
  Eigen::MatrixXd Gc;
  Eigen::MatrixXd Ge;
  Eigen::MatrixXd Fc;
  Eigen::MatrixXd Fe;
  int L = 0;
  int horizon = 0;
  std::size_t truncated_hankel_entries = 0;
};

// Fmu = Ge + Fe - Gc Ge^{-1} Gc and Gmu = Ge^{-1} Gc Fmu^{-1}, so that
// c = Fmu^{-1} b and e~ = Gmu b solve
//   b + Gc e~ = (Ge + Fe) c,   Gc c = Ge e~.
struct ComposedOperators {
  Eigen::MatrixXd Fmu;
  Eigen::MatrixXd Gmu;
  Eigen::MatrixXd Fmu_inv;
  Eigen::MatrixXd Ge_inv_Gc;
  Eigen::PartialPivLU<Eigen::MatrixXd> Ge_lu;
  Eigen::PartialPivLU<Eigen::MatrixXd> Fmu_lu;
  double cond_Ge = 0.0;
  double cond_Fmu = 0.0;
};

// e[j] stores e(P - j).
struct CoefficientSolution {
  std::vector<double> c;
  std::vector<double> e;
  double residual_c = 0.0;
  double residual_e = 0.0;
  double b_norm = 0.0;
  bool valid = false;
};

OperatorSet build_operator_set(const FourierTable& f, const FourierTable& g, const IncrementSpec& spec, int N, int L);

ComposedOperators compose(const OperatorSet& ops, const SolverOptions& opt = {});

CoefficientSolution solve_coefficients(const ComposedOperators& comp, const OperatorSet& ops, std::span<const double> b,
                                       const SolverOptions& opt = {});

// Norms of b + Gc e - (Ge + Fe) c and Gc c - Ge e.
std::pair<double, double> coupled_residuals(const OperatorSet& ops, const Eigen::VectorXd& c, const Eigen::VectorXd& e,
                                            const Eigen::VectorXd& b);

double condition_number(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu);

struct SweepSample {
  double mse = 0.0;
  std::vector<double> head;
};

struct SweepPoint {
  int L = 0;
  double mse = 0.0;
  double mse_drift = 0.0;
  double head_drift = 0.0;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  bool converged = false;
  int converged_at = 0;
};

SweepReport truncation_sweep(const std::function<SweepSample(int)>& problem, std::span<const int> L_list,
                             double tolerance = 1e-4);

}  // namespace stinc

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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace stinc {

// Order n and step mu of the increment operator (1 - B_mu)^n.
struct IncrementSpec {
  int n = 1;
  int mu = 1;

  int span() const { return n * mu; }
  void validate() const;
  bool operator==(const IncrementSpec&) const = default;
};

// b(0..N) acts on increments, v(-mu n..-1) on boundary values; v is stored
// in ascending order, so v[0] holds v(-mu n) and v.back() holds v(-1).
struct IncrementWeights {
  std::vector<double> b;
  std::vector<double> v;

  double v_at(int k) const;
};

std::int64_t binomial(int n, int k);

std::vector<std::int64_t> d_coefficients_exact(const IncrementSpec& spec, std::size_t count);
std::vector<double> d_coefficients(const IncrementSpec& spec, std::size_t count);

// Coefficients of (1 + x + ... + x^{k-1})^n.
std::vector<std::int64_t> step_decomposition_exact(int n, int k);
std::vector<double> step_decomposition_coefficients(int n, int k);

Eigen::MatrixXd build_D_matrix(const IncrementSpec& spec, int N);

IncrementWeights functional_decomposition(const IncrementSpec& spec, std::span<const double> a);

// Boundary weights v(-mu n..-1) for arbitrary increment weights b(0..N).
std::vector<double> boundary_weights(const IncrementSpec& spec, std::span<const double> b);

// (1 - B_mu)^n xi at time m; xi is indexed from `offset`, i.e. xi[i] = xi(i + offset).
double increment_at(const IncrementSpec& spec, std::span<const double> xi, int offset, int m);

}  // namespace stinc

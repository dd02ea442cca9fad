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

#include "stinc/increments.hpp"

#include <string>

#include "stinc/error.hpp"

namespace stinc {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) raise(ErrorCode::kInvalidArgument, "integer overflow in increment combinatorics");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) raise(ErrorCode::kInvalidArgument, "integer overflow in increment combinatorics");
  return out;
}

// ceil(p / q) for q > 0
int ceil_div(int p, int q) {
  int r = p / q;
  if (p % q != 0 && p > 0) ++r;
  return r;
}

}  // namespace

void IncrementSpec::validate() const {
  if (n < 1) raise(ErrorCode::kInvalidArgument, "increment order n must be >= 1, got " + std::to_string(n));
  if (mu < 1) raise(ErrorCode::kInvalidArgument, "increment step mu must be >= 1, got " + std::to_string(mu));
}

double IncrementWeights::v_at(int k) const {
  const int span = static_cast<int>(v.size());
  if (k >= 0 || k < -span) raise(ErrorCode::kIndexOutOfRange, "boundary index " + std::to_string(k));
  return v[static_cast<std::size_t>(k + span)];
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

std::vector<std::int64_t> d_coefficients_exact(const IncrementSpec& spec, std::size_t count) {
  spec.validate();
  std::vector<std::int64_t> d(count, 0);
  for (std::size_t k = 0; k < count; k += static_cast<std::size_t>(spec.mu)) {
    const int j = static_cast<int>(k) / spec.mu;
    d[k] = binomial(j + spec.n - 1, spec.n - 1);
  }
  return d;
}

std::vector<double> d_coefficients(const IncrementSpec& spec, std::size_t count) {
  const auto exact = d_coefficients_exact(spec, count);
  return {exact.begin(), exact.end()};
}

std::vector<std::int64_t> step_decomposition_exact(int n, int k) {
  if (n < 1 || k < 1) raise(ErrorCode::kInvalidArgument, "step decomposition needs n >= 1 and k >= 1");
  std::vector<std::int64_t> poly{1};
  for (int r = 0; r < n; ++r) {
    std::vector<std::int64_t> next(poly.size() + static_cast<std::size_t>(k) - 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (int j = 0; j < k; ++j) next[i + static_cast<std::size_t>(j)] = checked_add(next[i + static_cast<std::size_t>(j)], poly[i]);
    poly = std::move(next);
  }
  return poly;
}

std::vector<double> step_decomposition_coefficients(int n, int k) {
  const auto exact = step_decomposition_exact(n, k);
  return {exact.begin(), exact.end()};
}

Eigen::MatrixXd build_D_matrix(const IncrementSpec& spec, int N) {
  if (N < 0) raise(ErrorCode::kInvalidArgument, "horizon N must be >= 0");
  const auto d = d_coefficients(spec, static_cast<std::size_t>(N) + 1);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int k = 0; k <= N; ++k)
    for (int j = k; j <= N; ++j) D(k, j) = d[static_cast<std::size_t>(j - k)];
  return D;
}

std::vector<double> boundary_weights(const IncrementSpec& spec, std::span<const double> b) {
  spec.validate();
  const int N = static_cast<int>(b.size()) - 1;
  const int span = spec.span();
  std::vector<double> v(static_cast<std::size_t>(span), 0.0);
  for (int k = -1; k >= -span; --k) {
    double s = 0.0;
    for (int l = ceil_div(-k, spec.mu); l <= spec.n; ++l) {
      const int idx = l * spec.mu + k;
      if (idx > N) break;
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      s += sign * static_cast<double>(binomial(spec.n, l)) * b[static_cast<std::size_t>(idx)];
    }
    v[static_cast<std::size_t>(k + span)] = s;
  }
  return v;
}

IncrementWeights functional_decomposition(const IncrementSpec& spec, std::span<const double> a) {
  spec.validate();
  if (a.empty()) raise(ErrorCode::kInvalidArgument, "weight vector must have length N+1 >= 1");
  const int N = static_cast<int>(a.size()) - 1;
  const auto d = d_coefficients(spec, a.size());
  IncrementWeights w;
  w.b.assign(a.size(), 0.0);
  for (int k = 0; k <= N; ++k) {
    double s = 0.0;
    for (int j = k; j <= N; ++j) s += d[static_cast<std::size_t>(j - k)] * a[static_cast<std::size_t>(j)];
    w.b[static_cast<std::size_t>(k)] = s;
  }
  w.v = boundary_weights(spec, w.b);
  return w;
}

double increment_at(const IncrementSpec& spec, std::span<const double> xi, int offset, int m) {
  double s = 0.0;
  for (int l = 0; l <= spec.n; ++l) {
    const int idx = m - l * spec.mu - offset;
    if (idx < 0 || idx >= static_cast<int>(xi.size())) raise(ErrorCode::kIndexOutOfRange, "increment needs xi(" + std::to_string(m - l * spec.mu) + ")");
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    s += sign * static_cast<double>(binomial(spec.n, l)) * xi[static_cast<std::size_t>(idx)];
  }
  return s;
}

}  // namespace stinc

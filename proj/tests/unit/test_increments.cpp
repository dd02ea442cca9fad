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


#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "stinc/error.hpp"
#include "stinc/increments.hpp"

namespace stinc {
namespace {

std::vector<double> dv(std::initializer_list<double> x) { return std::vector<double>(x); }

TEST(DCoefficients, GeometricSeries) {
  EXPECT_EQ(d_coefficients({1, 1}, 4), dv({1, 1, 1, 1}));
  EXPECT_EQ(d_coefficients({2, 1}, 4), dv({1, 2, 3, 4}));
  EXPECT_EQ(d_coefficients({2, 2}, 5), dv({1, 0, 2, 0, 3}));
}

TEST(DCoefficients, InvertsIncrementPolynomial) {
  // (1 - x^mu)^n * sum d(k) x^k = 1 up to order count-1
  for (int n = 1; n <= 3; ++n)
    for (int mu = 1; mu <= 3; ++mu) {
      const auto d = d_coefficients_exact({n, mu}, 20);
      for (int k = 0; k < 20; ++k) {
        std::int64_t s = 0;
        for (int l = 0; l <= n && l * mu <= k; ++l)
          s += (l % 2 ? -1 : 1) * binomial(n, l) * d[static_cast<std::size_t>(k - l * mu)];
        EXPECT_EQ(s, k == 0 ? 1 : 0) << n << " " << mu << " " << k;
      }
    }
}

TEST(StepDecomposition, Examples) {
  EXPECT_EQ(step_decomposition_coefficients(2, 2), dv({1, 2, 1}));
  EXPECT_EQ(step_decomposition_coefficients(1, 3), dv({1, 1, 1}));
  EXPECT_EQ(step_decomposition_coefficients(2, 3), dv({1, 2, 3, 2, 1}));
  EXPECT_THROW(step_decomposition_coefficients(0, 2), Error);
}

TEST(DMatrix, Examples) {
  Eigen::MatrixXd e1(3, 3), e2(3, 3), e3(3, 3);
  e1 << 1, 1, 1, 0, 1, 1, 0, 0, 1;
  e2 << 1, 2, 3, 0, 1, 2, 0, 0, 1;
  e3 << 1, 0, 1, 0, 1, 0, 0, 0, 1;
  EXPECT_EQ(build_D_matrix({1, 1}, 2), e1);
  EXPECT_EQ(build_D_matrix({2, 1}, 2), e2);
  EXPECT_EQ(build_D_matrix({1, 2}, 2), e3);
  EXPECT_THROW(build_D_matrix({1, 1}, -1), Error);
}

TEST(FunctionalDecomposition, Examples) {
  auto w = functional_decomposition({1, 1}, dv({1, 1, 1}));
  EXPECT_EQ(w.b, dv({3, 2, 1}));
  ASSERT_EQ(w.v.size(), 1u);
  EXPECT_EQ(w.v_at(-1), -3.0);

  w = functional_decomposition({1, 2}, dv({1, 1}));
  EXPECT_EQ(w.b, dv({1, 1}));
  EXPECT_EQ(w.v_at(-1), -1.0);
  EXPECT_EQ(w.v_at(-2), -1.0);
  EXPECT_THROW(w.v_at(0), Error);
  EXPECT_THROW(w.v_at(-3), Error);

  for (IncrementSpec s : {IncrementSpec{1, 1}, IncrementSpec{2, 3}, IncrementSpec{3, 2}}) {
    w = functional_decomposition(s, dv({1, 0, 0, 0}));
    EXPECT_EQ(w.b, dv({1, 0, 0, 0}));
  }
  EXPECT_THROW(functional_decomposition({1, 1}, std::vector<double>{}), Error);
  EXPECT_THROW(functional_decomposition({0, 1}, dv({1})), Error);
}

TEST(FunctionalDecomposition, IdentityOnRandomSequences) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int n = 1; n <= 3; ++n)
    for (int mu = 1; mu <= 3; ++mu)
      for (int N = 0; N <= 8; N += 4) {
        const IncrementSpec s{n, mu};
        std::vector<double> a(static_cast<std::size_t>(N + 1)), xi(static_cast<std::size_t>(N + 1 + s.span()));
        for (auto& x : a) x = nd(rng);
        for (auto& x : xi) x = nd(rng);
        const int offset = -s.span();
        const auto w = functional_decomposition(s, a);
        double A = 0.0, B = 0.0, V = 0.0, scale = 0.0;
        for (int k = 0; k <= N; ++k) {
          A += a[static_cast<std::size_t>(k)] * xi[static_cast<std::size_t>(k - offset)];
          B += w.b[static_cast<std::size_t>(k)] * increment_at(s, xi, offset, k);
          scale += std::abs(a[static_cast<std::size_t>(k)] * xi[static_cast<std::size_t>(k - offset)]);
        }
        for (int k = -s.span(); k <= -1; ++k) V += w.v_at(k) * xi[static_cast<std::size_t>(k - offset)];
        EXPECT_NEAR(A, B - V, 1e-10 * std::max(1.0, scale)) << n << " " << mu << " " << N;
        EXPECT_EQ(boundary_weights(s, w.b), w.v);
      }
}

TEST(IncrementAt, FirstDifference) {
  const std::vector<double> xi{1.0, 4.0, 9.0, 16.0};
  EXPECT_EQ(increment_at({1, 1}, xi, 0, 1), 3.0);
  EXPECT_EQ(increment_at({2, 1}, xi, 0, 2), 2.0);
  EXPECT_EQ(increment_at({1, 2}, xi, 0, 3), 12.0);
  EXPECT_THROW(increment_at({1, 1}, xi, 0, 0), Error);
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 6), 0);
}

}  // namespace
}  // namespace stinc

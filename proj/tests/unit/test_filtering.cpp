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
#include <random>

#include <gtest/gtest.h>

#include "stinc/error.hpp"
#include "stinc/filtering.hpp"
#include "stinc/oracle.hpp"

namespace stinc {
namespace {

FilteringProblem white_problem(const IncrementSpec& s, int N, std::vector<double> a) {
  return {s, std::move(a), N, DensityModel::increment_constant(s, 1.0), DensityModel::increment_constant(s, 1.0), {}};
}

TEST(ExtendedWeights, ZeroInput) {
  const auto w = build_extended_weights(white_problem({2, 1}, 1, {0.0, 0.0}));
  for (double x : w.b) EXPECT_EQ(x, 0.0);
  for (double x : w.v) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(w.a2.size(), 4u);
}

TEST(ExtendedWeights, SingleStep) {
  const auto w = build_extended_weights(white_problem({1, 1}, 0, {1.0}));
  EXPECT_EQ(w.a2, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(w.b, (std::vector<double>{1.0, 1.0}));
  ASSERT_EQ(w.v.size(), 1u);
  EXPECT_EQ(w.v[0], -1.0);
}

TEST(ExtendedWeights, MatchesDMatrixProduct) {
  for (int n = 1; n <= 3; ++n)
    for (int mu = 1; mu <= 3; ++mu) {
      const IncrementSpec s{n, mu};
      const int N = 2;
      std::vector<double> a(static_cast<std::size_t>(s.span()));
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = 1.0 + 0.5 * static_cast<double>(i);
      const auto w = build_extended_weights(white_problem(s, N, a));
      const Eigen::MatrixXd D = build_D_matrix(s, N + s.span());
      const Eigen::VectorXd b = D * Eigen::Map<const Eigen::VectorXd>(w.a2.data(), static_cast<Eigen::Index>(w.a2.size()));
      for (Eigen::Index k = 0; k < b.size(); ++k) EXPECT_EQ(w.b[static_cast<std::size_t>(k)], b[k]);
    }
}

TEST(ExtendedWeights, IdentityOnRandomSequences) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int n = 1; n <= 3; ++n)
    for (int mu = 1; mu <= 3; ++mu)
      for (int N = 0; N <= 8; N += 2) {
        const IncrementSpec s{n, mu};
        const int P = N + s.span();
        std::vector<double> a(static_cast<std::size_t>(s.span())), xi(static_cast<std::size_t>(P + 1 + s.span()));
        for (auto& x : a) x = nd(rng);
        for (auto& x : xi) x = nd(rng);
        const int offset = -s.span();
        const auto w = build_extended_weights(white_problem(s, N, a));
        double A = 0.0, B = 0.0, V = 0.0, scale = 0.0;
        for (int k = N + 1; k <= P; ++k) {
          const double t = a[static_cast<std::size_t>(k - N - 1)] * xi[static_cast<std::size_t>(k - offset)];
          A += t;
          scale += std::abs(t);
        }
        for (int k = 0; k <= P; ++k) B += w.b[static_cast<std::size_t>(k)] * increment_at(s, xi, offset, k);
        for (int k = -s.span(); k <= -1; ++k)
          V += w.v[static_cast<std::size_t>(k + s.span())] * xi[static_cast<std::size_t>(k - offset)];
        EXPECT_NEAR(A, B - V, 1e-10 * std::max(1.0, scale));
      }
}

TEST(ExtendedWeights, LengthValidation) {
  EXPECT_THROW(build_extended_weights(white_problem({1, 2}, 0, {1.0})), Error);
  EXPECT_THROW(build_extended_weights(white_problem({1, 1}, -1, {1.0})), Error);
}

TEST(SolveFiltering, ZeroAndWhiteNoise) {
  EXPECT_EQ(solve_filtering(white_problem({1, 1}, 0, {0.0})).mse, 0.0);
  const auto p = white_problem({1, 1}, 0, {1.0});
  const auto sol = solve_filtering(p);
  // target increments at 0 and 1 are independent of every observation
  EXPECT_NEAR(sol.mse, 2.0, 1e-10);
  const auto o = projection_oracle(p.spec, sol.b, p.f, p.g, {});
  EXPECT_LE(std::abs(sol.mse - o.mse) / o.mse, 1e-3);
  EXPECT_EQ(sol.v, (std::vector<double>{-1.0}));
}

TEST(SolveFiltering, EqualsExtendedInterpolation) {
  const IncrementSpec s{1, 2};
  auto f = DensityModel::from_increment_density(s, [](double l) { return 1.25 + std::cos(l); });
  auto g = DensityModel::increment_constant(s, 0.5);
  FilteringProblem p{s, {1.0, -0.5}, 1, f, g, {}};
  const auto fsol = solve_filtering(p);
  const auto w = build_extended_weights(p);
  InterpolationProblem q{s, w.a2, f, g, {}};
  const auto isol = solve_functional(q);
  EXPECT_EQ(fsol.mse, isol.mse);
  EXPECT_EQ(fsol.b, isol.b);
  EXPECT_EQ(fsol.v, w.v);
}

}  // namespace
}  // namespace stinc

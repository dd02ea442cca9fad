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
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "stinc/error.hpp"
#include "stinc/fejer_riesz.hpp"

namespace stinc {
namespace {

TEST(FejerRiesz, Constant) {
  const auto g = fejer_riesz_factorize({{1.0, 0.0, 0.0}});
  ASSERT_GE(g.size(), 1u);
  EXPECT_NEAR(g[0], 1.0, 1e-14);
  for (std::size_t k = 1; k < g.size(); ++k) EXPECT_NEAR(g[k], 0.0, 1e-14);
  EXPECT_NEAR(fejer_riesz_factorize({{4.0}})[0], 2.0, 1e-14);
}

TEST(FejerRiesz, OnePlusCosine) {
  const auto g = fejer_riesz_factorize({{1.0, 0.5}});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(g[0], std::sqrt(0.5), 1e-8);
  EXPECT_NEAR(g[1], std::sqrt(0.5), 1e-8);
  for (double l = -3.0; l <= 3.0; l += 0.25) {
    const double mod = std::norm(g[0] + g[1] * std::polar(1.0, -l));
    EXPECT_NEAR(mod, 1.0 + std::cos(l), 1e-8);
  }
}

TEST(FejerRiesz, RandomRoundTrip) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(1, 16);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 100; ++trial) {
    // nonnegative by construction: autocorrelation of a random sequence
    std::vector<double> h(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : h) x = nd(rng);
    const auto c = autocorrelation(h);
    const auto g = fejer_riesz_factorize({c});
    const auto back = autocorrelation(g);
    double scale = std::abs(c[0]);
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_NEAR(back[k], c[k], 1e-8 * scale) << trial << " " << k;
    EXPECT_GT(g[0], 0.0);
  }
}

TEST(FejerRiesz, MinimumPhase) {
  // gamma has all zeros of sum gamma(k) z^k outside the unit disk
  const auto g = fejer_riesz_factorize({autocorrelation(std::vector<double>{1.0, -2.5, 1.0})});
  ASSERT_EQ(g.size(), 3u);
  // roots of g0 + g1 z + g2 z^2
  const std::complex<double> disc = std::sqrt(std::complex<double>(g[1] * g[1] - 4 * g[0] * g[2]));
  for (double sign : {-1.0, 1.0}) EXPECT_GE(std::abs((-g[1] + sign * disc) / (2 * g[2])), 1.0 - 1e-8);
}

TEST(FejerRiesz, RejectsNegative) {
  EXPECT_THROW(fejer_riesz_factorize({{1.0, 0.8}}), Error);
  EXPECT_THROW(fejer_riesz_factorize({{-1.0}}), Error);
}

TEST(Autocorrelation, Values) {
  const auto c = autocorrelation(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_EQ(c, (std::vector<double>{14.0, 8.0, 3.0}));
}

}  // namespace
}  // namespace stinc

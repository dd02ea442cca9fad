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
#include <set>

#include <gtest/gtest.h>

#include "stinc/random.hpp"

namespace stinc {
namespace {

TEST(SplitMix64, ReferenceOutputs) {
  std::uint64_t s = 0;
  EXPECT_EQ(splitmix64(s), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(splitmix64(s), 0x6E789E6AA1B965F4ULL);
}

TEST(DeriveSeed, DistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
}

TEST(NormalSource, EngineIsStandardMersenneTwister) {
  std::mt19937_64 ref(5489);
  NormalSource src(5489);
  const std::uint64_t first = ref();
  EXPECT_EQ(src.uniform(), (static_cast<double>(first >> 11) + 0.5) * 0x1.0p-53);
}

TEST(NormalSource, UniformOpenInterval) {
  NormalSource src(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = src.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(NormalSource, Moments) {
  NormalSource src(42);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = src.normal();
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(s4 / n, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(NormalSource, Reproducible) {
  NormalSource a(99), b(99);
  for (int i = 0; i < 1001; ++i) ASSERT_EQ(a.normal(), b.normal());
}

}  // namespace
}  // namespace stinc

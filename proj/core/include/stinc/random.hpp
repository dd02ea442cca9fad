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
#include <random>

namespace stinc {

// splitmix64 step; advances state and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed of stream `index` derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 with a Box-Muller normal transform. Both are fully specified,
// so draws are identical across platforms and standard libraries.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed);

  // Uniform on (0, 1) from the top 53 bits.
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace stinc

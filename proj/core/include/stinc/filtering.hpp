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

#include <vector>

#include "stinc/interpolate.hpp"

namespace stinc {

// Estimate sum_{k=N+1}^{N+mu n} a(k) xi(k); a_future[i] holds a(N+1+i).
struct FilteringProblem {
  IncrementSpec spec;
  std::vector<double> a_future;
  int N = 0;
  DensityModel f;
  DensityModel g;
  TruncationConfig trunc;
};

struct ExtendedWeights {
  std::vector<double> a2;  // (0, ..., 0, a(N+1), ..., a(N+mu n)), length N+mu n+1
  std::vector<double> b;   // b~(0..N+mu n)
  std::vector<double> v;   // v~(-mu n..-1), ascending
};

ExtendedWeights build_extended_weights(const FilteringProblem& p);

EstimateSolution solve_filtering(const FilteringProblem& p);

}  // namespace stinc

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

#include "stinc/filtering.hpp"

#include <algorithm>

namespace stinc {

ExtendedWeights build_extended_weights(const FilteringProblem& p) {
  p.spec.validate();
  if (p.N < 0) raise(ErrorCode::kInvalidArgument, "horizon N must be >= 0");
  const int span = p.spec.span();
  if (static_cast<int>(p.a_future.size()) != span)
    raise(ErrorCode::kInvalidArgument, "a_future must have length mu*n=" + std::to_string(span));
  const int H = p.N + span;
  ExtendedWeights w;
  w.a2.assign(static_cast<std::size_t>(H) + 1, 0.0);
  std::copy(p.a_future.begin(), p.a_future.end(), w.a2.begin() + p.N + 1);
  // b~(k) = sum_{m=max(k, N+1)}^{N+mu n} a(m) d(m-k)
  const auto d = d_coefficients(p.spec, static_cast<std::size_t>(H) + 1);
  w.b.assign(static_cast<std::size_t>(H) + 1, 0.0);
  for (int k = 0; k <= H; ++k) {
    double s = 0.0;
    for (int m = std::max(k, p.N + 1); m <= H; ++m) s += w.a2[static_cast<std::size_t>(m)] * d[static_cast<std::size_t>(m - k)];
    w.b[static_cast<std::size_t>(k)] = s;
  }
  w.v = boundary_weights(p.spec, w.b);
  return w;
}

EstimateSolution solve_filtering(const FilteringProblem& p) {
  const ExtendedWeights w = build_extended_weights(p);
  EstimateSolution sol = solve_increment_functional(p.spec, w.b, p.f, p.g, p.trunc);
  sol.v = w.v;
  return sol;
}

}  // namespace stinc

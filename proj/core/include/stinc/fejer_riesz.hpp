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

#include <span>
#include <vector>

#include "stinc/spectral.hpp"

namespace stinc {

// Minimum-phase gamma(0..K), gamma(0) > 0, with
// |sum_k gamma(k) e^{-ik lambda}|^2 = c(0) + 2 sum_k c(k) cos(k lambda).
std::vector<double> fejer_riesz_factorize(const FourierTable& coeffs);

// c(k) = sum_j gamma(j) gamma(j+k), k = 0..size-1.
std::vector<double> autocorrelation(std::span<const double> gamma);

}  // namespace stinc

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

#include "stinc/fejer_riesz.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/Polynomials>

namespace stinc {

namespace {

using cd = std::complex<double>;

cd poly_eval(const std::vector<double>& a, cd z) {
  cd s = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) s = s * z + a[i];
  return s;
}

cd poly_deriv(const std::vector<double>& a, cd z) {
  cd s = 0.0;
  for (std::size_t i = a.size(); i-- > 1;) s = s * z + static_cast<double>(i) * a[i];
  return s;
}

}  // namespace

std::vector<double> autocorrelation(std::span<const double> gamma) {
  std::vector<double> c(gamma.size(), 0.0);
  for (std::size_t k = 0; k < gamma.size(); ++k)
    for (std::size_t j = 0; j + k < gamma.size(); ++j) c[k] += gamma[j] * gamma[j + k];
  return c;
}

std::vector<double> fejer_riesz_factorize(const FourierTable& coeffs) {
  std::vector<double> c = coeffs.coeffs;
  if (c.empty()) raise(ErrorCode::kInvalidArgument, "empty coefficient table");
  double cmax = 0.0;
  for (double x : c) cmax = std::max(cmax, std::abs(x));
  while (c.size() > 1 && std::abs(c.back()) <= 1e-15 * cmax) c.pop_back();
  const std::size_t K = c.size() - 1;

  // nonnegativity on a grid, relative to the coefficient scale
  double scale = std::abs(c[0]);
  for (std::size_t k = 1; k <= K; ++k) scale += 2.0 * std::abs(c[k]);
  const int M = std::max<int>(4096, static_cast<int>(16 * K));
  for (int j = 0; j <= M; ++j) {
    const double lambda = -std::numbers::pi + 2.0 * std::numbers::pi * j / M;
    const double t = FourierTable{c}.evaluate(lambda);
    if (t < -1e-12 * scale)
      raise(ErrorCode::kPositivityViolation, "trigonometric polynomial is negative (" + std::to_string(t) +
                                                 ") at lambda=" + std::to_string(lambda));
  }
  if (c[0] <= 0.0) raise(ErrorCode::kPositivityViolation, "zeroth coefficient must be positive");
  if (K == 0) return {std::sqrt(c[0])};

  // z^K T(z) has coefficients c(|j-K|), j = 0..2K
  std::vector<double> a(2 * K + 1);
  for (std::size_t j = 0; j <= 2 * K; ++j) a[j] = c[j > K ? j - K : K - j];
  Eigen::VectorXd av = Eigen::Map<Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(av);
  std::vector<cd> roots(solver.roots().data(), solver.roots().data() + solver.roots().size());
  for (cd& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const cd d = poly_deriv(a, r);
      if (std::abs(d) == 0.0) break;
      const cd next = r - poly_eval(a, r) / d;
      if (!(std::abs(poly_eval(a, next)) < std::abs(poly_eval(a, r)))) break;
      r = next;
    }
  }

  const double tol_uc = 1e-6;
  std::vector<cd> selected, circle;
  for (const cd& r : roots) {
    const double m = std::abs(r);
    if (!std::isfinite(m)) raise(ErrorCode::kRootFindingFailure, "non-finite root");
    if (m > 1.0 + tol_uc)
      selected.push_back(r);
    else if (m >= 1.0 - tol_uc)
      circle.push_back(r);
  }
  if (circle.size() % 2 != 0)
    raise(ErrorCode::kPositivityViolation, "odd number of unit-circle roots; polynomial changes sign");
  // unit-circle roots come in coincident pairs; merge nearest neighbours
  std::vector<bool> used(circle.size(), false);
  for (std::size_t i = 0; i < circle.size(); ++i) {
    if (used[i]) continue;
    std::size_t best = i;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < circle.size(); ++j) {
      if (!used[j] && std::abs(circle[j] - circle[i]) < dist) {
        dist = std::abs(circle[j] - circle[i]);
        best = j;
      }
    }
    used[i] = used[best] = true;
    const cd mid = 0.5 * (circle[i] + circle[best]);
    selected.push_back(mid / std::abs(mid));
  }
  if (selected.size() != K)
    raise(ErrorCode::kRootFindingFailure, "expected " + std::to_string(K) + " outer roots, found " +
                                              std::to_string(selected.size()));

  std::vector<cd> gam{1.0};
  for (const cd& r : selected) {
    std::vector<cd> next(gam.size() + 1, 0.0);
    for (std::size_t i = 0; i < gam.size(); ++i) {
      next[i] -= r * gam[i];
      next[i + 1] += gam[i];
    }
    gam = std::move(next);
  }
  std::vector<double> out(gam.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < gam.size(); ++i) {
    out[i] = gam[i].real();
    norm2 += out[i] * out[i];
  }
  const double s = std::sqrt(c[0] / norm2) * (out[0] < 0.0 ? -1.0 : 1.0);
  for (double& x : out) x *= s;
  return out;
}

}  // namespace stinc

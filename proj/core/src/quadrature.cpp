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

#include "stinc/quadrature.hpp"

namespace stinc {

namespace {
constexpr double kPi = std::numbers::pi;
}

void QuadratureConfig::validate() const {
  if (panels < 16) raise(ErrorCode::kInvalidArgument, "quadrature panels must be >= 16");
  if (order < 4) raise(ErrorCode::kInvalidArgument, "quadrature order must be >= 4");
  if (singularity_exclusion < 0.0) raise(ErrorCode::kInvalidArgument, "singularity exclusion must be >= 0");
  if (!(tolerance > 0.0)) raise(ErrorCode::kInvalidArgument, "quadrature tolerance must be > 0");
  if (max_refinements < 0) raise(ErrorCode::kInvalidArgument, "max_refinements must be >= 0");
}

void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(order), 0.0);
  w.assign(static_cast<std::size_t>(order), 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(order - 1 - i)] = z;
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(order - 1 - i)] = wi;
  }
}

std::vector<double> singular_points(int mu) {
  std::vector<double> pts{-kPi, 0.0, kPi};
  for (int j = 1; 2 * j <= mu; ++j) {
    const double s = 2.0 * kPi * j / mu;
    pts.push_back(s);
    pts.push_back(-s);
  }
  return merge_breakpoints(std::move(pts));
}

std::vector<double> merge_breakpoints(std::vector<double> a, std::span<const double> b) {
  a.insert(a.end(), b.begin(), b.end());
  a.push_back(-kPi);
  a.push_back(kPi);
  for (double& x : a) x = std::clamp(x, -kPi, kPi);
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double x : a)
    if (out.empty() || x - out.back() > 1e-13) out.push_back(x);
  out.back() = kPi;
  return out;
}

QuadratureRule make_rule(std::span<const double> breakpoints, int panels, int order, double exclusion) {
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  const double h = 2.0 * kPi / panels;
  QuadratureRule rule;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double lo = breakpoints[i], hi = breakpoints[i + 1];
    if (exclusion > 0.0) {
      if (i > 0) lo += exclusion;
      if (i + 2 < breakpoints.size()) hi -= exclusion;
      if (hi <= lo) continue;
    }
    const int count = std::max(1, static_cast<int>(std::ceil((hi - lo) / h - 1e-9)));
    const double width = (hi - lo) / count;
    for (int p = 0; p < count; ++p) {
      const double a = lo + p * width;
      const double mid = a + 0.5 * width;
      for (int j = 0; j < order; ++j) {
        rule.nodes.push_back(mid + 0.5 * width * gx[static_cast<std::size_t>(j)]);
        rule.weights.push_back(0.5 * width * gw[static_cast<std::size_t>(j)]);
      }
    }
  }
  return rule;
}

int bandwidth_panels(double bandwidth, int order) {
  return static_cast<int>(std::ceil(4.0 * kPi * std::max(bandwidth, 1.0) / order));
}

}  // namespace stinc

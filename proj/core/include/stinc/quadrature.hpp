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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stinc/error.hpp"

namespace stinc {

struct QuadratureConfig {
  int panels = 32;
  int order = 16;
  double singularity_exclusion = 0.0;
  double tolerance = 1e-9;
  int max_refinements = 4;

  void validate() const;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

struct QuadratureReport {
  int panels = 0;
  int nodes = 0;
  double difference = 0.0;
  double scale = 0.0;
  bool converged = false;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w);

// Points 2*pi*j/mu inside [-pi, pi], always including 0 and +-pi.
std::vector<double> singular_points(int mu);

// Sorted, deduplicated union of breakpoint sets clipped to [-pi, pi].
std::vector<double> merge_breakpoints(std::vector<double> a, std::span<const double> b = {});

// Composite rule on [-pi, pi]: each breakpoint interval is cut into equal
// panels no wider than 2*pi/panels.
QuadratureRule make_rule(std::span<const double> breakpoints, int panels, int order, double exclusion);

// Panel count that resolves e^{i B lambda} with `order`-point panels.
int bandwidth_panels(double bandwidth, int order);

// (1/2pi) * integral over [-pi, pi) of a vector-valued integrand. `acc(lambda, w, out)`
// must add w * integrand(lambda) into out. Panels are doubled until two
// successive results agree to q.tolerance relative to max(|I|, scale_floor).
template <typename Vec, typename Acc>
Vec integrate_checked(const Acc& acc, Eigen::Index dim, std::span<const double> breakpoints, int base_panels,
                      const QuadratureConfig& q, double scale_floor, QuadratureReport* report, bool throw_on_failure,
                      const std::string& what) {
  auto run = [&](int panels) {
    const QuadratureRule rule = make_rule(breakpoints, panels, q.order, q.singularity_exclusion);
    Vec out = Vec::Zero(dim);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc(rule.nodes[i], rule.weights[i], out);
    out /= 2.0 * std::numbers::pi;
    return std::make_pair(out, static_cast<int>(rule.nodes.size()));
  };
  int panels = std::max(q.panels, base_panels);
  auto [prev, count] = run(panels);
  QuadratureReport rep;
  for (int r = 0; r <= q.max_refinements; ++r) {
    panels *= 2;
    auto [next, next_count] = run(panels);
    const double diff = dim > 0 ? (next - prev).cwiseAbs().maxCoeff() : 0.0;
    const double scale = std::max(dim > 0 ? next.cwiseAbs().maxCoeff() : 0.0, scale_floor);
    rep = {panels, next_count, diff, scale, diff <= q.tolerance * scale || diff == 0.0};
    prev = std::move(next);
    if (rep.converged) break;
  }
  if (report != nullptr) *report = rep;
  if (!rep.converged && throw_on_failure) {
    raise(ErrorCode::kQuadratureNonconvergence,
          what + ": refinement difference " + std::to_string(rep.difference) + " exceeds tolerance at " +
              std::to_string(rep.panels) + " panels");
  }
  return prev;
}

}  // namespace stinc

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

#include "stinc/operators.hpp"

#include <cmath>
#include <limits>

namespace stinc {

OperatorSet build_operator_set(const FourierTable& f, const FourierTable& g, const IncrementSpec& spec, int N, int L) {
  spec.validate();
  const int P = N + spec.span();
  if (N < 0) raise(ErrorCode::kInvalidArgument, "horizon N must be >= 0");
  if (L <= P) raise(ErrorCode::kInvalidArgument, "truncation L=" + std::to_string(L) + " must exceed N+mu*n=" + std::to_string(P));
  const auto need = static_cast<std::size_t>(std::max(L - 1, P));
  if (f.coeffs.empty() || g.coeffs.empty() || f.K() < need || g.K() < need)
    raise(ErrorCode::kInsufficientFourierRange, "tables must cover lags up to " + std::to_string(need));

  OperatorSet ops;
  ops.L = L;
  ops.horizon = P;
  ops.Gc.resize(L, L);
  ops.Ge.resize(L, L);
  ops.Fc.resize(L, L);
  ops.Fe.resize(L, L);
  const long kf = static_cast<long>(f.K()), kg = static_cast<long>(g.K());
  for (int l = 0; l < L; ++l) {
    for (int k = 0; k < L; ++k) {
      const long h = static_cast<long>(P) - l - k;
      const long t = static_cast<long>(k) - l;
      ops.Ge(l, k) = g.at(t);
      ops.Fe(l, k) = f.at(t);
      if (std::abs(h) > std::min(kf, kg)) ++ops.truncated_hankel_entries;
      ops.Gc(l, k) = std::abs(h) <= kg ? g.at(h) : 0.0;
      ops.Fc(l, k) = std::abs(h) <= kf ? f.at(h) : 0.0;
    }
  }
  return ops;
}

double condition_number(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
  const double r = lu.rcond();
  return r > 0.0 ? 1.0 / r : std::numeric_limits<double>::infinity();
}

ComposedOperators compose(const OperatorSet& ops, const SolverOptions& opt) {
  ComposedOperators comp;
  comp.Ge_lu.compute(ops.Ge);
  comp.cond_Ge = condition_number(comp.Ge_lu);
  if (!(comp.cond_Ge <= opt.condition_bound))
    raise(ErrorCode::kSingularOperator, "Ge condition number " + std::to_string(comp.cond_Ge) + " exceeds bound");
  comp.Ge_inv_Gc = comp.Ge_lu.solve(ops.Gc);
  comp.Fmu = ops.Ge + ops.Fe - ops.Gc * comp.Ge_inv_Gc;
  comp.Fmu_lu.compute(comp.Fmu);
  comp.cond_Fmu = condition_number(comp.Fmu_lu);
  if (!(comp.cond_Fmu <= opt.condition_bound))
    raise(ErrorCode::kSingularOperator, "Fmu condition number " + std::to_string(comp.cond_Fmu) + " exceeds bound");
  comp.Fmu_inv = comp.Fmu_lu.inverse();
  comp.Gmu = comp.Ge_inv_Gc * comp.Fmu_inv;
  return comp;
}

std::pair<double, double> coupled_residuals(const OperatorSet& ops, const Eigen::VectorXd& c, const Eigen::VectorXd& e,
                                            const Eigen::VectorXd& b) {
  const Eigen::VectorXd r1 = b + ops.Gc * e - (ops.Ge + ops.Fe) * c;
  const Eigen::VectorXd r2 = ops.Gc * c - ops.Ge * e;
  return {r1.norm(), r2.norm()};
}

CoefficientSolution solve_coefficients(const ComposedOperators& comp, const OperatorSet& ops, std::span<const double> b,
                                       const SolverOptions& opt) {
  const int L = ops.L;
  if (static_cast<int>(b.size()) > L) raise(ErrorCode::kInvalidArgument, "b is longer than the truncation");
  Eigen::VectorXd bv = Eigen::VectorXd::Zero(L);
  for (std::size_t i = 0; i < b.size(); ++i) bv[static_cast<Eigen::Index>(i)] = b[i];

  Eigen::VectorXd c = comp.Fmu_lu.solve(bv);
  c += comp.Fmu_lu.solve(bv - comp.Fmu * c);
  const Eigen::VectorXd rhs = ops.Gc * c;
  Eigen::VectorXd e = comp.Ge_lu.solve(rhs);
  e += comp.Ge_lu.solve(rhs - ops.Ge * e);

  CoefficientSolution sol;
  sol.c.assign(c.data(), c.data() + L);
  sol.e.assign(e.data(), e.data() + L);
  std::tie(sol.residual_c, sol.residual_e) = coupled_residuals(ops, c, e, bv);
  sol.b_norm = bv.norm();
  const double bound = opt.residual_tolerance * sol.b_norm;
  sol.valid = sol.residual_c <= bound && sol.residual_e <= bound;
  if (!sol.valid)
    raise(ErrorCode::kResidualFailure, "coupled system residuals (" + std::to_string(sol.residual_c) + ", " +
                                           std::to_string(sol.residual_e) + ") exceed " + std::to_string(bound));
  return sol;
}

SweepReport truncation_sweep(const std::function<SweepSample(int)>& problem, std::span<const int> L_list,
                             double tolerance) {
  if (L_list.empty()) raise(ErrorCode::kInvalidArgument, "truncation sweep needs at least one L");
  for (std::size_t i = 1; i < L_list.size(); ++i)
    if (L_list[i] < L_list[i - 1]) raise(ErrorCode::kInvalidArgument, "truncation sweep L list must be non-decreasing");
  SweepReport rep;
  SweepSample prev;
  for (std::size_t i = 0; i < L_list.size(); ++i) {
    SweepSample cur;
    try {
      cur = problem(L_list[i]);
    } catch (const Error& e) {
      raise(ErrorCode::kNoConvergence, "truncation sweep failed at L=" + std::to_string(L_list[i]) + ": " + e.what());
    }
    SweepPoint pt;
    pt.L = L_list[i];
    pt.mse = cur.mse;
    if (i > 0) {
      const double scale = std::max(std::abs(cur.mse), std::abs(prev.mse));
      pt.mse_drift = scale > 0.0 ? std::abs(cur.mse - prev.mse) / scale : 0.0;
      const std::size_t m = std::min(cur.head.size(), prev.head.size());
      for (std::size_t k = 0; k < m; ++k) pt.head_drift = std::max(pt.head_drift, std::abs(cur.head[k] - prev.head[k]));
      if (!rep.converged && pt.mse_drift <= tolerance) {
        rep.converged = true;
        rep.converged_at = pt.L;
      }
    }
    rep.points.push_back(pt);
    prev = std::move(cur);
  }
  if (L_list.size() == 1) {
    rep.converged = true;
    rep.converged_at = L_list[0];
  }
  if (rep.points.back().mse_drift > tolerance)
    raise(ErrorCode::kNoConvergence, "relative mse drift " + std::to_string(rep.points.back().mse_drift) +
                                         " at L=" + std::to_string(rep.points.back().L) + " exceeds " + std::to_string(tolerance));
  return rep;
}

}  // namespace stinc

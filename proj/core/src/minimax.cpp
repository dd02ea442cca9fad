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

#include "stinc/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stinc/fejer_riesz.hpp"
#include "stinc/random.hpp"

namespace stinc {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

std::vector<double> increment_weights(const IncrementSpec& spec, int N, std::span<const double> a) {
  spec.validate();
  if (N < 0) raise(ErrorCode::kInvalidArgument, "N must be >= 0");
  if (static_cast<int>(a.size()) != N + 1)
    raise(ErrorCode::kInvalidArgument, "weights a must have length N+1=" + std::to_string(N + 1));
  return functional_decomposition(spec, a).b;
}

FourierTable padded(const FourierTable& t, std::size_t K) {
  FourierTable out = t;
  if (out.coeffs.size() < K + 1) out.coeffs.resize(K + 1, 0.0);
  return out;
}

FourierTable trimmed(std::vector<double> c) {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * m) c.pop_back();
  return FourierTable{std::move(c)};
}

Eigen::VectorXd to_vector(std::span<const double> x, int L) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(L);
  for (std::size_t i = 0; i < x.size() && static_cast<int>(i) < L; ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  return v;
}

OperatorSet candidate_operators(const FourierTable& f, const FourierTable& g, const IncrementSpec& spec, int N,
                                int L) {
  const auto K = static_cast<std::size_t>(N + spec.span() + 2 * L);
  return build_operator_set(padded(f, K), padded(g, K), spec, N, L);
}

int window(const TruncationConfig& trunc, int P, int M) {
  const int L = trunc.resolve(P);
  if (M >= L) raise(ErrorCode::kInvalidArgument, "moment count M must be below the truncation L");
  return L;
}

// p2(0..min(M,P)) minimizing ||Gc p1_vec - Ge p2_vec||.
std::vector<double> fit_p2(const OperatorSet& ops, std::span<const double> p1, int P, int L) {
  const int M = static_cast<int>(p1.size()) - 1;
  const int m_max = std::min(M, P);
  std::vector<double> zero(p1.size(), 0.0);
  const Eigen::VectorXd c = to_vector(coupled_p1_vector(p1, P), L);
  const Eigen::VectorXd e0 = to_vector(coupled_p2_vector(p1, zero, P), L);
  const Eigen::VectorXd u = ops.Gc * c - ops.Ge * e0;
  // p2(m) enters e at index P - m with a minus sign, so the residual is u + Ge_{:,P-m} p2(m)
  Eigen::MatrixXd W(L, m_max + 1);
  for (int m = 0; m <= m_max; ++m) W.col(m) = ops.Ge.col(P - m);
  const Eigen::VectorXd sol = W.colPivHouseholderQr().solve(-u);
  std::vector<double> p2(p1.size(), 0.0);
  for (int m = 0; m <= m_max; ++m) p2[static_cast<std::size_t>(m)] = sol[m];
  return p2;
}

SaddleResiduals evaluate_saddle(const LeastFavorableSolution& cand, const IncrementSpec& spec, int N,
                                std::span<const double> a, const std::vector<double>& f_targets,
                                const std::optional<std::vector<double>>& g_targets, const TruncationConfig& trunc,
                                int grid, bool with_modulus) {
  SaddleResiduals r;
  const std::vector<double> b = increment_weights(spec, N, a);
  const int P = N + spec.span();
  const int M = static_cast<int>(cand.p1.size()) - 1;
  const int L = window(trunc, P, std::max(M, 0));
  const OperatorSet ops = candidate_operators(cand.f0, cand.g0, spec, N, L);

  const Eigen::VectorXd bv = to_vector(b, L);
  const Eigen::VectorXd c = to_vector(cand.p1_vec, L);
  const Eigen::VectorXd e = to_vector(cand.p2_vec, L);
  std::tie(r.eq_f, r.eq_e) = coupled_residuals(ops, c, e, bv);
  Eigen::VectorXd e_alt = Eigen::VectorXd::Zero(L);
  for (int m = 0; m <= std::min(M, P); ++m) e_alt[P - m] = cand.p2[static_cast<std::size_t>(m)];
  r.eq_e_alt = (ops.Gc * c - ops.Ge * e_alt).norm();
  r.b_norm = bv.norm();
  {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(ops.Gc).singularValues();
    const double lo = sv.size() > 0 ? sv[sv.size() - 1] : 0.0;
    r.cond_Gc = lo > 0.0 ? sv[0] / lo : std::numeric_limits<double>::infinity();
  }

  for (std::size_t m = 0; m < f_targets.size(); ++m)
    r.moment_f.push_back(std::abs(cand.f0.at(static_cast<long>(m)) - f_targets[m]));
  if (g_targets)
    for (std::size_t m = 0; m < g_targets->size(); ++m)
      r.moment_g.push_back(std::abs(cand.g0.at(static_cast<long>(m)) - (*g_targets)[m]));
  if (M > P)
    for (int k = P; k <= M; ++k)
      r.tail_equality = std::max(r.tail_equality, std::abs(cand.p1[static_cast<std::size_t>(k)] -
                                                           cand.p2[static_cast<std::size_t>(k)]));

  if (!with_modulus) return r;
  r.grid = grid;
  try {
    const ComposedOperators comp = compose(ops, trunc.solver);
    const CoefficientSolution cs = solve_coefficients(comp, ops, b, trunc.solver);
    for (int j = 0; j < grid; ++j) {
      const double lambda = -kPi + 2.0 * kPi * j / grid;
      const cd C = trig_series(cs.c, 0, lambda);
      const cd E = std::polar(1.0, P * lambda) * std::conj(trig_series(cs.e, 0, lambda));
      const double t1 = std::norm(trig_series(cand.p1, 0, lambda));
      const double t2 = std::norm(trig_series(cand.p2, 0, lambda));
      r.modulus_f = std::max(r.modulus_f, std::abs(std::norm(C) - t1));
      r.modulus_g = std::max(r.modulus_g, std::abs(std::norm(C - E) - t2));
    }
    r.modulus_evaluated = true;
  } catch (const Error& ex) {
    r.modulus_error = ex.what();
  }
  return r;
}

bool residuals_ok(const SaddleResiduals& r, double tol) {
  const double bound = tol * std::max(1.0, r.b_norm);
  return r.eq_f <= bound && r.eq_e <= bound && r.worst_moment() <= tol && r.tail_equality <= tol;
}

std::optional<std::vector<double>> try_factorize(const FourierTable& t) {
  try {
    return fejer_riesz_factorize(trimmed(t.coeffs));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Bisection for p1 > 0 on (num / p1) = target.
double bisect_p1(double num, double target) {
  if (!(num > 0.0) || !(target > 0.0))
    raise(ErrorCode::kPositivityViolation, "moment equation has no positive multiplier");
  auto h = [&](double p) { return num / p - target; };
  double lo = 1.0, hi = 1.0;
  while (h(lo) < 0.0) lo *= 0.5;
  while (h(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void fill_vectors(LeastFavorableSolution& lf, int P) {
  lf.p1_vec = coupled_p1_vector(lf.p1, P);
  lf.p2_vec = coupled_p2_vector(lf.p1, lf.p2, P);
  lf.moments_f.clear();
  lf.moments_g.clear();
  for (std::size_t m = 0; m < lf.p1.size(); ++m) {
    lf.moments_f.push_back(lf.f0.at(static_cast<long>(m)));
    lf.moments_g.push_back(lf.g0.at(static_cast<long>(m)));
  }
}

}  // namespace

DensityClass DensityClass::d0(double P1, std::optional<double> P2) {
  DensityClass c;
  c.kind = ClassKind::kD0;
  c.P1 = P1;
  c.P2 = P2;
  c.validate();
  return c;
}

DensityClass DensityClass::dm(std::vector<double> r1, std::optional<std::vector<double>> r2) {
  DensityClass c;
  c.kind = ClassKind::kDM;
  c.r1 = std::move(r1);
  c.r2 = std::move(r2);
  c.validate();
  return c;
}

std::vector<double> DensityClass::f_moments() const { return kind == ClassKind::kD0 ? std::vector<double>{P1} : r1; }

std::optional<std::vector<double>> DensityClass::g_moments() const {
  if (kind == ClassKind::kD0) return P2 ? std::optional<std::vector<double>>(std::vector<double>{*P2}) : std::nullopt;
  return r2;
}

void DensityClass::validate() const {
  if (kind == ClassKind::kD0) {
    if (!(P1 > 0.0)) raise(ErrorCode::kInvalidArgument, "P1 must be positive");
    if (P2 && !(*P2 > 0.0)) raise(ErrorCode::kInvalidArgument, "P2 must be positive");
    return;
  }
  if (r1.empty()) raise(ErrorCode::kInvalidArgument, "r1 must hold M+1 >= 1 moments");
  for (double x : r1)
    if (!(x > 0.0)) raise(ErrorCode::kInvalidArgument, "r1 moments must be strictly positive");
  if (r2) {
    if (r2->size() != r1.size()) raise(ErrorCode::kInvalidArgument, "r2 must have the same length as r1");
    for (double x : *r2)
      if (!(x > 0.0)) raise(ErrorCode::kInvalidArgument, "r2 moments must be strictly positive");
  }
}

double SaddleResiduals::worst_moment() const {
  double w = 0.0;
  for (double x : moment_f) w = std::max(w, x);
  for (double x : moment_g) w = std::max(w, x);
  return w;
}

double pair_objective(const FourierTable& f, const FourierTable& g, std::span<const double> c,
                        std::span<const double> e, const IncrementSpec& spec, int N, const QuadratureConfig& q) {
  spec.validate();
  const int P = N + spec.span();
  const auto bp = singular_points(spec.mu);
  return spectral_mse(c, e, P, [&](double x) { return f.evaluate(x); }, [&](double x) { return g.evaluate(x); }, bp,
                      static_cast<double>(std::max(f.K(), g.K())), q);
}

double saddle_objective(const EstimateSolution& h0, const DensityModel& f, const DensityModel& g,
                        const QuadratureConfig& q) {
  const int P = h0.horizon();
  auto u0f = [&](double x) { return h0.f ? h0.f->weighted_inverse(x) : h0.f_table.evaluate(x); };
  auto u0g = [&](double x) { return h0.g ? h0.g->weighted_inverse(x) : h0.g_table.evaluate(x); };
  auto acc = [&](double lambda, double w, Eigen::VectorXd& out) {
    const cd C = trig_series(h0.c, 0, lambda);
    const cd E = std::polar(1.0, P * lambda) * std::conj(trig_series(h0.e, 0, lambda));
    const double a0 = u0f(lambda), b0 = u0g(lambda);
    const double tf = std::norm(C) * a0 * a0, tg = std::norm(C - E) * b0 * b0;
    out[0] += w * ((tf == 0.0 ? 0.0 : tf / f.weighted_inverse(lambda)) + (tg == 0.0 ? 0.0 : tg / g.weighted_inverse(lambda)));
  };
  std::vector<double> bp = merge_breakpoints(f.breakpoints(), g.breakpoints());
  if (h0.f) bp = merge_breakpoints(bp, h0.f->breakpoints());
  if (h0.g) bp = merge_breakpoints(bp, h0.g->breakpoints());
  double hint = std::max(f.bandwidth_hint(), g.bandwidth_hint());
  if (h0.f) hint += h0.f->bandwidth_hint();
  if (h0.g) hint += h0.g->bandwidth_hint();
  const double bw = 2.0 * static_cast<double>(std::max(h0.c.size(), h0.e.size())) + P + 2.0 * hint;
  const Eigen::VectorXd v = integrate_checked<Eigen::VectorXd>(acc, 1, bp, bandwidth_panels(bw, q.order), q, 0.0,
                                                               nullptr, true, "saddle objective");
  return v[0];
}

std::vector<double> coupled_p1_vector(std::span<const double> p1, int horizon) {
  std::vector<double> v(std::max<std::size_t>(p1.size(), static_cast<std::size_t>(horizon) + 1), 0.0);
  std::copy(p1.begin(), p1.end(), v.begin());
  return v;
}

std::vector<double> coupled_p2_vector(std::span<const double> p1, std::span<const double> p2, int horizon) {
  std::vector<double> v(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (int j = 0; j <= horizon; ++j) {
    const auto m = static_cast<std::size_t>(horizon - j);
    if (m < p1.size()) v[static_cast<std::size_t>(j)] = p1[m] - (m < p2.size() ? p2[m] : 0.0);
  }
  return v;
}

PositivityScan scan_trig_positivity(std::span<const double> coeffs, int nodes) {
  if (coeffs.empty()) raise(ErrorCode::kInvalidArgument, "empty coefficient table");
  if (nodes < 8) raise(ErrorCode::kInvalidArgument, "positivity scan needs at least 8 nodes");
  PositivityScan s;
  double deriv = 0.0;
  s.scale = std::abs(coeffs[0]);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    s.scale += 2.0 * std::abs(coeffs[k]);
    deriv += 2.0 * static_cast<double>(k) * std::abs(coeffs[k]);
  }
  const FourierTable t{std::vector<double>(coeffs.begin(), coeffs.end())};
  const double h = 2.0 * kPi / nodes;
  const double tol = 1e-12 * s.scale;
  std::vector<double> vals(static_cast<std::size_t>(nodes) + 1);
  s.min_value = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= nodes; ++j) {
    const double lambda = j == nodes ? kPi : -kPi + h * j;
    vals[static_cast<std::size_t>(j)] = t.evaluate(lambda);
    if (vals[static_cast<std::size_t>(j)] < s.min_value) {
      s.min_value = vals[static_cast<std::size_t>(j)];
      s.argmin = lambda;
    }
  }
  // between nodes T >= (T(a) + T(b))/2 - |T'|max h/2; refine where that bound is not conclusive
  for (int j = 0; j < nodes; ++j) {
    const double lower = 0.5 * (vals[static_cast<std::size_t>(j)] + vals[static_cast<std::size_t>(j) + 1]) - 0.5 * deriv * h;
    if (lower >= -tol) continue;
    const int sub = 256;
    for (int i = 1; i < sub; ++i) {
      const double lambda = -kPi + h * (j + static_cast<double>(i) / sub);
      const double v = t.evaluate(lambda);
      if (v < s.min_value) {
        s.min_value = v;
        s.argmin = lambda;
      }
    }
  }
  s.nonnegative = s.min_value >= -tol;
  return s;
}

DensityModel assemble_density(const FourierTable& coeffs, const IncrementSpec& spec) {
  const PositivityScan s = scan_trig_positivity(coeffs.coeffs);
  if (!s.nonnegative)
    raise(ErrorCode::kPositivityViolation, "weighted inverse is negative (" + std::to_string(s.min_value) +
                                               ") at lambda=" + std::to_string(s.argmin));
  return DensityModel::weighted_inverse_trig(spec, coeffs.coeffs);
}

LeastFavorableSolution white_noise_least_favorable(const IncrementSpec& spec, int N, std::span<const double> a,
                                                   double P1, double noise_sigma2) {
  if (!(P1 > 0.0)) raise(ErrorCode::kInvalidArgument, "P1 must be positive");
  if (!(noise_sigma2 > 0.0)) raise(ErrorCode::kInvalidArgument, "noise variance must be positive");
  const std::vector<double> b = increment_weights(spec, N, a);
  if (!(b[0] > 0.0))
    raise(ErrorCode::kPositivityViolation, "(D a)_0 = " + std::to_string(b[0]) + " is not positive");
  LeastFavorableSolution lf;
  lf.spec = spec;
  lf.N = N;
  lf.method = "white-noise-closed-form";
  lf.f0.coeffs.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) lf.f0.coeffs[k] = P1 * b[k] / b[0];
  lf.g0.coeffs = {1.0 / noise_sigma2};
  assemble_density(lf.f0, spec);
  lf.p1 = {b[0] / P1};
  lf.p2 = {0.0};
  fill_vectors(lf, N + spec.span());
  lf.gamma = try_factorize(lf.f0);
  lf.zeta = try_factorize(lf.g0);
  lf.residuals = verify_saddle_D0(lf, spec, N, a, DensityClass::d0(P1, lf.g0.at(0)));
  lf.iterations = 0;
  lf.converged = true;
  lf.valid = residuals_ok(lf.residuals, 1e-8);
  return lf;
}

SaddleResiduals verify_saddle_D0(const LeastFavorableSolution& candidate, const IncrementSpec& spec, int N,
                                 std::span<const double> a, const DensityClass& cls, const TruncationConfig& trunc,
                                 int grid) {
  if (cls.kind != ClassKind::kD0) raise(ErrorCode::kConfiguration, "verify_saddle_D0 needs a D0 class");
  return evaluate_saddle(candidate, spec, N, a, cls.f_moments(), cls.g_moments(), trunc, grid, true);
}

SaddleResiduals verify_saddle_DM(const LeastFavorableSolution& candidate, const IncrementSpec& spec, int N,
                                 std::span<const double> a, const DensityClass& cls, const TruncationConfig& trunc,
                                 int grid) {
  if (cls.kind != ClassKind::kDM) raise(ErrorCode::kConfiguration, "verify_saddle_DM needs a DM class");
  return evaluate_saddle(candidate, spec, N, a, cls.f_moments(), cls.g_moments(), trunc, grid, true);
}

LeastFavorableSolution solve_known_g(const IncrementSpec& spec, int N, std::span<const double> a,
                                     const FourierTable& g, const DensityClass& cls, const TruncationConfig& trunc) {
  cls.validate();
  const std::vector<double> b = increment_weights(spec, N, a);
  const std::vector<double> r = cls.f_moments();
  const int P = N + spec.span();
  const int M = static_cast<int>(r.size()) - 1;
  const int L = window(trunc, P, M);
  if (g.coeffs.empty() || !(g.coeffs[0] > 0.0)) raise(ErrorCode::kInvalidArgument, "g table must have g(0) > 0");

  const OperatorSet ops = candidate_operators(FourierTable{{0.0}}, g, spec, N, L);
  Eigen::PartialPivLU<Eigen::MatrixXd> ge_lu(ops.Ge);
  if (!(condition_number(ge_lu) <= trunc.solver.condition_bound))
    raise(ErrorCode::kSingularOperator, "Ge is singular for the given g");
  const Eigen::MatrixXd Q = ops.Gc * ge_lu.solve(ops.Gc) - ops.Ge;
  const Eigen::VectorXd bv = to_vector(b, L);

  // sum_k p(k) f(|l - k|) = b(l) + (Q p)_l, l = 0..L-1, unknown f(0..L-1)
  auto solve_f = [&](const std::vector<double>& p) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(L, L);
    for (int l = 0; l < L; ++l)
      for (int k = 0; k <= M; ++k) T(l, std::abs(l - k)) += p[static_cast<std::size_t>(k)];
    const Eigen::VectorXd rhs = bv + Q * to_vector(p, L);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(T);
    if (!(condition_number(lu) <= trunc.solver.condition_bound))
      raise(ErrorCode::kSingularOperator, "coefficient system for f0 is singular");
    return Eigen::VectorXd(lu.solve(rhs));
  };
  auto defect = [&](const std::vector<double>& p) {
    const Eigen::VectorXd f = solve_f(p);
    Eigen::VectorXd d(M + 1);
    for (int m = 0; m <= M; ++m) d[m] = f[m] - r[static_cast<std::size_t>(m)];
    return d;
  };

  std::vector<double> p(static_cast<std::size_t>(M) + 1, 0.0);
  p[0] = bisect_p1(b[0], r[0] - Q(0, 0));
  bool converged = false;
  int it = 0;
  double rscale = 0.0;
  for (double x : r) rscale = std::max(rscale, std::abs(x));
  for (; it < 60; ++it) {
    const Eigen::VectorXd d = defect(p);
    if (d.cwiseAbs().maxCoeff() <= 1e-13 * rscale) {
      converged = true;
      break;
    }
    Eigen::MatrixXd J(M + 1, M + 1);
    for (int k = 0; k <= M; ++k) {
      std::vector<double> q = p;
      const double h = 1e-7 * std::max(1.0, std::abs(p[static_cast<std::size_t>(k)]));
      q[static_cast<std::size_t>(k)] += h;
      J.col(k) = (defect(q) - d) / h;
    }
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-d);
    double t = 1.0;
    double base = d.norm();
    for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
      std::vector<double> q = p;
      for (int k = 0; k <= M; ++k) q[static_cast<std::size_t>(k)] += t * step[k];
      try {
        if (defect(q).norm() < base || ls == 29) {
          p = q;
          break;
        }
      } catch (const Error&) {
      }
    }
  }

  const Eigen::VectorXd f = solve_f(p);
  LeastFavorableSolution lf;
  lf.spec = spec;
  lf.N = N;
  lf.method = cls.kind == ClassKind::kD0 ? "known-g-D0" : "known-g-DM";
  lf.f0 = trimmed(std::vector<double>(f.data(), f.data() + f.size()));
  lf.g0 = trimmed(g.coeffs);
  assemble_density(lf.f0, spec);
  lf.p1 = p;
  const OperatorSet full = candidate_operators(lf.f0, lf.g0, spec, N, L);
  lf.p2 = fit_p2(full, lf.p1, P, L);
  fill_vectors(lf, P);
  lf.gamma = try_factorize(lf.f0);
  lf.zeta = lf.g0.K() <= 256 ? try_factorize(lf.g0) : std::nullopt;
  lf.residuals = evaluate_saddle(lf, spec, N, a, r, std::nullopt, trunc, 1024, true);
  lf.iterations = it;
  lf.converged = converged;
  lf.valid = converged && residuals_ok(lf.residuals, 1e-8);
  return lf;
}

LeastFavorableSolution solve_D0_fixed_point(const IncrementSpec& spec, int N, std::span<const double> a,
                                            const DensityClass& cls, const TruncationConfig& trunc,
                                            const FixedPointOptions& opt,
                                            const std::optional<LeastFavorableSolution>& start) {
  cls.validate();
  if (cls.kind != ClassKind::kD0 || !cls.P2) raise(ErrorCode::kConfiguration, "fixed point needs a D0 class with P1 and P2");
  if (!(opt.damping > 0.0 && opt.damping <= 1.0)) raise(ErrorCode::kInvalidArgument, "damping must lie in (0, 1]");
  if (opt.max_iterations < 1) raise(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  const std::vector<double> b = increment_weights(spec, N, a);
  const int P = N + spec.span();
  const int L = window(trunc, P, 0);
  const double P1 = cls.P1, P2 = *cls.P2;

  LeastFavorableSolution lf;
  lf.spec = spec;
  lf.N = N;
  lf.method = "fixed-point-D0";
  lf.f0 = start ? start->f0 : FourierTable{{P1}};
  lf.g0 = start ? start->g0 : FourierTable{{P2}};
  lf.p1 = {start && !start->p1.empty() ? start->p1[0] : b[0] / P1};
  lf.p2 = {0.0};

  for (int it = 1; it <= opt.max_iterations; ++it) {
    const OperatorSet ops = candidate_operators(lf.f0, lf.g0, spec, N, L);
    const double p2 = fit_p2(ops, lf.p1, P, L)[0];
    const double p1 = bisect_p1(b[0] - p2 * lf.g0.at(0), P1);
    const std::size_t len = std::max(lf.f0.coeffs.size(), std::max(b.size(), lf.g0.coeffs.size()));
    std::vector<double> f(len, 0.0);
    for (std::size_t l = 0; l < len; ++l) {
      const double bl = l < b.size() ? b[l] : 0.0;
      const double target = (bl - p2 * lf.g0.at(static_cast<long>(l))) / p1;
      f[l] = (1.0 - opt.damping) * lf.f0.at(static_cast<long>(l)) + opt.damping * target;
    }
    lf.f0 = trimmed(std::move(f));
    const double scale = P2 / lf.g0.at(0);
    for (double& x : lf.g0.coeffs) x *= scale;
    assemble_density(lf.f0, spec);
    assemble_density(lf.g0, spec);
    lf.p1 = {p1};
    lf.p2 = {p2};
    fill_vectors(lf, P);
    lf.iterations = it;
    const SaddleResiduals r =
        evaluate_saddle(lf, spec, N, a, cls.f_moments(), cls.g_moments(), trunc, 0, false);
    if (residuals_ok(r, opt.tolerance)) {
      lf.converged = true;
      break;
    }
  }
  lf.residuals = verify_saddle_D0(lf, spec, N, a, cls, trunc);
  lf.gamma = try_factorize(lf.f0);
  lf.zeta = try_factorize(lf.g0);
  lf.valid = lf.converged && residuals_ok(lf.residuals, opt.tolerance);
  return lf;
}

EstimateSolution minimax_characteristic(const LeastFavorableSolution& lf, const IncrementSpec& spec, int N,
                                        std::span<const double> a, const TruncationConfig& trunc) {
  if (!lf.valid) raise(ErrorCode::kInvalidArgument, "least-favorable solution is not marked valid");
  if (!(lf.spec == spec) || lf.N != N) raise(ErrorCode::kConfiguration, "least-favorable solution belongs to another problem");
  InterpolationProblem prob{spec, std::vector<double>(a.begin(), a.end()), assemble_density(lf.f0, spec),
                            assemble_density(lf.g0, spec), trunc};
  EstimateSolution sol = solve_functional(prob);
  sol.minimax = true;
  return sol;
}

FourierTable perturb_admissible(const FourierTable& u, std::uint64_t seed, double amplitude, int degree) {
  if (!(amplitude >= 0.0 && amplitude < 1.0)) raise(ErrorCode::kInvalidArgument, "amplitude must lie in [0, 1)");
  if (degree < 1) raise(ErrorCode::kInvalidArgument, "perturbation degree must be >= 1");
  if (u.coeffs.empty()) raise(ErrorCode::kInvalidArgument, "empty table");
  NormalSource rng(seed);
  std::vector<double> rho(static_cast<std::size_t>(degree) + 1, 0.0);
  double s = 0.0;
  for (int k = 1; k <= degree; ++k) {
    rho[static_cast<std::size_t>(k)] = 2.0 * rng.uniform() - 1.0;
    s += std::abs(rho[static_cast<std::size_t>(k)]);
  }
  // r(lambda) = 1 + amplitude sum rho_k cos(k lambda) / s >= 1 - amplitude
  const long K = static_cast<long>(u.K());
  std::vector<double> w(static_cast<std::size_t>(K + degree) + 1, 0.0);
  for (long m = 0; m <= K + degree; ++m) {
    double acc = u.at(m);
    for (int k = 1; k <= degree; ++k) {
      const double r = 0.5 * amplitude * rho[static_cast<std::size_t>(k)] / s;
      acc += r * (u.at(m - k) + u.at(m + k));
    }
    w[static_cast<std::size_t>(m)] = acc;
  }
  const double norm = u.at(0) / w[0];
  for (double& x : w) x *= norm;
  return FourierTable{std::move(w)};
}

}  // namespace stinc

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

#include "stinc/interpolate.hpp"

#include <cmath>
#include <numbers>

namespace stinc {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

struct Prepared {
  int N = 0;
  int P = 0;
  int L = 0;
  FourierTable ft;
  FourierTable gt;
  OperatorSet ops;
  ComposedOperators comp;
};

void check_models(const IncrementSpec& spec, const DensityModel& f, const DensityModel& g) {
  spec.validate();
  if (!(f.spec() == spec) || !(g.spec() == spec))
    raise(ErrorCode::kConfiguration, "density models are paired with a different increment spec");
}

Prepared prepare(const IncrementSpec& spec, int N, const DensityModel& f, const DensityModel& g,
                 const TruncationConfig& trunc) {
  check_models(spec, f, g);
  Prepared p;
  p.N = N;
  p.P = N + spec.span();
  p.L = trunc.resolve(p.P);
  const auto K = static_cast<std::size_t>(p.P + 2 * p.L);
  p.ft = fourier_coefficients(f, K, trunc.quadrature);
  p.gt = fourier_coefficients(g, K, trunc.quadrature);
  p.ops = build_operator_set(p.ft, p.gt, spec, N, p.L);
  p.comp = compose(p.ops, trunc.solver);
  return p;
}

// Coefficients of C - E on indices first..first+size-1.
std::vector<double> difference_sequence(std::span<const double> c, std::span<const double> e, int P, long& first) {
  const long L = static_cast<long>(c.size());
  first = std::min<long>(0, P - static_cast<long>(e.size()) + 1);
  const long last = std::max<long>(L - 1, P);
  std::vector<double> d(static_cast<std::size_t>(last - first + 1), 0.0);
  for (long k = 0; k < L; ++k) d[static_cast<std::size_t>(k - first)] += c[static_cast<std::size_t>(k)];
  for (std::size_t j = 0; j < e.size(); ++j) d[static_cast<std::size_t>(P - static_cast<long>(j) - first)] -= e[j];
  return d;
}

double toeplitz_form(std::span<const double> x, const FourierTable& t) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) row += t.at(static_cast<long>(j) - static_cast<long>(i)) * x[j];
    s += x[i] * row;
  }
  return s;
}

EstimateSolution finish(const IncrementSpec& spec, const Prepared& p, std::span<const double> b, std::vector<double> c,
                        std::vector<double> e, const DensityModel& f, const DensityModel& g,
                        const TruncationConfig& trunc) {
  EstimateSolution sol;
  sol.spec = spec;
  sol.N = p.N;
  sol.L = p.L;
  sol.b.assign(b.begin(), b.end());
  sol.c = std::move(c);
  sol.e = std::move(e);
  sol.v = boundary_weights(spec, sol.b);
  sol.f_table = p.ft;
  sol.g_table = p.gt;
  sol.f = f;
  sol.g = g;
  sol.trunc = trunc;

  Eigen::VectorXd bv = Eigen::VectorXd::Zero(p.L);
  for (std::size_t i = 0; i < b.size(); ++i) bv[static_cast<Eigen::Index>(i)] = b[i];
  const Eigen::Map<const Eigen::VectorXd> cv(sol.c.data(), p.L), ev(sol.e.data(), p.L);
  auto& d = sol.diagnostics;
  std::tie(d.residual_c, d.residual_e) = coupled_residuals(p.ops, cv, ev, bv);
  d.b_norm = bv.norm();
  d.cond_Ge = p.comp.cond_Ge;
  d.cond_Fmu = p.comp.cond_Fmu;
  d.table_K = p.ft.K();
  d.truncated_hankel_entries = p.ops.truncated_hankel_entries;
  const double bound = trunc.solver.residual_tolerance * d.b_norm;
  d.valid = d.residual_c <= bound && d.residual_e <= bound;
  if (!d.valid)
    raise(ErrorCode::kResidualFailure, "coupled system residuals (" + std::to_string(d.residual_c) + ", " +
                                           std::to_string(d.residual_e) + ") exceed " + std::to_string(bound));

  auto bp = merge_breakpoints(f.breakpoints(), g.breakpoints());
  sol.mse = spectral_mse(sol.c, sol.e, p.P, [&](double x) { return f.weighted_inverse(x); },
                         [&](double x) { return g.weighted_inverse(x); }, bp,
                         std::max(f.bandwidth_hint(), g.bandwidth_hint()), trunc.quadrature, &d.mse_quadrature);

  long first = 0;
  const auto diff = difference_sequence(sol.c, sol.e, p.P, first);
  d.mse_quadratic = toeplitz_form(sol.c, p.ft) + toeplitz_form(diff, p.gt);
  d.mse_inner = bv.dot(cv);
  return sol;
}

double wf_of(const EstimateSolution& sol, double lambda) {
  return sol.f ? sol.f->weighted_inverse(lambda) : sol.f_table.evaluate(lambda);
}

double wg_of(const EstimateSolution& sol, double lambda) {
  return sol.g ? sol.g->weighted_inverse(lambda) : sol.g_table.evaluate(lambda);
}

std::vector<double> solution_breakpoints(const EstimateSolution& sol) {
  std::vector<double> bp = singular_points(sol.spec.mu);
  if (sol.f) bp = merge_breakpoints(bp, sol.f->breakpoints());
  if (sol.g) bp = merge_breakpoints(bp, sol.g->breakpoints());
  return bp;
}

double solution_hint(const EstimateSolution& sol) {
  double h = 0.0;
  if (sol.f) h = std::max(h, sol.f->bandwidth_hint());
  if (sol.g) h = std::max(h, sol.g->bandwidth_hint());
  return h;
}

}  // namespace

int TruncationConfig::resolve(int horizon) const {
  const int out = L > 0 ? L : 4 * (horizon + 1) + 64;
  if (out <= horizon) raise(ErrorCode::kInvalidArgument, "truncation L must exceed N+mu*n");
  return out;
}

std::complex<double> trig_series(std::span<const double> coef, long first, double lambda) {
  const cd z = std::polar(1.0, lambda);
  cd s = 0.0;
  for (std::size_t i = coef.size(); i-- > 0;) s = s * z + coef[i];
  return s * std::polar(1.0, static_cast<double>(first) * lambda);
}

double spectral_mse(std::span<const double> c, std::span<const double> e, int horizon,
                    const std::function<double(double)>& wf, const std::function<double(double)>& wg,
                    std::span<const double> breakpoints, double extra_bandwidth, const QuadratureConfig& q,
                    QuadratureReport* report) {
  bool zero = true;
  for (double x : c) zero = zero && x == 0.0;
  for (double x : e) zero = zero && x == 0.0;
  if (zero) return 0.0;
  auto acc = [&](double lambda, double w, Eigen::VectorXd& out) {
    const cd C = trig_series(c, 0, lambda);
    const cd E = std::polar(1.0, horizon * lambda) * std::conj(trig_series(e, 0, lambda));
    out[0] += w * (std::norm(C) * wf(lambda) + std::norm(C - E) * wg(lambda));
  };
  const double bw = 2.0 * static_cast<double>(std::max(c.size(), e.size())) + horizon + extra_bandwidth;
  const Eigen::VectorXd v =
      integrate_checked<Eigen::VectorXd>(acc, 1, breakpoints, bandwidth_panels(bw, q.order), q, 0.0, report, true, "mse");
  return v[0];
}

EstimateSolution solve_increment_functional(const IncrementSpec& spec, std::span<const double> b, const DensityModel& f,
                                            const DensityModel& g, const TruncationConfig& trunc) {
  if (b.empty()) raise(ErrorCode::kInvalidArgument, "increment weights must have length N+1 >= 1");
  const int N = static_cast<int>(b.size()) - 1;
  const Prepared p = prepare(spec, N, f, g, trunc);
  const CoefficientSolution cs = solve_coefficients(p.comp, p.ops, b, trunc.solver);
  return finish(spec, p, b, cs.c, cs.e, f, g, trunc);
}

EstimateSolution solve_functional(const InterpolationProblem& problem) {
  const IncrementWeights w = functional_decomposition(problem.spec, problem.a);
  EstimateSolution sol = solve_increment_functional(problem.spec, w.b, problem.f, problem.g, problem.trunc);
  sol.v = w.v;
  return sol;
}

EstimateSolution solve_single_increment(const IncrementSpec& spec, int m, int N, const DensityModel& f,
                                        const DensityModel& g, const TruncationConfig& trunc) {
  if (N < 0) raise(ErrorCode::kInvalidArgument, "horizon N must be >= 0");
  if (m < 0 || m > N) raise(ErrorCode::kIndexOutOfRange, "increment index m=" + std::to_string(m) + " outside [0, N]");
  const Prepared p = prepare(spec, N, f, g, trunc);
  const Eigen::VectorXd c = p.comp.Fmu_inv.col(m);
  const Eigen::VectorXd e = p.comp.Gmu.col(m);
  std::vector<double> b(static_cast<std::size_t>(N) + 1, 0.0);
  b[static_cast<std::size_t>(m)] = 1.0;
  return finish(spec, p, b, std::vector<double>(c.data(), c.data() + c.size()),
                std::vector<double>(e.data(), e.data() + e.size()), f, g, trunc);
}

std::complex<double> increment_characteristic(const EstimateSolution& sol, int which, double lambda) {
  if (which != 1 && which != 2) raise(ErrorCode::kInvalidArgument, "characteristic index must be 1 or 2");
  const cd C = trig_series(sol.c, 0, lambda);
  const cd E = std::polar(1.0, sol.horizon() * lambda) * std::conj(trig_series(sol.e, 0, lambda));
  const cd D = C - E;
  if (which == 2) return D == 0.0 ? cd(0.0) : D * wg_of(sol, lambda);
  const cd B = trig_series(sol.b, 0, lambda);
  cd out = B;
  if (C != 0.0) out -= C * wf_of(sol, lambda);
  if (D != 0.0) out -= D * wg_of(sol, lambda);
  return out;
}

std::complex<double> evaluate_characteristic(const EstimateSolution& sol, int which, double lambda) {
  const int mu = sol.spec.mu;
  const double x = mu * lambda;
  const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 24.0 : 2.0 * std::sin(0.5 * x) / x;
  const cd kappa = std::pow(std::polar(mu * sinc, -0.5 * x), sol.spec.n);
  return kappa * increment_characteristic(sol, which, lambda);
}

TimeWeights extract_time_weights(const EstimateSolution& sol, int tail, int nodes) {
  const int P = sol.horizon();
  TimeWeights tw;
  tw.tail = tail > 0 ? tail : 8 * sol.L;
  int M = std::max(nodes, 16);
  while (M < 2 * (2 * tw.tail + P + 1)) M *= 2;
  tw.nodes = M;
  const long lo = -tw.tail, hi = P + tw.tail;
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<cd> s1(width, 0.0), s2(width, 0.0);
  for (int j = 0; j < M; ++j) {
    const double lambda = -kPi + 2.0 * kPi * (j + 0.5) / M;
    const cd h1 = increment_characteristic(sol, 1, lambda);
    const cd h2 = increment_characteristic(sol, 2, lambda);
    const cd step = std::polar(1.0, -lambda);
    cd z = std::polar(1.0, -static_cast<double>(lo) * lambda);
    for (std::size_t i = 0; i < width; ++i) {
      s1[i] += h1 * z;
      s2[i] += h2 * z;
      z *= step;
    }
  }
  for (std::size_t i = 0; i < width; ++i) {
    s1[i] /= static_cast<double>(M);
    s2[i] /= static_cast<double>(M);
  }
  auto idx = [&](long k) { return static_cast<std::size_t>(k - lo); };
  for (long k = -1; k >= lo; --k) tw.past.push_back(s1[idx(k)].real());
  for (long k = P + 1; k <= hi; ++k) tw.future.push_back(s2[idx(k)].real());
  for (double w : tw.past) tw.max_weight = std::max(tw.max_weight, std::abs(w));
  for (double w : tw.future) tw.max_weight = std::max(tw.max_weight, std::abs(w));
  for (long k = 0; k <= P; ++k) tw.forbidden_leak = std::max({tw.forbidden_leak, std::abs(s1[idx(k)]), std::abs(s2[idx(k)])});
  for (long k = P + 1; k <= hi; ++k) tw.outer_leak = std::max(tw.outer_leak, std::abs(s1[idx(k)]));
  for (long k = lo; k < 0; ++k) tw.outer_leak = std::max(tw.outer_leak, std::abs(s2[idx(k)]));

  double bmax = 0.0;
  for (double x : sol.b) bmax = std::max(bmax, std::abs(x));
  const double bound = 1e-6 * std::max(tw.max_weight, bmax);
  if (tw.forbidden_leak > bound)
    raise(ErrorCode::kSupportLeakage, "forbidden-band coefficient " + std::to_string(tw.forbidden_leak) +
                                          " exceeds " + std::to_string(bound));
  return tw;
}

void attach_time_weights(EstimateSolution& sol, int tail) {
  TimeWeights tw = extract_time_weights(sol, tail);
  sol.past_weights = std::move(tw.past);
  sol.future_weights = std::move(tw.future);
}

std::vector<OrthogonalityRow> orthogonality_residuals(const EstimateSolution& sol, std::span<const int> lags) {
  const int P = sol.horizon();
  std::vector<OrthogonalityRow> rows(lags.size());
  std::vector<int> idx_signal, idx_noise;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    rows[i].l = lags[i];
    if (lags[i] >= 0) idx_signal.push_back(static_cast<int>(i));
    if (lags[i] <= P) idx_noise.push_back(static_cast<int>(i));
  }
  const auto n_signal = static_cast<Eigen::Index>(idx_signal.size());
  const auto dim = n_signal + static_cast<Eigen::Index>(idx_noise.size());
  if (dim == 0) return rows;
  auto acc = [&](double lambda, double w, Eigen::VectorXcd& out) {
    const cd h1 = increment_characteristic(sol, 1, lambda);
    const cd h2 = increment_characteristic(sol, 2, lambda);
    for (Eigen::Index i = 0; i < n_signal; ++i)
      out[i] += w * h1 * std::polar(1.0, -lags[static_cast<std::size_t>(idx_signal[static_cast<std::size_t>(i)])] * lambda);
    for (Eigen::Index i = n_signal; i < dim; ++i)
      out[i] += w * h2 * std::polar(1.0, -lags[static_cast<std::size_t>(idx_noise[static_cast<std::size_t>(i - n_signal)])] * lambda);
  };
  int maxlag = 0;
  for (int l : lags) maxlag = std::max(maxlag, std::abs(l));
  const double bw = 2.0 * sol.L + P + maxlag + solution_hint(sol);
  double floor = 0.0;
  for (double x : sol.b) floor = std::max(floor, std::abs(x));
  const Eigen::VectorXcd r = integrate_checked<Eigen::VectorXcd>(acc, dim, solution_breakpoints(sol),
                                                                 bandwidth_panels(bw, sol.trunc.quadrature.order),
                                                                 sol.trunc.quadrature, floor, nullptr, false, "orthogonality");
  for (Eigen::Index i = 0; i < n_signal; ++i) rows[static_cast<std::size_t>(idx_signal[static_cast<std::size_t>(i)])].signal_residual = std::abs(r[i]);
  for (Eigen::Index i = n_signal; i < dim; ++i)
    rows[static_cast<std::size_t>(idx_noise[static_cast<std::size_t>(i - n_signal)])].noise_residual = std::abs(r[i]);
  return rows;
}

}  // namespace stinc

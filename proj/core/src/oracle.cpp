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

#include "stinc/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "stinc/random.hpp"

namespace stinc {

namespace {

struct Joint {
  Eigen::MatrixXd gram;   // observations
  Eigen::VectorXd cross;  // cov(observation, target)
  double var = 0.0;       // var(target)
  int T = 0;
};

Joint build_joint(const IncrementSpec& spec, std::span<const double> b, const DensityModel& f, const DensityModel& g,
                  const OracleConfig& cfg) {
  cfg.validate();
  spec.validate();
  if (!(f.spec() == spec) || !(g.spec() == spec))
    raise(ErrorCode::kConfiguration, "density models are paired with a different increment spec");
  if (b.empty()) raise(ErrorCode::kInvalidArgument, "increment weights must be non-empty");
  const int N = static_cast<int>(b.size()) - 1;
  const int P = N + spec.span();
  const int T = cfg.T;
  const int max_lag = P + 2 * T;
  const auto Rf = increment_autocovariance(f, max_lag, cfg.quadrature);
  const auto Rg = increment_autocovariance(g, 2 * T, cfg.quadrature);

  // time of observation i: -1-i for the past block, P+1+i for the future block
  std::vector<long> t(static_cast<std::size_t>(2 * T));
  for (int i = 0; i < T; ++i) {
    t[static_cast<std::size_t>(i)] = -1 - i;
    t[static_cast<std::size_t>(T + i)] = P + 1 + i;
  }
  auto rf = [&](long d) { return Rf[static_cast<std::size_t>(std::abs(d))]; };
  Joint j;
  j.T = T;
  j.gram.resize(2 * T, 2 * T);
  for (int r = 0; r < 2 * T; ++r)
    for (int c = 0; c < 2 * T; ++c) {
      double v = rf(t[static_cast<std::size_t>(r)] - t[static_cast<std::size_t>(c)]);
      if (r >= T && c >= T) v += Rg[static_cast<std::size_t>(std::abs(r - c))];
      j.gram(r, c) = v;
    }
  j.cross = Eigen::VectorXd::Zero(2 * T);
  for (int r = 0; r < 2 * T; ++r)
    for (int k = 0; k <= N; ++k) j.cross[r] += b[static_cast<std::size_t>(k)] * rf(t[static_cast<std::size_t>(r)] - k);
  for (int k = 0; k <= N; ++k)
    for (int l = 0; l <= N; ++l) j.var += b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(l)] * rf(k - l);
  return j;
}

// Cholesky with growing ridge; returns the factor and the ridge used.
Eigen::LLT<Eigen::MatrixXd> factor(const Eigen::MatrixXd& A, double jitter, double& used, int& retries,
                                   ErrorCode failure) {
  used = jitter;
  const double floor = 1e-14 * std::max(A.trace() / static_cast<double>(std::max<Eigen::Index>(A.rows(), 1)), 1e-300);
  for (retries = 0; retries < 8; ++retries) {
    Eigen::MatrixXd B = A;
    B.diagonal().array() += used;
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() == Eigen::Success) return llt;
    used = std::max(used * 100.0, floor);
  }
  raise(failure, "covariance matrix is not positive definite after ridge " + std::to_string(used));
}

bool all_zero(std::span<const double> b) {
  return std::all_of(b.begin(), b.end(), [](double x) { return x == 0.0; });
}

}  // namespace

void OracleConfig::validate() const {
  if (T < 8 || T > 4096) raise(ErrorCode::kInvalidArgument, "oracle window T must lie in [8, 4096]");
  if (samples < 0) raise(ErrorCode::kInvalidArgument, "samples must be >= 0");
  if (jitter && !(*jitter >= 0.0)) raise(ErrorCode::kInvalidArgument, "jitter must be >= 0");
  if (batch < 1) raise(ErrorCode::kInvalidArgument, "batch must be >= 1");
  quadrature.validate();
}

std::vector<double> increment_autocovariance(const DensityModel& model, int max_lag, const QuadratureConfig& q) {
  if (max_lag < 0) raise(ErrorCode::kInvalidArgument, "max_lag must be >= 0");
  q.validate();
  const int mu = model.spec().mu;
  const auto bp = merge_breakpoints(model.breakpoints(), singular_points(mu));
  const Eigen::Index dim = max_lag + 1;
  auto acc = [&](double lambda, double w, Eigen::VectorXd& out) {
    const double phi = w * model.increment_density(lambda);
    // cos(m lambda) by the Chebyshev recurrence
    const double c1 = std::cos(lambda);
    double prev = 1.0, cur = c1;
    out[0] += phi;
    if (dim > 1) out[1] += phi * c1;
    for (Eigen::Index m = 2; m < dim; ++m) {
      const double next = 2.0 * c1 * cur - prev;
      out[m] += phi * next;
      prev = cur;
      cur = next;
    }
  };
  double scale = 0.0;
  {
    const Eigen::VectorXd r0 = integrate_checked<Eigen::VectorXd>(
        [&](double lambda, double w, Eigen::VectorXd& out) { out[0] += w * model.increment_density(lambda); }, 1, bp,
        0, q, 0.0, nullptr, true, "autocovariance");
    scale = std::abs(r0[0]);
  }
  const Eigen::VectorXd R = integrate_checked<Eigen::VectorXd>(acc, dim, bp, bandwidth_panels(max_lag + 2.0, q.order), q,
                                                               scale, nullptr, true, "autocovariance");
  return std::vector<double>(R.data(), R.data() + R.size());
}

OracleResult projection_oracle(const IncrementSpec& spec, std::span<const double> b, const DensityModel& f,
                               const DensityModel& g, const OracleConfig& cfg) {
  OracleResult res;
  if (all_zero(b)) {
    cfg.validate();
    res.past.assign(static_cast<std::size_t>(cfg.T), 0.0);
    res.future.assign(static_cast<std::size_t>(cfg.T), 0.0);
    return res;
  }
  const Joint j = build_joint(spec, b, f, g, cfg);
  const double jitter = cfg.jitter ? *cfg.jitter : 1e-10 * j.gram.trace() / static_cast<double>(j.gram.rows());
  const auto llt = factor(j.gram, jitter, res.jitter, res.jitter_retries, ErrorCode::kGramSingular);
  const Eigen::VectorXd w = llt.solve(j.cross);
  res.mse = std::max(0.0, j.var - w.dot(j.cross));
  res.past.assign(w.data(), w.data() + j.T);
  res.future.assign(w.data() + j.T, w.data() + 2 * j.T);
  return res;
}

OracleResult monte_carlo_check(const IncrementSpec& spec, std::span<const double> b, const DensityModel& f,
                               const DensityModel& g, const OracleConfig& cfg) {
  if (cfg.samples < 1000) raise(ErrorCode::kInvalidArgument, "Monte-Carlo check needs at least 1000 samples");
  OracleResult res = projection_oracle(spec, b, f, g, cfg);
  res.samples = cfg.samples;
  if (all_zero(b)) {
    res.empirical_mse = 0.0;
    res.standard_error = 0.0;
    return res;
  }
  const Joint j = build_joint(spec, b, f, g, cfg);
  const Eigen::Index n = j.gram.rows() + 1;
  Eigen::MatrixXd cov(n, n);
  cov.topLeftCorner(n - 1, n - 1) = j.gram;
  cov.col(n - 1).head(n - 1) = j.cross;
  cov.row(n - 1).head(n - 1) = j.cross.transpose();
  cov(n - 1, n - 1) = j.var;
  double used = 0.0;
  int retries = 0;
  const double jitter = cfg.jitter ? *cfg.jitter : 1e-10 * cov.trace() / static_cast<double>(n);
  const auto llt = factor(cov, jitter, used, retries, ErrorCode::kFactorizationFailure);
  const Eigen::MatrixXd Lf = llt.matrixL();

  Eigen::VectorXd v(n);
  for (int i = 0; i < j.T; ++i) {
    v[i] = -res.past[static_cast<std::size_t>(i)];
    v[j.T + i] = -res.future[static_cast<std::size_t>(i)];
  }
  v[n - 1] = 1.0;

  // batches with derived seeds, reduced in batch order
  double sum = 0.0, sum2 = 0.0;
  long done = 0;
  for (std::uint64_t batch = 0; done < cfg.samples; ++batch) {
    const long m = std::min<long>(cfg.batch, cfg.samples - done);
    NormalSource rng(derive_seed(cfg.seed, batch));
    Eigen::MatrixXd Z(n, m);
    for (long s = 0; s < m; ++s)
      for (Eigen::Index i = 0; i < n; ++i) Z(i, s) = rng.normal();
    const Eigen::MatrixXd X = Lf.triangularView<Eigen::Lower>() * Z;
    const Eigen::VectorXd err = X.transpose() * v;
    for (long s = 0; s < m; ++s) {
      const double e2 = err[s] * err[s];
      sum += e2;
      sum2 += e2 * e2;
    }
    done += m;
  }
  const double mean = sum / static_cast<double>(done);
  const double var = std::max(0.0, sum2 / static_cast<double>(done) - mean * mean);
  res.empirical_mse = mean;
  res.standard_error = std::sqrt(var / static_cast<double>(done));
  return res;
}

namespace {

OracleComparison compare(EstimateSolution spectral, const IncrementSpec& spec, const DensityModel& f,
                         const DensityModel& g, const OracleConfig& cfg, double tolerance) {
  if (!(f.spec() == spec) || !(g.spec() == spec))
    raise(ErrorCode::kConfiguration, "density models are paired with a different increment spec");
  OracleComparison out;
  out.oracle = projection_oracle(spec, spectral.b, f, g, cfg);
  out.mse_spectral = spectral.mse;
  out.mse_oracle = out.oracle.mse;
  const double denom = std::abs(out.mse_oracle);
  out.relative_gap = denom > 0.0 ? std::abs(out.mse_spectral - out.mse_oracle) / denom
                                 : std::abs(out.mse_spectral - out.mse_oracle);
  if (spectral.past_weights.empty() && spectral.future_weights.empty()) attach_time_weights(spectral);
  const std::size_t ov = std::min({out.oracle.past.size(), spectral.past_weights.size(), spectral.future_weights.size()});
  out.overlap = static_cast<int>(ov);
  for (std::size_t i = 0; i < ov; ++i) {
    out.max_weight_gap = std::max(out.max_weight_gap, std::abs(out.oracle.past[i] - spectral.past_weights[i]));
    out.max_weight_gap = std::max(out.max_weight_gap, std::abs(out.oracle.future[i] - spectral.future_weights[i]));
  }
  out.pass = out.relative_gap <= tolerance;
  out.spectral = std::move(spectral);
  return out;
}

}  // namespace

OracleComparison compare_spectral_vs_oracle(const InterpolationProblem& problem, const OracleConfig& cfg,
                                            double tolerance) {
  if (!(problem.f.spec() == problem.spec) || !(problem.g.spec() == problem.spec))
    raise(ErrorCode::kConfiguration, "density models are paired with a different increment spec");
  return compare(solve_functional(problem), problem.spec, problem.f, problem.g, cfg, tolerance);
}

OracleComparison compare_spectral_vs_oracle(const FilteringProblem& problem, const OracleConfig& cfg,
                                            double tolerance) {
  if (!(problem.f.spec() == problem.spec) || !(problem.g.spec() == problem.spec))
    raise(ErrorCode::kConfiguration, "density models are paired with a different increment spec");
  return compare(solve_filtering(problem), problem.spec, problem.f, problem.g, cfg, tolerance);
}

}  // namespace stinc

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

#include "stinc/spectral.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <math.h>  // pchip calls isnan unqualified

#include <boost/math/interpolators/pchip.hpp>

namespace stinc {

namespace {

constexpr double kPi = std::numbers::pi;

double trig_sum(const std::vector<double>& c, double lambda) {
  if (c.empty()) return 0.0;
  double s = c[0];
  if (c.size() > 1) {
    const double c1 = std::cos(lambda);
    double prev = 1.0, cur = c1;
    for (std::size_t k = 1; k < c.size(); ++k) {
      s += 2.0 * c[k] * cur;
      const double next = 2.0 * c1 * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  return s;
}

double sinc_half(double x) {
  // 2 sin(x/2) / x
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 24.0;
  return 2.0 * std::sin(0.5 * x) / x;
}

}  // namespace

struct DensityModel::Impl {
  DensityForm form = DensityForm::kIncrementConstant;
  KnownForm known = KnownForm::kNone;
  IncrementSpec spec;
  double sigma2 = 0.0;
  std::function<double(double)> fn;
  std::vector<double> trig;
  std::vector<double> knots;
};

DensityModel::DensityModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

DensityModel DensityModel::increment_constant(const IncrementSpec& spec, double sigma2) {
  spec.validate();
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) raise(ErrorCode::kInvalidArgument, "increment-constant level must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->form = DensityForm::kIncrementConstant;
  impl->spec = spec;
  impl->sigma2 = sigma2;
  return DensityModel(std::move(impl));
}

DensityModel DensityModel::closed_form(const IncrementSpec& spec, std::function<double(double)> rho) {
  spec.validate();
  if (!rho) raise(ErrorCode::kInvalidArgument, "closed-form density needs an evaluator");
  auto impl = std::make_shared<Impl>();
  impl->form = DensityForm::kClosedForm;
  impl->known = KnownForm::kNone;
  impl->spec = spec;
  impl->fn = std::move(rho);
  return DensityModel(std::move(impl));
}

DensityModel DensityModel::from_increment_density(const IncrementSpec& spec, std::function<double(double)> phi) {
  spec.validate();
  if (!phi) raise(ErrorCode::kInvalidArgument, "increment density needs an evaluator");
  auto impl = std::make_shared<Impl>();
  impl->form = DensityForm::kClosedForm;
  impl->known = KnownForm::kIncrementDensity;
  impl->spec = spec;
  impl->fn = std::move(phi);
  return DensityModel(std::move(impl));
}

DensityModel DensityModel::weighted_inverse_trig(const IncrementSpec& spec, std::vector<double> coeffs) {
  spec.validate();
  if (coeffs.empty()) raise(ErrorCode::kInvalidArgument, "trigonometric weighted inverse needs at least one coefficient");
  auto impl = std::make_shared<Impl>();
  impl->form = DensityForm::kClosedForm;
  impl->known = KnownForm::kWeightedInverseTrig;
  impl->spec = spec;
  impl->trig = std::move(coeffs);
  return DensityModel(std::move(impl));
}

DensityModel DensityModel::tabulated(const IncrementSpec& spec, std::vector<double> lambda, std::vector<double> rho) {
  spec.validate();
  if (lambda.size() != rho.size()) raise(ErrorCode::kInvalidArgument, "tabulated density: lambda and rho lengths differ");
  if (lambda.size() < 4) raise(ErrorCode::kInvalidArgument, "tabulated density needs at least 4 grid points");
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!std::isfinite(lambda[i]) || !std::isfinite(rho[i])) raise(ErrorCode::kInvalidArgument, "tabulated density has non-finite entries");
    if (rho[i] < 0.0) raise(ErrorCode::kInvalidArgument, "tabulated density has negative rho at lambda=" + std::to_string(lambda[i]));
    if (i > 0 && !(lambda[i] > lambda[i - 1])) raise(ErrorCode::kInvalidArgument, "tabulated grid must be strictly increasing");
  }
  if (lambda.front() < -1e-12 || lambda.front() > 1e-9 || lambda.back() < kPi - 1e-9 || lambda.back() > kPi + 1e-9)
    raise(ErrorCode::kInvalidArgument, "tabulated grid must cover [0, pi]");
  lambda.front() = 0.0;
  lambda.back() = kPi;
  auto impl = std::make_shared<Impl>();
  impl->form = DensityForm::kTabulated;
  impl->spec = spec;
  for (double x : lambda) {
    impl->knots.push_back(x);
    impl->knots.push_back(-x);
  }
  auto interp = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(lambda), std::move(rho));
  impl->fn = [interp](double x) { return std::max(0.0, (*interp)(std::min(std::abs(x), kPi))); };
  return DensityModel(std::move(impl));
}

DensityModel DensityModel::from_csv(const IncrementSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::kConfiguration, "cannot open density table " + path);
  std::string line;
  if (!std::getline(in, line)) raise(ErrorCode::kConfiguration, path + ": empty file");
  line.erase(std::remove_if(line.begin(), line.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }), line.end());
  if (line != "lambda,rho") raise(ErrorCode::kConfiguration, path + ": header must be lambda,rho");
  std::vector<double> lam, rho;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b)) raise(ErrorCode::kConfiguration, path + ":" + std::to_string(lineno) + ": expected two columns");
    try {
      lam.push_back(std::stod(a));
      rho.push_back(std::stod(b));
    } catch (const std::exception&) {
      raise(ErrorCode::kConfiguration, path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return tabulated(spec, std::move(lam), std::move(rho));
}

DensityForm DensityModel::form() const { return impl_->form; }
KnownForm DensityModel::known_form() const { return impl_->known; }
const IncrementSpec& DensityModel::spec() const { return impl_->spec; }
double DensityModel::sigma2() const { return impl_->sigma2; }
const std::vector<double>& DensityModel::trig_coeffs() const { return impl_->trig; }

double increment_gain(const IncrementSpec& spec, double lambda) {
  const double r = spec.mu * sinc_half(spec.mu * lambda);
  return std::pow(r * r, spec.n);
}

double DensityModel::rho(double lambda) const {
  const Impl& m = *impl_;
  switch (m.form) {
    case DensityForm::kIncrementConstant: return m.sigma2 / increment_gain(m.spec, lambda);
    case DensityForm::kTabulated: return m.fn(lambda);
    case DensityForm::kClosedForm: break;
  }
  switch (m.known) {
    case KnownForm::kNone: return 0.5 * (m.fn(lambda) + m.fn(-lambda));
    case KnownForm::kIncrementDensity: return increment_density(lambda) / increment_gain(m.spec, lambda);
    case KnownForm::kWeightedInverseTrig: return 1.0 / (trig_sum(m.trig, lambda) * increment_gain(m.spec, lambda));
  }
  return 0.0;
}

double DensityModel::increment_density(double lambda) const {
  const Impl& m = *impl_;
  if (m.form == DensityForm::kIncrementConstant) return m.sigma2;
  if (m.form == DensityForm::kClosedForm && m.known == KnownForm::kIncrementDensity)
    return 0.5 * (m.fn(lambda) + m.fn(-lambda));
  if (m.form == DensityForm::kClosedForm && m.known == KnownForm::kWeightedInverseTrig) {
    const double t = trig_sum(m.trig, lambda);
    return t > 0.0 ? 1.0 / t : std::numeric_limits<double>::infinity();
  }
  const double v = increment_gain(m.spec, lambda) * rho(lambda);
  if (std::isfinite(v)) return v;
  // removable point where rho is infinite and the gain vanishes
  const double h = 1e-7;
  return 0.5 * (increment_gain(m.spec, lambda - h) * rho(lambda - h) + increment_gain(m.spec, lambda + h) * rho(lambda + h));
}

double DensityModel::weighted_inverse(double lambda) const {
  const Impl& m = *impl_;
  if (m.form == DensityForm::kIncrementConstant) return 1.0 / m.sigma2;
  if (m.form == DensityForm::kClosedForm && m.known == KnownForm::kWeightedInverseTrig) return trig_sum(m.trig, lambda);
  const double phi = increment_density(lambda);
  if (std::isinf(phi) && phi > 0.0) return 0.0;
  if (!(phi > 0.0) || !std::isfinite(phi))
    raise(ErrorCode::kNonIntegrableDensity, "increment density vanishes at lambda=" + std::to_string(lambda));
  return 1.0 / phi;
}

std::vector<double> DensityModel::breakpoints() const {
  return merge_breakpoints(singular_points(impl_->spec.mu), impl_->knots);
}

double DensityModel::bandwidth_hint() const {
  if (impl_->form == DensityForm::kClosedForm && impl_->known == KnownForm::kWeightedInverseTrig)
    return static_cast<double>(impl_->trig.size() - 1);
  return 0.0;
}

double weighted_inverse(const DensityModel& model, double lambda) { return model.weighted_inverse(lambda); }
double increment_density(const DensityModel& model, double lambda) { return model.increment_density(lambda); }

double FourierTable::at(long k) const {
  const auto a = static_cast<std::size_t>(k < 0 ? -k : k);
  return a < coeffs.size() ? coeffs[a] : 0.0;
}

double FourierTable::evaluate(double lambda) const { return trig_sum(coeffs, lambda); }

FourierTable fourier_coefficients(const DensityModel& model, std::size_t K, const QuadratureConfig& q,
                                  QuadratureReport* report) {
  q.validate();
  const auto bp = model.breakpoints();
  const auto dim = static_cast<Eigen::Index>(K + 1);
  auto acc = [&](double lambda, double w, Eigen::VectorXd& out) {
    const double val = w * model.weighted_inverse(lambda);
    const double c1 = std::cos(lambda);
    double prev = 1.0, cur = c1;
    out[0] += val;
    for (Eigen::Index k = 1; k < dim; ++k) {
      out[k] += val * cur;
      const double next = 2.0 * c1 * cur - prev;
      prev = cur;
      cur = next;
    }
  };
  const int base = bandwidth_panels(static_cast<double>(K) + model.bandwidth_hint(), q.order);
  Eigen::VectorXd c = integrate_checked<Eigen::VectorXd>(acc, dim, bp, base, q, 0.0, report, true, "fourier coefficients");
  return FourierTable{std::vector<double>(c.data(), c.data() + c.size())};
}

IntegrabilityReport check_integrability(const DensityModel& model, const QuadratureConfig& q) {
  IntegrabilityReport rep;
  const auto bp = model.breakpoints();
  auto acc = [&](double lambda, double w, Eigen::VectorXd& out) { out[0] += w * model.weighted_inverse(lambda); };
  double total = 0.0;
  try {
    Eigen::VectorXd v = integrate_checked<Eigen::VectorXd>(acc, 1, bp, 0, q, 0.0, &rep.quadrature, false, "integrability");
    total = v[0];
  } catch (const Error& e) {
    rep.message = e.what();
  }
  const bool quad_ok = rep.quadrature.converged && rep.message.empty() && std::isfinite(total);

  bool probes_ok = true;
  for (double s : singular_points(model.spec().mu)) {
    for (double side : {-1.0, 1.0}) {
      const double far = s + side * 1e-3, near = s + side * 1e-7;
      if (std::abs(far) > kPi || std::abs(near) > kPi) continue;
      try {
        const double wf = model.weighted_inverse(far);
        const double wn = model.weighted_inverse(near);
        if (!std::isfinite(wn) || wn > 100.0 * std::max({wf, std::abs(total), 1e-300})) {
          probes_ok = false;
          rep.offending.push_back(s);
        }
      } catch (const Error&) {
        probes_ok = false;
        rep.offending.push_back(s);
      }
    }
  }

  if (!quad_ok) {
    // locate the worst point on a uniform grid
    const int M = 4096;
    double worst = -1.0, where = 0.0;
    for (int j = 0; j < M; ++j) {
      const double lambda = -kPi + 2.0 * kPi * (j + 0.5) / M;
      double w = std::numeric_limits<double>::infinity();
      try {
        w = model.weighted_inverse(lambda);
      } catch (const Error&) {
      }
      if (!std::isfinite(w) || w > worst) {
        worst = std::isfinite(w) ? w : std::numeric_limits<double>::max();
        where = lambda;
      }
    }
    rep.offending.push_back(where);
    if (rep.message.empty())
      rep.message = "weighted inverse integral does not converge under refinement (difference " +
                    std::to_string(rep.quadrature.difference) + ")";
  } else if (!probes_ok) {
    rep.message = "weighted inverse unbounded near a removable point";
  }
  std::sort(rep.offending.begin(), rep.offending.end());
  rep.offending.erase(std::unique(rep.offending.begin(), rep.offending.end()), rep.offending.end());
  rep.integrable = quad_ok && probes_ok;
  return rep;
}

double structure_function(const DensityModel& model, long m, int mu1, int mu2, const QuadratureConfig& q) {
  q.validate();
  if (mu1 < 1 || mu2 < 1) raise(ErrorCode::kInvalidArgument, "structure function steps must be >= 1");
  const int n = model.spec().n;
  const double shift = static_cast<double>(m) + 0.5 * n * (mu2 - mu1);
  auto bp = merge_breakpoints(model.breakpoints(), singular_points(mu1));
  bp = merge_breakpoints(bp, singular_points(mu2));
  const bool same = mu1 == model.spec().mu && mu2 == model.spec().mu;
  auto acc = [&](double lambda, double w, Eigen::VectorXd& out) {
    double kernel;
    if (same) {
      kernel = model.increment_density(lambda);
    } else {
      const double s = mu1 * sinc_half(mu1 * lambda) * mu2 * sinc_half(mu2 * lambda);
      const double r = model.rho(lambda);
      kernel = r == 0.0 ? 0.0 : std::pow(s, n) * r;
    }
    out[0] += w * kernel * std::cos(shift * lambda);
    out[1] += w * std::abs(kernel);  // scale for the relative test
  };
  const int base = bandwidth_panels(std::abs(shift) + n * (mu1 + mu2), q.order);
  Eigen::VectorXd v = integrate_checked<Eigen::VectorXd>(acc, 2, bp, base, q, 0.0, nullptr, true, "structure function");
  return v[0];
}

}  // namespace stinc

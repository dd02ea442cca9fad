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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stinc/increments.hpp"
#include "stinc/quadrature.hpp"

namespace stinc {

enum class DensityForm { kIncrementConstant, kClosedForm, kTabulated };

// Closed forms may carry a tag saying which quantity the evaluator returns.
enum class KnownForm {
  kNone,              // evaluator returns rho
  kIncrementDensity,  // evaluator returns the increment density
  kWeightedInverseTrig,  // weighted inverse is c0 + 2 sum c_k cos(k lambda)
};

class DensityModel {
 public:
  static DensityModel increment_constant(const IncrementSpec& spec, double sigma2);
  static DensityModel closed_form(const IncrementSpec& spec, std::function<double(double)> rho);
  static DensityModel from_increment_density(const IncrementSpec& spec, std::function<double(double)> phi);
  static DensityModel weighted_inverse_trig(const IncrementSpec& spec, std::vector<double> coeffs);
  // Grid must cover [0, pi]; the model is the even extension.
  static DensityModel tabulated(const IncrementSpec& spec, std::vector<double> lambda, std::vector<double> rho);
  static DensityModel from_csv(const IncrementSpec& spec, const std::string& path);

  DensityForm form() const;
  KnownForm known_form() const;
  const IncrementSpec& spec() const;
  double sigma2() const;
  const std::vector<double>& trig_coeffs() const;

  double rho(double lambda) const;
  double increment_density(double lambda) const;
  double weighted_inverse(double lambda) const;

  // Panel boundaries: 2*pi*j/mu plus tabulation knots.
  std::vector<double> breakpoints() const;
  // Trigonometric degree of the weighted inverse when known, else 0.
  double bandwidth_hint() const;

 private:
  struct Impl;
  explicit DensityModel(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// (2|sin(mu lambda/2)| / |lambda|)^{2n}, equal to mu^{2n} at lambda = 0.
double increment_gain(const IncrementSpec& spec, double lambda);

double weighted_inverse(const DensityModel& model, double lambda);
double increment_density(const DensityModel& model, double lambda);

// Fourier coefficients c(0..K) of the weighted inverse, c(-k) = c(k).
struct FourierTable {
  std::vector<double> coeffs;

  std::size_t K() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double at(long k) const;
  double evaluate(double lambda) const;
};

FourierTable fourier_coefficients(const DensityModel& model, std::size_t K, const QuadratureConfig& q = {},
                                  QuadratureReport* report = nullptr);

struct IntegrabilityReport {
  bool integrable = false;
  std::vector<double> offending;
  std::string message;
  QuadratureReport quadrature;
};

IntegrabilityReport check_integrability(const DensityModel& model, const QuadratureConfig& q = {});

double structure_function(const DensityModel& model, long m, int mu1, int mu2, const QuadratureConfig& q = {});

}  // namespace stinc

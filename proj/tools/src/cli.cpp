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

#include "stinc_cli/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "stinc/filtering.hpp"
#include "stinc/interpolate.hpp"
#include "stinc/minimax.hpp"
#include "stinc/oracle.hpp"

namespace stinc::cli {

using nlohmann::json;

InputError::InputError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

namespace {

constexpr double kPi = std::numbers::pi;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& need(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) throw InputError(join(path, key), "missing required field");
  return *it;
}

bool has(const json& obj, const std::string& key) { return obj.is_object() && obj.contains(key) && !obj[key].is_null(); }

long long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw InputError(path, "expected an integer");
  return v.get<long long>();
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) throw InputError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(path, "expected a finite number");
  return x;
}

std::vector<double> as_vector(const json& v, const std::string& path) {
  if (!v.is_array()) throw InputError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

int int_field(const json& obj, const std::string& key, const std::string& path, std::optional<int> def, int lo,
              int hi) {
  if (!has(obj, key)) {
    if (!def) need(obj, key, path);
    return *def;
  }
  const long long v = as_int(obj[key], join(path, key));
  if (v < lo || v > hi)
    throw InputError(join(path, key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

double double_field(const json& obj, const std::string& key, const std::string& path, std::optional<double> def,
                    bool positive = false) {
  double v;
  if (!has(obj, key)) {
    if (!def) need(obj, key, path);
    v = *def;
  } else {
    v = as_double(obj[key], join(path, key));
  }
  if (positive && !(v > 0.0)) throw InputError(join(path, key), "must be positive");
  return v;
}

std::vector<double> vector_field(const json& obj, const std::string& key, const std::string& path, bool nonempty) {
  auto v = as_vector(need(obj, key, path), join(path, key));
  if (nonempty && v.empty()) throw InputError(join(path, key), "must not be empty");
  return v;
}

json normalize_density(const json& d, const std::string& path) {
  const json& t = need(d, "type", path);
  if (!t.is_string()) throw InputError(join(path, "type"), "expected a string");
  const std::string type = t.get<std::string>();
  json out{{"type", type}};
  if (type == "increment-constant") {
    out["sigma2"] = double_field(d, "sigma2", path, 1.0, true);
  } else if (type == "weighted-inverse-trig") {
    out["coeffs"] = vector_field(d, "coeffs", path, true);
  } else if (type == "increment-ma") {
    out["theta"] = vector_field(d, "theta", path, true);
    out["sigma2"] = double_field(d, "sigma2", path, 1.0, true);
  } else if (type == "increment-ar") {
    out["phi"] = vector_field(d, "phi", path, false);
    out["sigma2"] = double_field(d, "sigma2", path, 1.0, true);
  } else if (type == "tabulated") {
    const json& p = need(d, "path", path);
    if (!p.is_string()) throw InputError(join(path, "path"), "expected a string");
    out["path"] = p;
  } else {
    throw InputError(join(path, "type"), "unknown density type '" + type +
                                             "' (increment-constant, weighted-inverse-trig, increment-ma, "
                                             "increment-ar, tabulated)");
  }
  return out;
}

json normalize_class(const json& c, const std::string& path) {
  const json& k = need(c, "kind", path);
  if (!k.is_string()) throw InputError(join(path, "kind"), "expected a string");
  const std::string kind = k.get<std::string>();
  json out{{"kind", kind}};
  if (kind == "D0") {
    out["P1"] = double_field(c, "P1", path, std::nullopt, true);
    out["P2"] = has(c, "P2") ? json(double_field(c, "P2", path, std::nullopt, true)) : json(nullptr);
  } else if (kind == "DM") {
    auto r1 = vector_field(c, "r1", path, true);
    for (double x : r1)
      if (!(x > 0.0)) throw InputError(join(path, "r1"), "moments must be strictly positive");
    out["r1"] = r1;
    if (has(c, "r2")) {
      auto r2 = vector_field(c, "r2", path, true);
      if (r2.size() != r1.size()) throw InputError(join(path, "r2"), "must have the same length as r1");
      for (double x : r2)
        if (!(x > 0.0)) throw InputError(join(path, "r2"), "moments must be strictly positive");
      out["r2"] = r2;
    } else {
      out["r2"] = nullptr;
    }
  } else {
    throw InputError(join(path, "kind"), "unknown class '" + kind + "' (D0, DM)");
  }
  return out;
}

json normalize_trunc(const json& t) {
  const std::string path = "trunc";
  const json src = t.is_null() ? json::object() : t;
  if (!src.is_object()) throw InputError(path, "expected an object");
  const json q = has(src, "quadrature") ? src["quadrature"] : json::object();
  const std::string qp = join(path, "quadrature");
  json out;
  out["L"] = int_field(src, "L", path, 0, 0, 1 << 16);
  out["quadrature"] = {
      {"panels", int_field(q, "panels", qp, 32, 1, 1 << 20)},
      {"order", int_field(q, "order", qp, 16, 1, 128)},
      {"tolerance", double_field(q, "tolerance", qp, 1e-9, true)},
      {"max_refinements", int_field(q, "max_refinements", qp, 4, 0, 16)},
      {"singularity_exclusion", double_field(q, "singularity_exclusion", qp, 0.0)},
  };
  out["condition_bound"] = double_field(src, "condition_bound", path, 1e12, true);
  out["residual_tolerance"] = double_field(src, "residual_tolerance", path, 1e-8, true);
  return out;
}

const char* kCommands[] = {"interpolate", "increment", "filter", "minimax", "oracle-check"};

}  // namespace

json normalize_config(const json& config, const RunOptions& opt) {
  if (!config.is_object()) throw InputError("$", "configuration must be a JSON object");
  json out;
  const int version = int_field(config, "schema_version", "", kSchemaVersion, 0, 1 << 20);
  if (version != kSchemaVersion)
    throw InputError("schema_version", "unsupported version " + std::to_string(version) + " (expected " +
                                           std::to_string(kSchemaVersion) + ")");
  out["schema_version"] = version;
  const json& c = need(config, "command", "");
  if (!c.is_string()) throw InputError("command", "expected a string");
  const std::string command = c.get<std::string>();
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands))
    throw InputError("command", "unknown command '" + command + "'");
  out["command"] = command;

  const json& p = need(config, "problem", "");
  const std::string pp = "problem";
  json prob;
  const json& s = need(p, "spec", pp);
  prob["spec"] = {{"n", int_field(s, "n", "problem.spec", std::nullopt, 1, 16)},
                  {"mu", int_field(s, "mu", "problem.spec", std::nullopt, 1, 64)}};

  auto take_a = [&]() {
    auto a = vector_field(p, "a", pp, true);
    const int N = static_cast<int>(a.size()) - 1;
    if (has(p, "N") && int_field(p, "N", pp, std::nullopt, 0, 1 << 16) != N)
      throw InputError("problem.N", "must equal length(a) - 1");
    prob["a"] = a;
    prob["N"] = N;
  };
  auto take_filter = [&]() {
    auto af = vector_field(p, "a_future", pp, true);
    const int span = prob["spec"]["n"].get<int>() * prob["spec"]["mu"].get<int>();
    if (static_cast<int>(af.size()) != span) throw InputError("problem.a_future", "must have length n*mu");
    prob["a_future"] = af;
    prob["N"] = int_field(p, "N", pp, std::nullopt, 0, 1 << 16);
  };
  auto take_density = [&](const char* key, bool required) {
    if (has(p, key))
      prob[key] = normalize_density(p[key], join(pp, key));
    else if (required)
      need(p, key, pp);
    else
      prob[key] = nullptr;
  };

  if (command == "interpolate") {
    take_a();
    take_density("f", true);
    take_density("g", true);
  } else if (command == "increment") {
    prob["N"] = int_field(p, "N", pp, std::nullopt, 0, 1 << 16);
    prob["m"] = int_field(p, "m", pp, std::nullopt, 0, prob["N"].get<int>());
    take_density("f", true);
    take_density("g", true);
  } else if (command == "filter") {
    take_filter();
    take_density("f", true);
    take_density("g", true);
  } else if (command == "minimax") {
    take_a();
    prob["class"] = normalize_class(need(p, "class", pp), "problem.class");
    take_density("g", false);
    std::string method = "auto";
    if (has(p, "method")) {
      if (!p["method"].is_string()) throw InputError("problem.method", "expected a string");
      method = p["method"].get<std::string>();
    }
    const json& cls = prob["class"];
    if (method == "auto") {
      if (cls["kind"] == "DM")
        method = "known-g";
      else if (!cls["P2"].is_null())
        method = "fixed-point";
      else if (prob["g"].is_null() || prob["g"]["type"] == "increment-constant")
        method = "white-noise";
      else
        method = "known-g";
    }
    if (method != "white-noise" && method != "known-g" && method != "fixed-point")
      throw InputError("problem.method", "unknown method '" + method + "' (auto, white-noise, known-g, fixed-point)");
    if (method == "known-g" && prob["g"].is_null()) need(p, "g", pp);
    if (method == "fixed-point" && (cls["kind"] != "D0" || cls["P2"].is_null()))
      throw InputError("problem.class", "fixed-point needs a D0 class with P1 and P2");
    if (method == "white-noise" && cls["kind"] != "D0")
      throw InputError("problem.class", "white-noise closed form needs a D0 class");
    if (method == "white-noise" && !prob["g"].is_null() && prob["g"]["type"] != "increment-constant")
      throw InputError("problem.g", "white-noise closed form needs an increment-constant g");
    prob["method"] = method;
    const json fp = has(p, "fixed_point") ? p["fixed_point"] : json::object();
    prob["fixed_point"] = {{"damping", double_field(fp, "damping", "problem.fixed_point", 0.5, true)},
                           {"max_iterations", int_field(fp, "max_iterations", "problem.fixed_point", 200, 1, 100000)},
                           {"tolerance", double_field(fp, "tolerance", "problem.fixed_point", 1e-6, true)}};
  } else {
    if (has(p, "a_future"))
      take_filter();
    else
      take_a();
    prob["target"] = has(p, "a_future") ? "filter" : "interpolate";
    take_density("f", true);
    take_density("g", true);
    const json o = has(p, "oracle") ? p["oracle"] : json::object();
    const std::string op = "problem.oracle";
    json oracle;
    oracle["T"] = int_field(o, "T", op, 200, 8, 4096);
    long long samples = 0;
    if (has(o, "samples")) samples = as_int(o["samples"], join(op, "samples"));
    if (samples < 0 || (samples > 0 && samples < 1000))
      throw InputError(join(op, "samples"), "must be 0 or at least 1000");
    oracle["samples"] = samples;
    std::uint64_t seed = 0;
    if (has(o, "seed")) {
      if (!o["seed"].is_number_unsigned() && !(o["seed"].is_number_integer() && o["seed"].get<long long>() >= 0))
        throw InputError(join(op, "seed"), "expected a non-negative integer");
      seed = o["seed"].get<std::uint64_t>();
    }
    if (opt.seed) seed = *opt.seed;
    oracle["seed"] = seed;
    oracle["jitter"] = has(o, "jitter") ? json(double_field(o, "jitter", op, std::nullopt)) : json(nullptr);
    if (!oracle["jitter"].is_null() && oracle["jitter"].get<double>() < 0.0)
      throw InputError(join(op, "jitter"), "must be >= 0");
    oracle["tolerance"] = double_field(o, "tolerance", op, 1e-3, true);
    prob["oracle"] = oracle;
  }
  out["problem"] = prob;
  out["trunc"] = normalize_trunc(has(config, "trunc") ? config["trunc"] : json());

  const json o = has(config, "output") ? config["output"] : json::object();
  bool weights = true;
  if (has(o, "time_weights")) {
    if (!o["time_weights"].is_boolean()) throw InputError("output.time_weights", "expected a boolean");
    weights = o["time_weights"].get<bool>();
  }
  out["output"] = {{"time_weights", weights},
                   {"grid", int_field(o, "grid", "output", 256, 8, 1 << 20)}};
  return out;
}

namespace {

IncrementSpec spec_of(const json& p) { return {p["spec"]["n"].get<int>(), p["spec"]["mu"].get<int>()}; }

DensityModel density_of(const json& d, const IncrementSpec& spec, const std::filesystem::path& base) {
  const std::string type = d["type"];
  if (type == "increment-constant") return DensityModel::increment_constant(spec, d["sigma2"].get<double>());
  if (type == "weighted-inverse-trig")
    return DensityModel::weighted_inverse_trig(spec, d["coeffs"].get<std::vector<double>>());
  const double s2 = type == "tabulated" ? 0.0 : d["sigma2"].get<double>();
  if (type == "increment-ma") {
    auto theta = d["theta"].get<std::vector<double>>();
    return DensityModel::from_increment_density(spec, [theta, s2](double l) {
      std::complex<double> s = 0.0;
      for (std::size_t k = 0; k < theta.size(); ++k) s += theta[k] * std::polar(1.0, -static_cast<double>(k) * l);
      return s2 * std::norm(s);
    });
  }
  if (type == "increment-ar") {
    auto phi = d["phi"].get<std::vector<double>>();
    return DensityModel::from_increment_density(spec, [phi, s2](double l) {
      std::complex<double> s = 1.0;
      for (std::size_t k = 0; k < phi.size(); ++k) s -= phi[k] * std::polar(1.0, -static_cast<double>(k + 1) * l);
      return s2 / std::norm(s);
    });
  }
  std::filesystem::path path = d["path"].get<std::string>();
  if (path.is_relative()) path = base / path;
  return DensityModel::from_csv(spec, path.string());
}

TruncationConfig trunc_of(const json& t) {
  TruncationConfig c;
  c.L = t["L"];
  const json& q = t["quadrature"];
  c.quadrature.panels = q["panels"];
  c.quadrature.order = q["order"];
  c.quadrature.tolerance = q["tolerance"];
  c.quadrature.max_refinements = q["max_refinements"];
  c.quadrature.singularity_exclusion = q["singularity_exclusion"];
  c.solver.condition_bound = t["condition_bound"];
  c.solver.residual_tolerance = t["residual_tolerance"];
  return c;
}

DensityClass class_of(const json& c) {
  if (c["kind"] == "D0")
    return DensityClass::d0(c["P1"].get<double>(),
                            c["P2"].is_null() ? std::nullopt : std::optional<double>(c["P2"].get<double>()));
  return DensityClass::dm(c["r1"].get<std::vector<double>>(),
                          c["r2"].is_null() ? std::nullopt
                                            : std::optional<std::vector<double>>(c["r2"].get<std::vector<double>>()));
}

json finite(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json quadrature_json(const QuadratureReport& q) {
  return {{"panels", q.panels}, {"nodes", q.nodes}, {"difference", q.difference}, {"converged", q.converged}};
}

json solution_json(const EstimateSolution& s, const TimeWeights* tw) {
  const auto& d = s.diagnostics;
  json j{{"N", s.N},
         {"L", s.L},
         {"horizon", s.horizon()},
         {"mse", s.mse},
         {"minimax", s.minimax},
         {"b", s.b},
         {"c", s.c},
         {"e", s.e},
         {"v", s.v}};
  j["diagnostics"] = {{"residual_c", d.residual_c},
                      {"residual_e", d.residual_e},
                      {"b_norm", d.b_norm},
                      {"cond_Ge", finite(d.cond_Ge)},
                      {"cond_Fmu", finite(d.cond_Fmu)},
                      {"mse_quadratic", d.mse_quadratic},
                      {"mse_inner", d.mse_inner},
                      {"table_K", d.table_K},
                      {"truncated_hankel_entries", d.truncated_hankel_entries},
                      {"mse_quadrature", quadrature_json(d.mse_quadrature)},
                      {"valid", d.valid}};
  if (tw != nullptr)
    j["time_weights"] = {{"past", tw->past},
                         {"future", tw->future},
                         {"tail", tw->tail},
                         {"nodes", tw->nodes},
                         {"forbidden_leak", tw->forbidden_leak},
                         {"outer_leak", tw->outer_leak}};
  return j;
}

std::string time_weights_csv(const TimeWeights& tw, int horizon) {
  std::ostringstream o;
  o << "k,weight,block\n";
  for (std::size_t i = tw.past.size(); i-- > 0;) o << -1 - static_cast<long>(i) << ',' << num(tw.past[i]) << ",past\n";
  for (std::size_t i = 0; i < tw.future.size(); ++i)
    o << horizon + 1 + static_cast<long>(i) << ',' << num(tw.future[i]) << ",future\n";
  return o.str();
}

std::string fourier_csv(const FourierTable& f, const FourierTable& g) {
  std::ostringstream o;
  o << "k,f,g\n";
  const std::size_t K = std::max(f.coeffs.size(), g.coeffs.size());
  for (std::size_t k = 0; k < K; ++k)
    o << k << ',' << num(f.at(static_cast<long>(k))) << ',' << num(g.at(static_cast<long>(k))) << '\n';
  return o.str();
}

double grid_point(int j, int grid) { return -kPi + 2.0 * kPi * (j + 0.5) / grid; }

std::string density_csv(const DensityModel& f, const DensityModel& g, int grid) {
  std::ostringstream o;
  o << "lambda,f,g\n";
  for (int j = 0; j < grid; ++j) {
    const double l = grid_point(j, grid);
    o << num(l) << ',' << num(f.rho(l)) << ',' << num(g.rho(l)) << '\n';
  }
  return o.str();
}

std::string characteristic_csv(const EstimateSolution& s, int grid) {
  std::ostringstream o;
  o << "lambda,re_h1,im_h1,re_h2,im_h2\n";
  for (int j = 0; j < grid; ++j) {
    const double l = grid_point(j, grid);
    const auto h1 = evaluate_characteristic(s, 1, l);
    const auto h2 = evaluate_characteristic(s, 2, l);
    o << num(l) << ',' << num(h1.real()) << ',' << num(h1.imag()) << ',' << num(h2.real()) << ',' << num(h2.imag())
      << '\n';
  }
  return o.str();
}

void add_solution(RunResult& r, EstimateSolution& s, const json& cfg, const std::string& key = "solution") {
  const json& out = cfg["output"];
  std::optional<TimeWeights> tw;
  if (out["time_weights"].get<bool>()) tw = extract_time_weights(s);
  r.report["result"][key] = solution_json(s, tw ? &*tw : nullptr);
  const int grid = out["grid"];
  if (tw) r.csv["time_weights.csv"] = time_weights_csv(*tw, s.horizon());
  r.csv["fourier.csv"] = fourier_csv(s.f_table, s.g_table);
  if (s.f && s.g) r.csv["density.csv"] = density_csv(*s.f, *s.g, grid);
  r.csv["characteristic.csv"] = characteristic_csv(s, grid);
  if (!s.diagnostics.valid) r.exit_code = kExitDiagnostic;
}

json residuals_json(const SaddleResiduals& r) {
  return {{"eq_f", r.eq_f},
          {"eq_e", r.eq_e},
          {"eq_e_alt", r.eq_e_alt},
          {"b_norm", r.b_norm},
          {"cond_Gc", finite(r.cond_Gc)},
          {"moment_f", r.moment_f},
          {"moment_g", r.moment_g},
          {"modulus_f", r.modulus_f},
          {"modulus_g", r.modulus_g},
          {"tail_equality", r.tail_equality},
          {"modulus_evaluated", r.modulus_evaluated},
          {"modulus_error", r.modulus_error},
          {"grid", r.grid}};
}

json optional_vec(const std::optional<std::vector<double>>& v) { return v ? json(*v) : json(nullptr); }

void run_minimax(RunResult& r, const json& cfg, const std::filesystem::path& base) {
  const json& p = cfg["problem"];
  const IncrementSpec spec = spec_of(p);
  const auto a = p["a"].get<std::vector<double>>();
  const int N = p["N"];
  const TruncationConfig trunc = trunc_of(cfg["trunc"]);
  const DensityClass cls = class_of(p["class"]);
  const std::string method = p["method"];
  LeastFavorableSolution lf;
  if (method == "white-noise") {
    const double s2 = p["g"].is_null() ? 1.0 : p["g"]["sigma2"].get<double>();
    lf = white_noise_least_favorable(spec, N, a, cls.P1, s2);
  } else if (method == "known-g") {
    const DensityModel g = density_of(p["g"], spec, base);
    const int L = trunc.resolve(N + spec.span());
    const FourierTable gt = fourier_coefficients(g, static_cast<std::size_t>(N + spec.span() + 2 * L), trunc.quadrature);
    lf = solve_known_g(spec, N, a, gt, cls, trunc);
  } else {
    FixedPointOptions fo;
    fo.damping = p["fixed_point"]["damping"];
    fo.max_iterations = p["fixed_point"]["max_iterations"];
    fo.tolerance = p["fixed_point"]["tolerance"];
    lf = solve_D0_fixed_point(spec, N, a, cls, trunc, fo);
  }
  json j{{"method", lf.method},
         {"p1", lf.p1},
         {"p2", lf.p2},
         {"p1_vec", lf.p1_vec},
         {"p2_vec", lf.p2_vec},
         {"f0", lf.f0.coeffs},
         {"g0", lf.g0.coeffs},
         {"gamma", optional_vec(lf.gamma)},
         {"zeta", optional_vec(lf.zeta)},
         {"moments_f", lf.moments_f},
         {"moments_g", lf.moments_g},
         {"iterations", lf.iterations},
         {"converged", lf.converged},
         {"valid", lf.valid},
         {"residuals", residuals_json(lf.residuals)}};
  r.report["result"]["least_favorable"] = j;
  r.csv["fourier.csv"] = fourier_csv(lf.f0, lf.g0);
  if (!lf.valid) {
    r.exit_code = kExitDiagnostic;
    return;
  }
  EstimateSolution s = minimax_characteristic(lf, spec, N, a, trunc);
  add_solution(r, s, cfg, "characteristic");
}

void run_oracle(RunResult& r, const json& cfg, const std::filesystem::path& base) {
  const json& p = cfg["problem"];
  const IncrementSpec spec = spec_of(p);
  const TruncationConfig trunc = trunc_of(cfg["trunc"]);
  const json& o = p["oracle"];
  OracleConfig oc;
  oc.T = o["T"];
  oc.seed = o["seed"];
  oc.samples = o["samples"];
  if (!o["jitter"].is_null()) oc.jitter = o["jitter"].get<double>();
  oc.quadrature = trunc.quadrature;
  const double tol = o["tolerance"];
  const DensityModel f = density_of(p["f"], spec, base), g = density_of(p["g"], spec, base);
  OracleComparison cmp;
  if (p["target"] == "filter") {
    FilteringProblem fp{spec, p["a_future"].get<std::vector<double>>(), p["N"].get<int>(), f, g, trunc};
    cmp = compare_spectral_vs_oracle(fp, oc, tol);
  } else {
    InterpolationProblem ip{spec, p["a"].get<std::vector<double>>(), f, g, trunc};
    cmp = compare_spectral_vs_oracle(ip, oc, tol);
  }
  json j{{"mse_spectral", cmp.mse_spectral},
         {"mse_oracle", cmp.mse_oracle},
         {"relative_gap", cmp.relative_gap},
         {"max_weight_gap", cmp.max_weight_gap},
         {"overlap", cmp.overlap},
         {"pass", cmp.pass}};
  j["oracle"] = {{"T", oc.T},
                 {"jitter", cmp.oracle.jitter},
                 {"jitter_retries", cmp.oracle.jitter_retries},
                 {"past", cmp.oracle.past},
                 {"future", cmp.oracle.future}};
  if (oc.samples > 0) {
    const OracleResult mc = monte_carlo_check(spec, cmp.spectral.b, f, g, oc);
    j["monte_carlo"] = {{"samples", mc.samples},
                        {"seed", oc.seed},
                        {"empirical_mse", *mc.empirical_mse},
                        {"standard_error", *mc.standard_error},
                        {"within_3se", std::abs(*mc.empirical_mse - mc.mse) <= 3.0 * *mc.standard_error}};
  }
  r.report["result"]["comparison"] = j;
  r.csv["fourier.csv"] = fourier_csv(cmp.spectral.f_table, cmp.spectral.g_table);
  if (!cmp.pass) r.exit_code = kExitDiagnostic;
}

void dispatch(RunResult& r, const json& cfg, const std::filesystem::path& base) {
  const std::string command = cfg["command"];
  const json& p = cfg["problem"];
  if (command == "minimax") return run_minimax(r, cfg, base);
  if (command == "oracle-check") return run_oracle(r, cfg, base);
  const IncrementSpec spec = spec_of(p);
  const DensityModel f = density_of(p["f"], spec, base), g = density_of(p["g"], spec, base);
  const TruncationConfig trunc = trunc_of(cfg["trunc"]);
  EstimateSolution s;
  if (command == "interpolate") {
    s = solve_functional({spec, p["a"].get<std::vector<double>>(), f, g, trunc});
  } else if (command == "increment") {
    s = solve_single_increment(spec, p["m"].get<int>(), p["N"].get<int>(), f, g, trunc);
  } else {
    s = solve_filtering({spec, p["a_future"].get<std::vector<double>>(), p["N"].get<int>(), f, g, trunc});
  }
  add_solution(r, s, cfg);
}

bool is_input_code(ErrorCode c) {
  return c == ErrorCode::kInvalidArgument || c == ErrorCode::kConfiguration || c == ErrorCode::kIndexOutOfRange;
}

std::string summarize(const RunResult& r) {
  std::ostringstream o;
  o << r.report.value("command", "?") << ": " << r.report["status"].get<std::string>();
  const json& res = r.report["result"];
  if (res.contains("solution")) o << ", mse=" << num(res["solution"]["mse"].get<double>());
  if (res.contains("characteristic")) o << ", minimax mse=" << num(res["characteristic"]["mse"].get<double>());
  if (res.contains("comparison"))
    o << ", relative gap=" << num(res["comparison"]["relative_gap"].get<double>());
  if (r.report.contains("error")) o << ", " << r.report["error"]["message"].get<std::string>();
  return o.str();
}

}  // namespace

RunResult run_config(const json& config, const RunOptions& opt) {
  RunResult r;
  r.report["schema_version"] = kSchemaVersion;
  if (config.is_object() && config.contains("command") && config["command"].is_string())
    r.report["command"] = config["command"];
  json cfg;
  try {
    cfg = normalize_config(config, opt);
  } catch (const InputError& e) {
    r.exit_code = kExitInput;
    r.report["status"] = "input-error";
    r.report["error"] = {{"code", "input-error"}, {"field", e.path()}, {"message", e.what()}};
    r.report["result"] = json::object();
    r.summary = summarize(r);
    return r;
  }
  r.report["command"] = cfg["command"];
  r.report["config"] = cfg;
  r.report["result"] = json::object();
  try {
    dispatch(r, cfg, opt.base_dir);
    r.report["status"] = r.exit_code == kExitOk ? "ok" : "diagnostic-failure";
  } catch (const Error& e) {
    r.exit_code = is_input_code(e.code()) ? kExitInput : kExitDiagnostic;
    r.report["status"] = r.exit_code == kExitInput ? "input-error" : "diagnostic-failure";
    r.report["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  } catch (const nlohmann::json::exception& e) {
    r.exit_code = kExitInput;
    r.report["status"] = "input-error";
    r.report["error"] = {{"code", "input-error"}, {"message", e.what()}};
  }
  r.summary = summarize(r);
  return r;
}

void write_outputs(const RunResult& result, const std::filesystem::path& out_dir, OutputFormat format) {
  std::filesystem::create_directories(out_dir);
  if (format != OutputFormat::kCsv) {
    std::ofstream f(out_dir / "report.json");
    f << result.report.dump(2) << '\n';
    if (!f) throw std::runtime_error("cannot write " + (out_dir / "report.json").string());
  }
  if (format != OutputFormat::kJson) {
    for (const auto& [name, body] : result.csv) {
      std::ofstream f(out_dir / name);
      f << body;
      if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
    }
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpolation, filtering and minimax estimation for sequences with stationary increments"};
  std::string config_path, out_dir, format = "json";
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  app.add_option("--config", config_path, "Path to the JSON run configuration")->required();
  app.add_option("--out", out_dir, "Directory for report.json and CSV tables (stdout when absent)");
  app.add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_option("--seed", seed, "Override the Monte-Carlo seed");
  app.add_flag("--verbose", verbose, "Print a one-line summary to stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  const OutputFormat fmt = format == "csv" ? OutputFormat::kCsv : format == "both" ? OutputFormat::kBoth : OutputFormat::kJson;

  json config;
  {
    std::ifstream in(config_path);
    if (!in) {
      err << "error: cannot open config " << config_path << '\n';
      return kExitInput;
    }
    try {
      in >> config;
    } catch (const json::parse_error& e) {
      err << "error: " << config_path << ": " << e.what() << '\n';
      return kExitInput;
    }
  }
  RunOptions opt;
  opt.seed = seed;
  opt.base_dir = std::filesystem::absolute(config_path).parent_path();
  const RunResult r = run_config(config, opt);
  if (verbose || r.exit_code != kExitOk) err << r.summary << '\n';
  if (out_dir.empty()) {
    if (fmt != OutputFormat::kJson) err << "warning: CSV tables need --out; printing the JSON report only\n";
    out << r.report.dump(2) << '\n';
  } else {
    try {
      write_outputs(r, out_dir, fmt);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitInput;
    }
  }
  return r.exit_code;
}

}  // namespace stinc::cli

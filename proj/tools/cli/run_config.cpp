// Copyright 2026 The qgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "run_config.hpp"

#include <cmath>
#include <set>

#include "qgame/basis.hpp"
#include "qgame/errors.hpp"

namespace qgame::cli {

using nlohmann::json;

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kSimulate: return "simulate";
    case Mode::kOriginAnalysis: return "origin-analysis";
    case Mode::kStiffness: return "stiffness";
    case Mode::kObstructionCheck: return "obstruction-check";
    case Mode::kGibbsCheck: return "gibbs-check";
  }
  return "unknown";
}

Mode parse_mode(const std::string& name) {
  for (Mode m : {Mode::kSimulate, Mode::kOriginAnalysis, Mode::kStiffness, Mode::kObstructionCheck, Mode::kGibbsCheck})
    if (name == to_string(m)) return m;
  throw ConfigError("unknown mode '" + name + "'");
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

template <typename T>
void read(const json& obj, const char* key, T& target, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

void read_size(const json& obj, const char* key, std::size_t& target, const std::string& where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(where + "." + key + " must be a nonnegative integer");
  target = v.get<std::size_t>();
}

Clock parse_clock(const std::string& name) {
  if (name == "game-time") return Clock::kGameTime;
  if (name == "entropy-time") return Clock::kEntropyTime;
  throw ConfigError("clock must be 'game-time' or 'entropy-time', got '" + name + "'");
}

RMatrix read_matrix(const json& rows, std::size_t d, const std::string& where) {
  if (!rows.is_array() || rows.size() != d) throw ConfigError(where + " must be a " + std::to_string(d) + "x" + std::to_string(d) + " array");
  RMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (!rows[i].is_array() || rows[i].size() != d) throw ConfigError(where + " row " + std::to_string(i) + " has the wrong length");
    for (std::size_t j = 0; j < d; ++j) {
      if (!rows[i][j].is_number()) throw ConfigError(where + " entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

StartSpec parse_start(const json& obj) {
  reject_unknown_keys(obj, {"kind", "scale", "theta"}, "start");
  StartSpec s;
  std::string kind = "regularized_origin";
  read(obj, "kind", kind, "start");
  if (kind == "regularized_origin") s.kind = StartSpec::Kind::kRegularizedOrigin;
  else if (kind == "random_admissible") s.kind = StartSpec::Kind::kRandomAdmissible;
  else if (kind == "random") s.kind = StartSpec::Kind::kRandom;
  else if (kind == "theta") s.kind = StartSpec::Kind::kTheta;
  else throw ConfigError("start.kind '" + kind + "' is not one of regularized_origin, random_admissible, random, theta");
  read(obj, "scale", s.scale, "start");
  read(obj, "theta", s.theta, "start");
  if (!(s.scale > 0.0)) throw ConfigError("start.scale must be positive");
  if (s.kind == StartSpec::Kind::kTheta && s.theta.empty()) throw ConfigError("start.theta is required for kind 'theta'");
  return s;
}

FlowConfig parse_flow(const json& obj, const SubsystemShape& shape) {
  reject_unknown_keys(obj,
                      {"c", "eps", "rate_min", "conservation_budget", "dissipative", "reversible", "reversible_rate",
                       "initial_step", "abs_tol", "rel_tol", "min_step", "max_step", "max_steps", "kernel_threshold"},
                      "flow");
  FlowConfig f;
  read(obj, "c", f.c, "flow");
  read(obj, "eps", f.eps, "flow");
  read(obj, "rate_min", f.rate_min, "flow");
  read(obj, "conservation_budget", f.conservation_budget, "flow");
  read(obj, "dissipative", f.dissipative, "flow");
  if (obj.contains("reversible_rate") && !obj.at("reversible_rate").is_null()) {
    double rate = 0.0;
    read(obj, "reversible_rate", rate, "flow");
    f.reversible_rate = rate;
  }
  read(obj, "initial_step", f.step.initial_step, "flow");
  read(obj, "abs_tol", f.step.abs_tol, "flow");
  read(obj, "rel_tol", f.step.rel_tol, "flow");
  read(obj, "min_step", f.step.min_step, "flow");
  read(obj, "max_step", f.step.max_step, "flow");
  read_size(obj, "max_steps", f.step.max_steps, "flow");
  read(obj, "kernel_threshold", f.constraint.kernel_threshold, "flow");
  if (obj.contains("reversible")) {
    const json& terms = obj.at("reversible");
    if (!terms.is_array()) throw ConfigError("flow.reversible must be an array of terms");
    for (const json& term : terms) f.reversible.terms.push_back(parse_local_term(term, shape));
  }
  return f;
}

}  // namespace

LocalTerm parse_local_term(const json& term, const SubsystemShape& shape) {
  reject_unknown_keys(term, {"subsystem", "gell_mann", "real", "imag", "scale"}, "reversible term");
  std::size_t site = 0;
  if (!term.contains("subsystem")) throw ConfigError("reversible term needs a 'subsystem'");
  read_size(term, "subsystem", site, "reversible term");
  if (site >= shape.count()) throw ConfigError("reversible term subsystem " + std::to_string(site) + " out of range");
  const std::size_t d = shape.dim(site);
  double scale = 1.0;
  read(term, "scale", scale, "reversible term");

  CMatrix op;
  if (term.contains("gell_mann")) {
    if (term.contains("real") || term.contains("imag")) throw ConfigError("reversible term: give either gell_mann or real/imag");
    std::size_t k = 0;
    read_size(term, "gell_mann", k, "reversible term");
    if (k < 1 || k > d * d - 1)
      throw ConfigError("gell_mann index must lie in 1.." + std::to_string(d * d - 1) + " for dimension " + std::to_string(d));
    op = generalized_gell_mann(d)[k - 1];
  } else if (term.contains("real")) {
    const RMatrix re = read_matrix(term.at("real"), d, "reversible term real part");
    const RMatrix im = term.contains("imag") ? read_matrix(term.at("imag"), d, "reversible term imaginary part")
                                             : RMatrix::Zero(re.rows(), re.cols());
    op = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
  } else {
    throw ConfigError("reversible term needs 'gell_mann' or 'real'");
  }
  try {
    return LocalTerm{site, HermitianOperator(op * scale)};
  } catch (const DomainError&) {
    throw ConfigError("reversible term on subsystem " + std::to_string(site) + " is not Hermitian");
  }
}

void RunConfig::validate() const {
  if (shape.empty()) throw ConfigError("shape must list at least one local dimension");
  for (std::size_t d : shape)
    if (d < 2) throw ConfigError("every local dimension must be at least 2");
  std::size_t total = 1;
  for (std::size_t d : shape) total *= d;
  if (total > 64) throw ConfigError("total dimension " + std::to_string(total) + " exceeds 64");
  try {
    flow.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("flow: ") + e.what());
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be positive and finite");
  const bool equal_bipartite = shape.size() == 2 && shape[0] == shape[1];

  switch (mode) {
    case Mode::kSimulate:
      if (!flow.dissipative && clock == Clock::kEntropyTime)
        throw ConfigError("entropy time needs the dissipative part; use clock 'game-time' for a pure commutator run");
      if (!flow.dissipative && flow.reversible.empty()) throw ConfigError("a pure commutator run needs flow.reversible terms");
      if (start.kind == StartSpec::Kind::kRegularizedOrigin && !equal_bipartite)
        throw ConfigError("the regularised origin needs a bipartite shape with equal dimensions");
      break;
    case Mode::kOriginAnalysis:
      if (!equal_bipartite) throw ConfigError("origin-analysis needs a bipartite shape with equal dimensions");
      if (analysis.eps_sweep.empty()) throw ConfigError("analysis.eps_sweep is empty");
      for (double eps : analysis.eps_sweep)
        if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("every eps in analysis.eps_sweep must lie in (0, 1)");
      if (!(analysis.soft_threshold > 0.0)) throw ConfigError("analysis.soft_threshold must be positive");
      break;
    case Mode::kStiffness:
      if (start.kind == StartSpec::Kind::kRegularizedOrigin && !equal_bipartite)
        throw ConfigError("the regularised origin needs a bipartite shape with equal dimensions");
      if (!(analysis.soft_threshold > 0.0)) throw ConfigError("analysis.soft_threshold must be positive");
      break;
    case Mode::kObstructionCheck:
      if (obstruction.max_alphabet < 1 || obstruction.max_alphabet > 6)
        throw ConfigError("obstruction.max_alphabet must lie in 1..6");
      if (obstruction.samples < 1 || obstruction.samples > 1000000)
        throw ConfigError("obstruction.samples must lie in 1..1000000");
      if (obstruction.witness_q < 2 || obstruction.witness_q > 8) throw ConfigError("obstruction.witness_q must lie in 2..8");
      if (!(obstruction.slack >= 0.0)) throw ConfigError("obstruction.slack must be nonnegative");
      break;
    case Mode::kGibbsCheck:
      if (gibbs.dim < 2 || gibbs.dim > 8) throw ConfigError("gibbs.dim must lie in 2..8");
      if (!(gibbs.beta_range > 0.0)) throw ConfigError("gibbs.beta_range must be positive");
      break;
  }
}

RunConfig parse_run_config(const json& doc) {
  reject_unknown_keys(doc,
                      {"mode", "shape", "seed", "out", "bits", "clock", "duration", "export_theta", "start", "flow",
                       "analysis", "obstruction", "gibbs"},
                      "config");
  RunConfig cfg;
  if (doc.contains("mode")) {
    std::string mode;
    read(doc, "mode", mode, "config");
    cfg.mode = parse_mode(mode);
  }
  if (doc.contains("shape")) {
    const json& s = doc.at("shape");
    if (!s.is_array()) throw ConfigError("shape must be an array of local dimensions");
    cfg.shape.clear();
    for (const json& d : s) {
      if (!d.is_number_integer() || d.get<long long>() < 2) throw ConfigError("every local dimension must be an integer >= 2");
      cfg.shape.push_back(d.get<std::size_t>());
    }
    if (cfg.shape.empty()) throw ConfigError("shape must list at least one local dimension");
  }
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0) throw ConfigError("seed must be a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("out")) {
    std::string out;
    read(doc, "out", out, "config");
    cfg.out = out;
  }
  read(doc, "bits", cfg.bits, "config");
  if (doc.contains("clock")) {
    std::string clock;
    read(doc, "clock", clock, "config");
    cfg.clock = parse_clock(clock);
  }
  read(doc, "duration", cfg.duration, "config");
  read(doc, "export_theta", cfg.export_theta, "config");
  if (doc.contains("start")) cfg.start = parse_start(doc.at("start"));

  const SubsystemShape shape = [&] {
    try {
      return SubsystemShape(cfg.shape);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  if (doc.contains("flow")) cfg.flow = parse_flow(doc.at("flow"), shape);

  if (doc.contains("analysis")) {
    const json& a = doc.at("analysis");
    reject_unknown_keys(a, {"eps_sweep", "soft_threshold"}, "analysis");
    read(a, "eps_sweep", cfg.analysis.eps_sweep, "analysis");
    read(a, "soft_threshold", cfg.analysis.soft_threshold, "analysis");
  }
  if (doc.contains("obstruction")) {
    const json& o = doc.at("obstruction");
    reject_unknown_keys(o, {"samples", "max_alphabet", "slack", "witness_q"}, "obstruction");
    read_size(o, "samples", cfg.obstruction.samples, "obstruction");
    read_size(o, "max_alphabet", cfg.obstruction.max_alphabet, "obstruction");
    read(o, "slack", cfg.obstruction.slack, "obstruction");
    read_size(o, "witness_q", cfg.obstruction.witness_q, "obstruction");
  }
  if (doc.contains("gibbs")) {
    const json& g = doc.at("gibbs");
    reject_unknown_keys(g, {"instances", "dim", "beta_range", "states"}, "gibbs");
    read_size(g, "instances", cfg.gibbs.instances, "gibbs");
    read_size(g, "dim", cfg.gibbs.dim, "gibbs");
    read(g, "beta_range", cfg.gibbs.beta_range, "gibbs");
    read_size(g, "states", cfg.gibbs.states, "gibbs");
  }
  return cfg;
}

}  // namespace qgame::cli

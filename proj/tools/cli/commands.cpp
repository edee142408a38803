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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qgame/classical.hpp"
#include "qgame/constraint.hpp"
#include "qgame/errors.hpp"
#include "qgame/modular.hpp"
#include "qgame/random.hpp"

namespace qgame::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kDefaultOut = "qgame_out";

double entropy_unit(const RunConfig& cfg) { return cfg.bits ? 1.0 / std::log(2.0) : 1.0; }

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

std::string eps_key(double eps) {
  std::ostringstream s;
  s << eps;
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

void write_report(const RunConfig& cfg, const std::string& name, const Json& report) {
  if (cfg.out) write_text(fs::path(*cfg.out) / name, report.dump(2) + "\n");
}

void expect(CommandOutcome& outcome, bool condition, const std::string& assertion, const std::string& detail) {
  if (!condition) outcome.failures.push_back({assertion, detail});
}

std::string format(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::shared_ptr<const OperatorBasis> basis_for(const RunConfig& cfg) {
  return std::make_shared<const OperatorBasis>(OperatorBasis::product(SubsystemShape(cfg.shape)));
}

NaturalParams start_params(const RunConfig& cfg, const std::shared_ptr<const OperatorBasis>& basis,
                           std::mt19937_64& rng) {
  const auto m = static_cast<Eigen::Index>(basis->size());
  std::normal_distribution<double> gauss(0.0, cfg.start.scale);
  switch (cfg.start.kind) {
    case StartSpec::Kind::kRegularizedOrigin:
      return params_from_state(regularized_origin(basis->shape(), cfg.flow.eps), *basis);
    case StartSpec::Kind::kRandomAdmissible: {
      const RMatrix n = kernel_basis(marginal_jacobian(ExpFamilyPoint(NaturalParams::zero(basis->size()), basis)),
                                     cfg.flow.constraint.kernel_threshold);
      RVector c(n.cols());
      for (auto& x : c) x = gauss(rng);
      return NaturalParams(n * c);
    }
    case StartSpec::Kind::kRandom: {
      RVector theta(m);
      for (auto& x : theta) x = gauss(rng);
      return NaturalParams(theta);
    }
    case StartSpec::Kind::kTheta:
      if (cfg.start.theta.size() != basis->size())
        throw ConfigError("start.theta has " + std::to_string(cfg.start.theta.size()) + " entries; the basis has " +
                          std::to_string(basis->size()));
      return NaturalParams(Eigen::Map<const RVector>(cfg.start.theta.data(), m));
  }
  throw ConfigError("unhandled start kind");
}

}  // namespace

CommandOutcome run_simulate(const RunConfig& cfg) {
  CommandOutcome outcome;
  const auto basis = basis_for(cfg);
  std::mt19937_64 rng(cfg.seed);
  const NaturalParams start = start_params(cfg, basis, rng);
  const Trajectory traj = integrate(start, basis, cfg.flow, cfg.clock, cfg.duration);
  const double u = entropy_unit(cfg);

  const TrajectorySample& first = traj.samples.front();
  const TrajectorySample& last = traj.samples.back();
  const LinearFit fit = traj.entropy_vs_time();
  Json& s = outcome.report;
  s["mode"] = to_string(Mode::kSimulate);
  s["units"] = cfg.bits ? "bits" : "nats";
  s["clock"] = to_string(traj.clock);
  s["c"] = cfg.flow.c;
  s["H_initial"] = first.entropy * u;
  s["H_final"] = last.entropy * u;
  s["C_initial"] = first.constraint * u;
  s["C_drift_max"] = traj.max_constraint_drift() * u;
  s["slope_of_H_vs_t"] = fit.slope * u;
  s["r_squared"] = fit.r_squared;
  s["termination_status"] = to_string(traj.status);
  s["message"] = traj.message;
  s["samples"] = traj.samples.size();
  s["rejected_steps"] = traj.rejected_steps;
  s["t_final"] = last.t;
  s["tau_final"] = last.tau;
  s["rate_initial"] = first.rate * u;
  s["rate_final"] = last.rate * u;
  s["theta_norm_initial"] = first.theta_norm;
  s["theta_norm_final"] = last.theta_norm;
  s["max_marginal_deviation"] = traj.max_marginal_deviation();

  expect(outcome, traj.status != TerminationStatus::kStiffRegion && traj.status != TerminationStatus::kConservationViolated,
         "termination_status", std::string(to_string(traj.status)) + ": " + traj.message);
  expect(outcome, traj.max_constraint_drift() <= cfg.flow.conservation_budget, "conservation",
         "C drifted by " + format(traj.max_constraint_drift()));
  if (cfg.flow.dissipative) {
    double worst_drop = 0.0;
    for (std::size_t k = 1; k < traj.samples.size(); ++k)
      worst_drop = std::max(worst_drop, traj.samples[k - 1].entropy - traj.samples[k].entropy);
    expect(outcome, worst_drop <= 1e-10, "entropy_monotone", "H decreased by " + format(worst_drop));
    if (traj.clock == Clock::kEntropyTime && traj.samples.size() >= 3)
      expect(outcome, std::abs(fit.slope - cfg.flow.c) <= 1e-4 * cfg.flow.c, "entropy_time_slope",
             "slope " + format(fit.slope) + " differs from c = " + format(cfg.flow.c));
  }

  const fs::path dir(cfg.out.value_or(kDefaultOut));
  std::ostringstream csv;
  write_trajectory_csv(traj, csv, cfg.bits);
  write_text(dir / "trajectory.csv", csv.str());
  write_text(dir / "summary.json", s.dump(2) + "\n");
  if (cfg.export_theta) {
    Json doc;
    doc["clock"] = to_string(traj.clock);
    Json labels = Json::array();
    for (const Sector& sector : basis->sectors()) labels.push_back(sector.label());
    doc["basis_sectors"] = labels;
    Json samples = Json::array();
    for (const TrajectorySample& sample : traj.samples)
      samples.push_back({{"step", sample.step}, {"tau", sample.tau}, {"t", sample.t}, {"theta", to_json(sample.theta)}});
    doc["samples"] = samples;
    write_text(dir / "theta.json", doc.dump() + "\n");
  }
  return outcome;
}

namespace {

struct OriginRow {
  Json json;
  std::vector<Failure> failures;
  long kernel_dim = -1;
};

OriginRow analyse_origin(const std::shared_ptr<const OperatorBasis>& basis, double eps, const RunConfig& cfg) {
  OriginRow row;
  const double u = entropy_unit(cfg);
  const double threshold = cfg.analysis.soft_threshold;
  try {
    const ExpFamilyPoint point(params_from_state(regularized_origin(basis->shape(), eps), *basis), basis);
    ConstraintOptions options = cfg.flow.constraint;
    options.with_hessian = true;
    const ConstraintGeometry geo = ConstraintGeometry::compute(point, options);
    const RVector hess_eig = Eigen::SelfAdjointEigenSolver<RMatrix>(*geo.hessian, Eigen::EigenvaluesOnly).eigenvalues();
    const StiffnessSpectrum spec = stiffness_spectrum(*geo.hessian, point.metric());
    const std::size_t soft = spec.soft_count(threshold);
    const double angle = soft > 0 ? principal_angles(spec.soft_modes(threshold), geo.kernel).maxCoeff() : 0.0;
    const double a_norm = geo.gradient.norm();
    row.kernel_dim = static_cast<long>(geo.kernel.cols());

    Json& j = row.json;
    j["theta_norm"] = point.params().norm();
    j["constraint"] = geo.value * u;
    j["constraint_deficit"] = (basis->shape().max_marginal_entropy_sum() - geo.value) * u;
    j["gradient_norm"] = a_norm * u;
    j["hessian_max_eigenvalue"] = hess_eig.maxCoeff() * u;
    j["hessian_min_eigenvalue"] = hess_eig.minCoeff() * u;
    j["kernel_dim"] = geo.kernel.cols();
    j["soft_count"] = soft;
    j["max_principal_angle"] = angle;
    j["stiffness_min"] = spec.values.minCoeff() * u;
    j["first_stiff_eigenvalue"] = soft < static_cast<std::size_t>(spec.values.size()) ? spec.values(static_cast<Eigen::Index>(soft)) * u : 0.0;
    j["metric_min_eigenvalue"] =
        Eigen::SelfAdjointEigenSolver<RMatrix>(point.metric(), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();

    const std::string at = " at eps " + eps_key(eps);
    if (a_norm > 1e-8) row.failures.push_back({"gradient_vanishes", "|a| = " + format(a_norm) + at});
    if (hess_eig.maxCoeff() > 1e-6)
      row.failures.push_back({"hessian_nsd", "max eigenvalue " + format(hess_eig.maxCoeff()) + at});
    if (static_cast<long>(soft) != row.kernel_dim)
      row.failures.push_back({"soft_modes_match_kernel",
                              std::to_string(soft) + " soft modes vs kernel dimension " + std::to_string(row.kernel_dim) + at});
    if (!(angle < 1e-3)) row.failures.push_back({"principal_angles", "max angle " + format(angle) + at});
  } catch (const Error& e) {
    row.json["error"] = e.what();
    row.failures.push_back({"geometry", std::string(e.what()) + " at eps " + eps_key(eps)});
  }
  return row;
}

}  // namespace

CommandOutcome run_origin_analysis(const RunConfig& cfg) {
  CommandOutcome outcome;
  const auto basis = basis_for(cfg);
  std::vector<std::future<OriginRow>> jobs;
  for (double eps : cfg.analysis.eps_sweep)
    jobs.push_back(std::async(std::launch::async, analyse_origin, basis, eps, std::cref(cfg)));

  Json& r = outcome.report;
  r["mode"] = to_string(Mode::kOriginAnalysis);
  r["units"] = cfg.bits ? "bits" : "nats";
  r["shape"] = cfg.shape;
  r["soft_threshold"] = cfg.analysis.soft_threshold;
  r["kernel_threshold"] = cfg.flow.constraint.kernel_threshold;
  Json sweep = Json::object();
  std::vector<long> dims;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    OriginRow row = jobs[k].get();
    sweep[eps_key(cfg.analysis.eps_sweep[k])] = row.json;
    for (Failure& f : row.failures) outcome.failures.push_back(std::move(f));
    if (row.kernel_dim >= 0) dims.push_back(row.kernel_dim);
  }
  r["sweep"] = sweep;
  const bool constant = std::adjacent_find(dims.begin(), dims.end(), std::not_equal_to<>()) == dims.end();
  r["kernel_dim_constant"] = constant;
  expect(outcome, constant, "kernel_dim_constant", "kernel dimension varies across the sweep");
  write_report(cfg, "origin_analysis.json", r);
  return outcome;
}

CommandOutcome run_stiffness(const RunConfig& cfg) {
  CommandOutcome outcome;
  const auto basis = basis_for(cfg);
  std::mt19937_64 rng(cfg.seed);
  const ExpFamilyPoint point(start_params(cfg, basis, rng), basis);
  ConstraintOptions options = cfg.flow.constraint;
  options.with_hessian = true;
  const ConstraintGeometry geo = ConstraintGeometry::compute(point, options);
  const StiffnessSpectrum spec = stiffness_spectrum(*geo.hessian, point.metric());
  const double threshold = cfg.analysis.soft_threshold;
  const std::size_t soft = spec.soft_count(threshold);
  const double angle = soft > 0 ? principal_angles(spec.soft_modes(threshold), geo.kernel).maxCoeff() : 0.0;

  double deviation = 0.0;
  for (std::size_t i = 0; i < basis->shape().count(); ++i) {
    const auto d = static_cast<Eigen::Index>(basis->shape().dim(i));
    const CMatrix reduced = partial_trace(point.state_matrix(), basis->shape(), i);
    deviation = std::max(deviation, (reduced - CMatrix::Identity(d, d) / static_cast<double>(d)).norm());
  }
  const bool saturated = deviation <= 1e-8;
  const double u = entropy_unit(cfg);

  Json& r = outcome.report;
  r["mode"] = to_string(Mode::kStiffness);
  r["units"] = cfg.bits ? "bits" : "nats";
  r["shape"] = cfg.shape;
  r["theta_norm"] = point.params().norm();
  r["constraint"] = geo.value * u;
  r["marginal_deviation"] = deviation;
  r["saturated"] = saturated;
  r["kernel_dim"] = geo.kernel.cols();
  r["soft_threshold"] = threshold;
  r["soft_count"] = soft;
  r["max_principal_angle"] = angle;
  r["eigenvalues"] = to_json(spec.values * u);

  if (saturated) {
    expect(outcome, spec.values.minCoeff() >= -1e-7, "stiffness_nonnegative",
           "smallest eigenvalue " + format(spec.values.minCoeff()));
    expect(outcome, soft == static_cast<std::size_t>(geo.kernel.cols()), "soft_modes_match_kernel",
           std::to_string(soft) + " soft modes vs kernel dimension " + std::to_string(geo.kernel.cols()));
  }
  write_report(cfg, "stiffness.json", r);
  return outcome;
}

CommandOutcome run_obstruction_check(const RunConfig& cfg) {
  CommandOutcome outcome;
  const ObstructionSpec& o = cfg.obstruction;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> alphabet(1, o.max_alphabet);
  const double u = entropy_unit(cfg);

  std::size_t conditional_violations = 0, mutual_violations = 0, chain_violations = 0;
  double conditional_worst = -std::numeric_limits<double>::infinity();
  double mutual_worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < o.samples; ++k) {
    const JointDistribution j = random_joint_distribution(alphabet(rng), alphabet(rng), rng);
    const ShannonEntropies e = shannon_entropies(j);
    // Excess over each bound; positive values are violations.
    const double conditional_excess = -std::min(e.h1_given_2, e.joint - e.h1);
    const double mutual_excess = e.mutual - std::min(e.h1, e.h2);
    conditional_worst = std::max(conditional_worst, conditional_excess);
    mutual_worst = std::max(mutual_worst, mutual_excess);
    if (conditional_excess > o.slack) ++conditional_violations;
    if (mutual_excess > o.slack) ++mutual_violations;
    if (std::abs(e.mutual - (e.h1 - e.h1_given_2)) > 1e-12) ++chain_violations;
  }

  std::size_t certificate_failures = 0;
  for (std::size_t rows = 1; rows <= o.max_alphabet; ++rows) {
    for (std::size_t cols = 1; cols <= o.max_alphabet; ++cols) {
      RMatrix t = RMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
      t(static_cast<Eigen::Index>(rows - 1), 0) = 1.0;
      const ObstructionCertificate c = classical_origin_infeasible(JointDistribution(t), 0.0);
      if (!(c.holds() && c.marginal_sum_certified && c.point_mass)) ++certificate_failures;
    }
  }

  const DensityMatrix phi = lme_origin(SubsystemShape::bipartite(o.witness_q));
  const std::vector<double> h = marginal_entropies(phi);
  const double info = multi_information(phi);
  const double cap = std::min(h[0], h[1]);

  Json& r = outcome.report;
  r["mode"] = to_string(Mode::kObstructionCheck);
  r["units"] = cfg.bits ? "bits" : "nats";
  r["samples"] = o.samples;
  r["max_alphabet"] = o.max_alphabet;
  r["slack"] = o.slack;
  r["checks"] = {
      {"conditional_nonnegative", {{"count", o.samples}, {"violations", conditional_violations}, {"max_excess", conditional_worst * u}}},
      {"mutual_below_min", {{"count", o.samples}, {"violations", mutual_violations}, {"max_excess", mutual_worst * u}}},
      {"chain_rule", {{"count", o.samples}, {"violations", chain_violations}}},
      {"zero_joint_certificates", {{"count", o.max_alphabet * o.max_alphabet}, {"violations", certificate_failures}}},
  };
  r["quantum_witness"] = {{"q", o.witness_q},
                          {"joint_entropy", von_neumann_entropy(phi) * u},
                          {"marginal_entropies", {h[0] * u, h[1] * u}},
                          {"multi_information", info * u},
                          {"classical_cap", cap * u},
                          {"exceeds_classical_cap", info > cap + o.slack}};

  expect(outcome, conditional_violations == 0, "conditional_nonnegative",
         std::to_string(conditional_violations) + " tables with H(X|Y) < 0");
  expect(outcome, mutual_violations == 0, "mutual_below_min", std::to_string(mutual_violations) + " tables with I > min(h1, h2)");
  expect(outcome, chain_violations == 0, "chain_rule", std::to_string(chain_violations) + " tables break I = h1 - H(X|Y)");
  expect(outcome, certificate_failures == 0, "zero_joint_certificates",
         std::to_string(certificate_failures) + " point-mass tables not certified");
  expect(outcome, info > cap + o.slack, "quantum_witness", "I = " + format(info) + " does not exceed " + format(cap));
  write_report(cfg, "obstruction_check.json", r);
  return outcome;
}

CommandOutcome run_gibbs_check(const RunConfig& cfg) {
  CommandOutcome outcome;
  const GibbsSpec& g = cfg.gibbs;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> beta_dist(-g.beta_range, g.beta_range);
  const double u = entropy_unit(cfg);

  const SubsystemShape shape(cfg.shape);
  double identity_error = 0.0;
  for (std::size_t k = 0; k < g.states; ++k) {
    for (const DensityMatrix& m : marginals(random_density_matrix(shape, rng))) {
      const double lhs = von_neumann_entropy(m);
      const double rhs = hs_inner(m.matrix(), modular_hamiltonian(m).matrix());
      identity_error = std::max(identity_error, std::abs(lhs - rhs));
    }
  }

  double beta_error = 0.0, lock_residual = 0.0, mismatch_residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.instances; ++k) {
    const HermitianOperator h = random_hermitian(g.dim, rng);
    const double beta = beta_dist(rng);
    const GibbsLockFit fit = gibbs_lock_residual(GibbsFamily(h, beta).state(), h);
    beta_error = std::max(beta_error, std::abs(fit.beta_star - beta));
    lock_residual = std::max(lock_residual, fit.residual);
    const GibbsLockFit off = gibbs_lock_residual(random_density_matrix(SubsystemShape{g.dim}, rng), h);
    mismatch_residual = std::min(mismatch_residual, off.residual);
  }

  RVector z(2);
  z << 1.0, -1.0;
  const HermitianOperator sigma_z = HermitianOperator::diagonal(z);
  double derivative_error = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double beta = -g.beta_range + 2.0 * g.beta_range * k / 40.0;
    const double closed = -beta / (std::cosh(beta) * std::cosh(beta));
    derivative_error = std::max(derivative_error, std::abs(gibbs_entropy_derivative(GibbsFamily(sigma_z, beta)) - closed));
  }

  Json& r = outcome.report;
  r["mode"] = to_string(Mode::kGibbsCheck);
  r["units"] = cfg.bits ? "bits" : "nats";
  r["modular_identity"] = {{"states", g.states}, {"shape", cfg.shape}, {"max_error", identity_error * u}};
  r["gibbs_lock"] = {{"instances", g.instances},
                     {"dim", g.dim},
                     {"beta_range", g.beta_range},
                     {"max_beta_error", beta_error},
                     {"max_residual", lock_residual},
                     {"min_mismatch_residual", mismatch_residual}};
  r["entropy_derivative"] = {{"grid_points", 41}, {"max_error", derivative_error * u}};

  expect(outcome, identity_error <= 1e-10, "modular_identity", "max |h - <K>| = " + format(identity_error));
  expect(outcome, beta_error <= 1e-6, "gibbs_lock_recovery", "max |beta* - beta| = " + format(beta_error));
  expect(outcome, lock_residual <= 1e-8, "gibbs_lock_residual", "max residual " + format(lock_residual));
  expect(outcome, g.instances == 0 || mismatch_residual > 1e-8, "gibbs_lock_mismatch",
         "a generic state fit with residual " + format(mismatch_residual));
  expect(outcome, derivative_error <= 1e-7, "entropy_derivative", "max error " + format(derivative_error));
  write_report(cfg, "gibbs_check.json", r);
  return outcome;
}

CommandOutcome run_command(const RunConfig& cfg) {
  switch (cfg.mode) {
    case Mode::kSimulate: return run_simulate(cfg);
    case Mode::kOriginAnalysis: return run_origin_analysis(cfg);
    case Mode::kStiffness: return run_stiffness(cfg);
    case Mode::kObstructionCheck: return run_obstruction_check(cfg);
    case Mode::kGibbsCheck: return run_gibbs_check(cfg);
  }
  throw ConfigError("unhandled mode");
}

namespace {

nlohmann::json load_config(const std::string& path, std::istream& in) {
  std::string text;
  if (path.empty()) return nlohmann::json::object();
  if (path == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::ostringstream buffer;
    buffer << f.rdbuf();
    text = buffer.str();
  }
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

int report_failure(std::ostream& err, const std::string& mode, const std::string& kind,
                   const std::vector<Failure>& failures, const std::optional<std::string>& out_dir) {
  Json record;
  record["status"] = kind;
  record["mode"] = mode;
  Json list = Json::array();
  for (const Failure& f : failures) {
    err << "qgame: " << (kind == "invalid_config" ? "invalid configuration" : "assertion failed") << ": "
        << f.assertion << ": " << f.detail << '\n';
    list.push_back({{"assertion", f.assertion}, {"detail", f.detail}});
  }
  record["failures"] = list;
  err << record.dump() << '\n';
  if (out_dir) {
    try {
      write_text(fs::path(*out_dir) / "failure.json", record.dump(2) + "\n");
    } catch (const std::exception& e) {
      err << "qgame: " << e.what() << '\n';
    }
  }
  return kind == "invalid_config" ? 2 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained entropy-ascent flows on the matrix exponential family", "qgame"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool bits = false;
  app.add_option("--config", config_path, "JSON config file, or - for standard input");
  app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_flag("--bits", bits, "report entropies in bits instead of nats");

  const std::vector<std::pair<Mode, std::string>> modes{
      {Mode::kSimulate, "integrate a flow and write trajectory.csv and summary.json"},
      {Mode::kOriginAnalysis, "second-order constraint geometry over an eps sweep"},
      {Mode::kStiffness, "stiffness spectrum at one point"},
      {Mode::kObstructionCheck, "classical Shannon inequalities and the quantum witness"},
      {Mode::kGibbsCheck, "modular identity and Gibbs-lock diagnostics"},
  };
  for (const auto& [mode, help] : modes) app.add_subcommand(to_string(mode), help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  const std::string mode_name = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    cfg = parse_run_config(load_config(config_path, in));
    cfg.mode = parse_mode(mode_name);
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out = *out_dir;
    if (bits) cfg.bits = true;
    cfg.validate();
  } catch (const ConfigError& e) {
    return report_failure(err, mode_name, "invalid_config", {{"config", e.what()}}, out_dir);
  }

  CommandOutcome outcome;
  try {
    outcome = run_command(cfg);
  } catch (const ConfigError& e) {
    return report_failure(err, mode_name, "invalid_config", {{"config", e.what()}}, cfg.out);
  } catch (const Error& e) {
    return report_failure(err, mode_name, "invalid_config", {{"precondition", e.what()}}, cfg.out);
  } catch (const std::exception& e) {
    return report_failure(err, mode_name, "failed", {{"runtime", e.what()}}, cfg.out);
  }
  out << outcome.report.dump(2) << '\n';
  if (!outcome.ok()) return report_failure(err, mode_name, "failed", outcome.failures, cfg.out);
  return 0;
}

}  // namespace qgame::cli

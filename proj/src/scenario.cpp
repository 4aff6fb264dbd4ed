// Copyright 2026 The nvqoc Authors.
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

#include "nvqoc/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace nvqoc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Presets

struct Preset {
  std::string gate;
  SubsystemFlags include;
  bool system_is_pair;
  EvolutionMode mode;
  double gate_time;  // us
  double bz;         // Gauss
  bool default_bath;
  double lambda0;  // per-preset update weight, tuned empirically
};

const std::map<std::string, Preset>& preset_table() {
  static const std::map<std::string, Preset> table = [] {
    std::map<std::string, Preset> t;
    // Single-qubit gates on the electron at B_z = 500 G, T = 10 ns.
    // Suffixes: _e electron only, _n electron + 15N, _nc full register.
    for (const std::string g : {"x", "z", "h", "phase", "pi8", "identity"}) {
      t[g + "_e"] = Preset{g, {3, false, false}, false, EvolutionMode::hilbert, 0.01, 500.0, false, 0.03};
      t[g + "_n"] = Preset{g, {3, false, true}, false, EvolutionMode::hilbert, 0.01, 500.0, false, 0.03};
      t[g + "_nc"] = Preset{g, {3, true, true}, false, EvolutionMode::hilbert, 0.01, 500.0, false, 0.03};
    }
    // Two-qubit gate on electron (x) 13C with the 15N noise qubit,
    // B_z = 1000 G. cnot_n_bath adds the dephasing bath (liouville mode).
    t["cnot_n"] =
        Preset{"cnot", {3, true, true}, true, EvolutionMode::hilbert, 0.125, 1000.0, false, 0.1};
    t["cnot_n_bath"] =
        Preset{"cnot", {3, true, true}, true, EvolutionMode::liouville, 0.125, 1000.0, true, 0.1};
    // Idealized two-level electron variant (no leakage level).
    t["cnot_2lvl"] =
        Preset{"cnot", {2, true, true}, true, EvolutionMode::hilbert, 0.125, 1000.0, false, 0.1};
    t["identity_pair"] =
        Preset{"identity4", {3, true, true}, true, EvolutionMode::hilbert, 0.125, 1000.0, false, 0.1};
    return t;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Unit-checked config access

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("config error at '" + where + "': " + what);
}

void require_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(where + "." + key, "unknown key");
  }
}

enum class Dimension { time, field, frequency, rate };

double unit_factor(Dimension dim, const std::string& unit, const std::string& where) {
  switch (dim) {
    case Dimension::time:
      if (unit == "us") return 1.0;
      if (unit == "ns") return 1e-3;
      if (unit == "ms") return 1e3;
      break;
    case Dimension::field:
      if (unit == "G") return 1.0;
      if (unit == "mT") return 10.0;
      break;
    case Dimension::frequency:
      if (unit == "rad/us") return 1.0;
      if (unit == "GHz") return kTwoPi * 1e3;
      if (unit == "MHz") return kTwoPi;
      if (unit == "kHz") return kTwoPi * 1e-3;
      break;
    case Dimension::rate:
      if (unit == "1/us") return 1.0;
      if (unit == "1/ms") return 1e-3;
      break;
  }
  fail(where, "unsupported unit '" + unit + "'");
}

/// Physical quantities must be {"value": ..., "unit": "..."}; bare numbers
/// are rejected so a forgotten unit can never pass silently.
double quantity(const json& j, Dimension dim, const std::string& where) {
  if (!j.is_object()) fail(where, "expected {\"value\": ..., \"unit\": ...}, got a bare value");
  require_keys(j, where, {"value", "unit"});
  if (!j.contains("value") || !j["value"].is_number()) fail(where + ".value", "missing number");
  if (!j.contains("unit") || !j["unit"].is_string()) fail(where + ".unit", "missing unit string");
  return j["value"].get<double>() * unit_factor(dim, j["unit"].get<std::string>(), where);
}

double quantity_or(const json& parent, const std::string& key, Dimension dim, double fallback,
                   const std::string& where) {
  if (!parent.contains(key)) return fallback;
  return quantity(parent[key], dim, where + "." + key);
}

BathParams default_bath_for(double gate_time) {
  BathParams bath;
  bath.tau_c = 25.0;
  if (std::abs(gate_time - 0.125) < 1e-12) {
    bath.b = 38.46;
  } else if (std::abs(gate_time - 0.05) < 1e-12) {
    bath.b = 80.0;
  } else {
    bath.b = 3.846;
  }
  return bath;
}

double guess_bandwidth(const RegisterParams& params, bool system_is_pair) {
  double w = electron_qubit_splitting(params);
  if (system_is_pair) w += params.a_par_ec;
  return w;
}

void rebuild_problem(ResolvedRun& run) {
  run.problem.model = build_model(run.params, run.problem.model.include);
  run.problem.projection = projection_for(run.problem.model.include, run.system_is_pair);
  run.problem.qubit_splitting = guess_bandwidth(run.params, run.system_is_pair);
}

RegisterModel eval_model(const ResolvedRun& run, EvolutionMode* mode, BathParams* bath) {
  SubsystemFlags include = run.problem.model.include;
  *mode = run.problem.mode;
  *bath = run.problem.bath;
  if (run.evaluate_on) {
    include = run.evaluate_on->include;
    *mode = run.evaluate_on->mode;
    *bath = run.evaluate_on->bath.value_or(BathParams{});
  }
  return build_model(run.params, include);
}

}  // namespace

Mat gate_matrix(const std::string& name) {
  const cplx i_unit(0.0, 1.0);
  if (name == "x") {
    Mat g(2, 2);
    g << 0, 1, 1, 0;
    return g;
  }
  if (name == "z") {
    Mat g(2, 2);
    g << 1, 0, 0, -1;
    return g;
  }
  if (name == "h") {
    Mat g(2, 2);
    g << 1, 1, 1, -1;
    return g / std::numbers::sqrt2;
  }
  if (name == "phase") {
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = i_unit;
    return g;
  }
  if (name == "pi8") {
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = std::exp(i_unit * (std::numbers::pi / 4.0));
    return g;
  }
  if (name == "identity") return Mat::Identity(2, 2);
  if (name == "identity4") return Mat::Identity(4, 4);
  if (name == "cnot") {
    // Electron control, carbon target, basis |e c> with e major.
    Mat g = Mat::Zero(4, 4);
    g(0, 0) = g(1, 1) = g(2, 3) = g(3, 2) = 1.0;
    return g;
  }
  throw std::invalid_argument("unknown gate: " + name);
}

ProjectionSpec projection_for(const SubsystemFlags& include, bool system_is_pair) {
  const int d_c = include.carbon ? 2 : 1;
  const int d_n = include.nitrogen ? 2 : 1;
  const int full_dim = include.electron_levels * d_c * d_n;
  // Computational electron levels m_s = 0, -1: basis indices 1, 2 of the
  // triplet (descending m_s) or 0, 1 of the truncated pair.
  const int e0 = include.electron_levels == 3 ? 1 : 0;

  std::vector<int> indices;
  if (system_is_pair) {
    if (!include.carbon) {
      throw std::invalid_argument("pair projection needs the 13C subsystem");
    }
    for (int e = e0; e < e0 + 2; ++e)
      for (int c = 0; c < 2; ++c)
        for (int n = 0; n < d_n; ++n) indices.push_back((e * d_c + c) * d_n + n);
    return make_projection(4, d_n, full_dim, std::move(indices));
  }
  const int d_nuc = d_c * d_n;
  for (int e = e0; e < e0 + 2; ++e)
    for (int n = 0; n < d_nuc; ++n) indices.push_back(e * d_nuc + n);
  return make_projection(2, d_nuc, full_dim, std::move(indices));
}

int default_grid(const RegisterModel& model, double gate_time, EvolutionMode mode,
                 double max_field) {
  const double theta = mode == EvolutionMode::hilbert ? 0.05 : 0.2;
  const double rho = spectral_radius_estimate(model, max_field);
  int n_t = static_cast<int>(std::ceil(gate_time * rho / theta));
  return std::max(n_t, 16);
}

ResolvedRun resolve_config(const json& j) {
  require_keys(j, "config",
               {"scenario", "gate", "mode", "model", "gate_time", "b_z", "n_t", "bath", "optimizer",
                "output_dir", "baseline", "evaluate_on", "warm_start_pulse"});
  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    fail("config.scenario", "required string");
  }

  ResolvedRun run;
  run.raw = j;
  run.scenario = j["scenario"].get<std::string>();
  const auto it = preset_table().find(run.scenario);
  if (it == preset_table().end()) fail("config.scenario", "unknown preset '" + run.scenario + "'");
  const Preset& preset = it->second;

  run.gate = j.value("gate", preset.gate);
  run.system_is_pair = preset.system_is_pair;
  run.params = default_params();

  SubsystemFlags include = preset.include;
  if (j.contains("model")) {
    require_keys(j["model"], "config.model", {"electron_levels", "carbon", "nitrogen"});
    include.electron_levels = j["model"].value("electron_levels", include.electron_levels);
    include.carbon = j["model"].value("carbon", include.carbon);
    include.nitrogen = j["model"].value("nitrogen", include.nitrogen);
    if (include.electron_levels != 2 && include.electron_levels != 3) {
      fail("config.model.electron_levels", "must be 2 or 3");
    }
  }

  run.params.bz = quantity_or(j, "b_z", Dimension::field, preset.bz, "config");

  GateProblem& problem = run.problem;
  problem.mode = preset.mode;
  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "hilbert") {
      problem.mode = EvolutionMode::hilbert;
    } else if (m == "liouville") {
      problem.mode = EvolutionMode::liouville;
    } else {
      fail("config.mode", "must be 'hilbert' or 'liouville'");
    }
  }
  problem.gate_time = quantity_or(j, "gate_time", Dimension::time, preset.gate_time, "config");
  if (problem.gate_time <= 0.0) fail("config.gate_time", "must be positive");

  if (j.contains("bath")) {
    if (j["bath"].is_null()) {
      problem.bath = BathParams{};
    } else {
      require_keys(j["bath"], "config.bath", {"b", "tau_c"});
      const BathParams defaults = default_bath_for(problem.gate_time);
      problem.bath.b = quantity_or(j["bath"], "b", Dimension::rate, defaults.b, "config.bath");
      problem.bath.tau_c =
          quantity_or(j["bath"], "tau_c", Dimension::time, defaults.tau_c, "config.bath");
    }
  } else if (preset.default_bath || problem.mode == EvolutionMode::liouville) {
    problem.bath = default_bath_for(problem.gate_time);
  }

  problem.model = build_model(run.params, include);
  problem.target = gate_matrix(run.gate);
  problem.projection = projection_for(include, run.system_is_pair);
  problem.n_channels = 2;
  problem.qubit_splitting = guess_bandwidth(run.params, run.system_is_pair);
  if (static_cast<int>(problem.target.rows()) != problem.projection.n_s) {
    fail("config.gate", "gate dimension does not match the system partition");
  }

  KrotovConfig& krotov = run.krotov;
  krotov.lambda0 = preset.lambda0;
  run.seeds = {1, 2, 3, 4};
  if (j.contains("optimizer")) {
    const json& opt = j["optimizer"];
    require_keys(opt, "config.optimizer",
                 {"lambda0", "lambda_edge_eps", "seeds", "max_iters", "k_target",
                  "rel_improve_floor", "stall_iters", "init_amplitude", "init_components",
                  "init_freq_max", "max_field", "dissipator_adjoint", "detuning_ensemble",
                  "detuning_weights"});
    krotov.lambda0 = opt.value("lambda0", krotov.lambda0);
    krotov.lambda_edge_eps = opt.value("lambda_edge_eps", krotov.lambda_edge_eps);
    krotov.max_iters = opt.value("max_iters", krotov.max_iters);
    krotov.k_target = opt.value("k_target", krotov.k_target);
    krotov.rel_improve_floor = opt.value("rel_improve_floor", krotov.rel_improve_floor);
    krotov.stall_iters = opt.value("stall_iters", krotov.stall_iters);
    krotov.dissipator_adjoint = opt.value("dissipator_adjoint", krotov.dissipator_adjoint);
    if (opt.contains("detuning_ensemble")) {
      if (!opt["detuning_ensemble"].is_array() || opt["detuning_ensemble"].empty()) {
        fail("config.optimizer.detuning_ensemble", "expected a non-empty array of quantities");
      }
      if (problem.mode == EvolutionMode::liouville) {
        fail("config.optimizer.detuning_ensemble", "only supported for hilbert-mode scenarios");
      }
      for (const json& e : opt["detuning_ensemble"]) {
        krotov.detuning_ensemble.push_back(
            quantity(e, Dimension::frequency, "config.optimizer.detuning_ensemble[]"));
      }
      if (!opt.contains("detuning_weights") || !opt["detuning_weights"].is_array() ||
          opt["detuning_weights"].size() != opt["detuning_ensemble"].size()) {
        fail("config.optimizer.detuning_weights",
             "expected an array matching detuning_ensemble in length");
      }
      for (const json& w : opt["detuning_weights"]) {
        if (!w.is_number() || !(w.get<double>() > 0.0)) {
          fail("config.optimizer.detuning_weights[]", "expected a positive number");
        }
        krotov.detuning_weights.push_back(w.get<double>());
      }
    } else if (opt.contains("detuning_weights")) {
      fail("config.optimizer.detuning_weights", "given without detuning_ensemble");
    }
    krotov.init_amplitude =
        quantity_or(opt, "init_amplitude", Dimension::field, krotov.init_amplitude,
                    "config.optimizer");
    krotov.init_components = opt.value("init_components", krotov.init_components);
    krotov.init_freq_max = quantity_or(opt, "init_freq_max", Dimension::frequency,
                                       krotov.init_freq_max, "config.optimizer");
    krotov.max_field =
        quantity_or(opt, "max_field", Dimension::field, krotov.max_field, "config.optimizer");
    if (opt.contains("seeds")) {
      if (!opt["seeds"].is_array() || opt["seeds"].empty()) {
        fail("config.optimizer.seeds", "expected a non-empty array");
      }
      run.seeds.clear();
      for (const auto& s : opt["seeds"]) run.seeds.push_back(s.get<std::uint64_t>());
    }
  }

  if (j.contains("warm_start_pulse")) {
    run.warm_start_pulse = j["warm_start_pulse"].get<std::string>();
  }

  if (j.contains("n_t")) {
    problem.n_t = j["n_t"].get<int>();
    if (problem.n_t < 2) fail("config.n_t", "must be at least 2");
  } else {
    const double field_scale = std::max({krotov.init_amplitude, krotov.max_field, 30.0}) * 2.0;
    problem.n_t = default_grid(problem.model, problem.gate_time, problem.mode, field_scale);
  }

  if (j.contains("baseline")) {
    const json& b = j["baseline"];
    require_keys(b, "config.baseline", {"kind", "gate_time", "omega", "bx0", "by0", "phase_gauge"});
    BaselineSpec spec;
    const std::string kind = b.value("kind", std::string("pi_pulse_x"));
    if (kind == "pi_pulse_x") {
      spec.kind = BaselineKind::pi_pulse_x;
    } else if (kind == "crot") {
      spec.kind = BaselineKind::crot;
    } else if (kind == "free_evolution_z") {
      spec.kind = BaselineKind::free_evolution_z;
    } else {
      fail("config.baseline.kind", "unknown kind '" + kind + "'");
    }
    spec.gate_time = quantity_or(b, "gate_time", Dimension::time, problem.gate_time,
                                 "config.baseline");
    if (b.contains("omega")) spec.omega = quantity(b["omega"], Dimension::frequency,
                                                   "config.baseline.omega");
    if (b.contains("bx0")) spec.bx0 = quantity(b["bx0"], Dimension::field, "config.baseline.bx0");
    if (b.contains("by0")) spec.by0 = quantity(b["by0"], Dimension::field, "config.baseline.by0");
    spec.phase_gauge = b.value("phase_gauge", false) && spec.kind != BaselineKind::free_evolution_z;
    run.baseline = spec;
  }

  if (j.contains("evaluate_on")) {
    const json& e = j["evaluate_on"];
    require_keys(e, "config.evaluate_on", {"scenario", "mode", "bath"});
    if (!e.contains("scenario")) fail("config.evaluate_on.scenario", "required");
    const auto eit = preset_table().find(e["scenario"].get<std::string>());
    if (eit == preset_table().end()) fail("config.evaluate_on.scenario", "unknown preset");
    EvalModelSpec spec;
    spec.include = eit->second.include;
    spec.mode = eit->second.mode;
    if (e.contains("mode")) {
      spec.mode = e["mode"].get<std::string>() == "liouville" ? EvolutionMode::liouville
                                                              : EvolutionMode::hilbert;
    }
    if (spec.mode == EvolutionMode::liouville) {
      BathParams bath = default_bath_for(problem.gate_time);
      if (e.contains("bath") && !e["bath"].is_null()) {
        require_keys(e["bath"], "config.evaluate_on.bath", {"b", "tau_c"});
        bath.b = quantity_or(e["bath"], "b", Dimension::rate, bath.b, "config.evaluate_on.bath");
        bath.tau_c = quantity_or(e["bath"], "tau_c", Dimension::time, bath.tau_c,
                                 "config.evaluate_on.bath");
      }
      spec.bath = bath;
    }
    if (eit->second.system_is_pair != run.system_is_pair) {
      fail("config.evaluate_on.scenario", "system partition differs from the run scenario");
    }
    run.evaluate_on = spec;
  }

  run.output_dir = j.value("output_dir", "runs/" + run.scenario);
  run.config_hash = fnv1a(j.dump());
  return run;
}

ResolvedRun resolve_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  return resolve_config(j);
}

std::string output_directory(const ResolvedRun& run) {
  namespace fs = std::filesystem;
  fs::path dir = run.output_dir;
  if (const char* root = std::getenv("NVQOC_OUTPUT_ROOT"); root && *root) {
    dir = fs::path(root) / dir.relative_path();
  }
  fs::create_directories(dir);
  return dir.string();
}

ResultSummary run_synthesize(const ResolvedRun& run) {
  const auto start = std::chrono::steady_clock::now();
  GateProblem problem = run.problem;
  if (run.warm_start_pulse) {
    problem.warm_start = read_pulse_csv(*run.warm_start_pulse);
    problem.n_t = problem.warm_start->steps();
  }

  OptimizationResult best;
  std::uint64_t best_seed = 0;
  bool have = false;
  for (std::uint64_t seed : run.seeds) {
    KrotovConfig config = run.krotov;
    config.seed = seed;
    OptimizationResult result = optimize(problem, config);
    if (!have || result.report.k < best.report.k) {
      best = std::move(result);
      best_seed = seed;
      have = true;
    }
    if (best.report.k <= run.krotov.k_target) break;
  }

  const std::string dir = output_directory(run);
  ResultSummary summary;
  summary.scenario = run.scenario;
  summary.k = best.report.k;
  summary.f = best.report.f;
  summary.iterations = best.log.empty() ? 0 : best.log.back().iter;
  summary.seed = best_seed;
  summary.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  switch (best.status) {
    case OptimizerStatus::converged_by_error:
      summary.status = "converged_by_error";
      break;
    case OptimizerStatus::converged_by_improvement:
      summary.status = "converged_by_improvement";
      break;
    case OptimizerStatus::iteration_cap:
      summary.status = "iteration_cap";
      break;
  }
  summary.config_hash = run.config_hash;
  summary.pulse_file = dir + "/" + run.scenario + "_pulse.csv";
  summary.convergence_file = dir + "/" + run.scenario + "_convergence.csv";
  summary.summary_file = dir + "/" + run.scenario + "_summary.txt";

  write_pulse_csv(summary.pulse_file, best.field);
  write_convergence_csv(summary.convergence_file, best.log);

  std::ostringstream hash;
  hash << std::hex << summary.config_hash;
  write_summary(summary.summary_file,
                {{"scenario", summary.scenario},
                 {"gate", run.gate},
                 {"k", format_double(summary.k)},
                 {"f", format_double(summary.f)},
                 {"gate_time_us", format_double(run.problem.gate_time)},
                 {"b_z_gauss", format_double(run.params.bz)},
                 {"n_t", std::to_string(problem.n_t)},
                 {"iterations", std::to_string(summary.iterations)},
                 {"seed", std::to_string(summary.seed)},
                 {"status", summary.status},
                 {"wall_s", format_double(summary.wall_s)},
                 {"config_hash", hash.str()},
                 {"pulse_file", summary.pulse_file},
                 {"convergence_file", summary.convergence_file}});
  return summary;
}

ErrorReport run_evaluate(const ResolvedRun& run, const ControlField& field, bool phase_gauge) {
  EvolutionMode mode;
  BathParams bath;
  const RegisterModel model = eval_model(run, &mode, &bath);
  const PropagatorTrajectory traj =
      evolve(model, field, mode, mode == EvolutionMode::liouville ? &bath : nullptr, false);

  ProjectionSpec spec = projection_for(model.include, run.system_is_pair);
  Mat g = gate_matrix(run.gate);
  if (mode == EvolutionMode::liouville) {
    if (phase_gauge) throw std::invalid_argument("phase-gauge scoring is hilbert-only");
    spec = liouville_projection(spec);
    g = liouville_target(g);
  }
  const Mat pu = project(traj.u_final, spec);
  return phase_gauge ? gate_error_phase_gauge(pu, g) : gate_error(pu, g);
}

std::pair<ErrorReport, ControlField> run_baseline(const ResolvedRun& run, ResultSummary* summary) {
  if (!run.baseline) throw std::runtime_error("config has no baseline section");
  BaselineSpec spec = *run.baseline;
  GateProblem problem = run.problem;
  int n_t = problem.n_t;
  if (std::abs(spec.gate_time - problem.gate_time) > 1e-15) {
    const double field_scale = std::max({run.krotov.init_amplitude, run.krotov.max_field, 30.0}) * 2.0;
    n_t = default_grid(problem.model, spec.gate_time, problem.mode, field_scale);
  }
  const ControlField field = make_baseline(spec, run.params, n_t);
  const ErrorReport report = run_evaluate(run, field, spec.phase_gauge);

  const std::string dir = output_directory(run);
  const std::string pulse_file = dir + "/" + run.scenario + "_baseline_pulse.csv";
  const std::string summary_file = dir + "/" + run.scenario + "_baseline_summary.txt";
  write_pulse_csv(pulse_file, field);
  std::ostringstream hash;
  hash << std::hex << run.config_hash;
  write_summary(summary_file,
                {{"scenario", run.scenario},
                 {"gate", run.gate},
                 {"k", format_double(report.k)},
                 {"f", format_double(report.f)},
                 {"gate_time_us", format_double(spec.gate_time)},
                 {"scoring", spec.phase_gauge ? "phase_gauge" : "strict"},
                 {"config_hash", hash.str()},
                 {"pulse_file", pulse_file}});
  if (summary) {
    summary->scenario = run.scenario;
    summary->k = report.k;
    summary->f = report.f;
    summary->config_hash = run.config_hash;
    summary->pulse_file = pulse_file;
    summary->summary_file = summary_file;
    summary->status = "baseline";
  }
  return {report, field};
}

std::vector<std::pair<double, double>> run_sweep(const ResolvedRun& run, const std::string& axis,
                                                 const std::vector<double>& values,
                                                 const ControlField* fixed_pulse) {
  std::vector<std::pair<double, double>> points;
  for (double value : values) {
    double k = std::numeric_limits<double>::quiet_NaN();
    try {
      ResolvedRun point = run;
      if (axis == "gate_time") {
        point.problem.gate_time = value;
        if (!point.raw.contains("n_t")) {
          const double field_scale =
              std::max({point.krotov.init_amplitude, point.krotov.max_field, 30.0}) * 2.0;
          point.problem.n_t =
              default_grid(point.problem.model, value, point.problem.mode, field_scale);
        }
        if (point.baseline) point.baseline->gate_time = value;
      } else if (axis == "b_z") {
        point.params.bz = value;
        rebuild_problem(point);
      } else if (axis == "bath_b") {
        point.problem.bath.b = value;
        if (point.evaluate_on && point.evaluate_on->bath) point.evaluate_on->bath->b = value;
      } else if (axis == "bath_tau_c") {
        point.problem.bath.tau_c = value;
        if (point.evaluate_on && point.evaluate_on->bath) point.evaluate_on->bath->tau_c = value;
      } else {
        throw std::runtime_error("unknown sweep axis: " + axis);
      }

      if (fixed_pulse) {
        k = run_evaluate(point, *fixed_pulse).k;
      } else if (point.baseline) {
        k = run_baseline(point).first.k;
      } else {
        GateProblem problem = point.problem;
        if (point.warm_start_pulse) {
          problem.warm_start = read_pulse_csv(*point.warm_start_pulse);
          problem.n_t = problem.warm_start->steps();
        }
        bool have = false;
        for (std::uint64_t seed : point.seeds) {
          KrotovConfig config = point.krotov;
          config.seed = seed;
          const OptimizationResult result = optimize(problem, config);
          if (!have || result.report.k < k) {
            k = result.report.k;
            have = true;
          }
          if (k <= point.krotov.k_target) break;
        }
      }
    } catch (const std::exception&) {
      // Per-point failure: record nan, keep sweeping.
    }
    points.emplace_back(value, k);
  }
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return points;
}

}  // namespace nvqoc

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

// Acceptance harness. Each numbered criterion prints one PASS/FAIL line.
//   --fast  analytic/oracle checks and baselines (criteria 1-7, 12)
//   --opt   optimizer result bands and trend regenerations (8, 9, 11)
//   --slow  open-system optimizations (10 and the tau_c clause of 11)
// Exit code is nonzero when any executed criterion fails. Artifacts land
// under acceptance_runs/ in the working directory.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "nvqoc/scenario.hpp"

namespace nvqoc {
namespace {

namespace fs = std::filesystem;
const cplx kImag(0.0, 1.0);

// ---------------------------------------------------------------------------
// Reporting

struct Verdict {
  int criterion;
  bool pass;
};

std::vector<Verdict> g_verdicts;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  g_verdicts.push_back({criterion, pass});
  std::cout << "CRITERION " << criterion << " (" << name << "): " << (pass ? "PASS" : "FAIL")
            << " - " << detail << std::endl;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Shared helpers

Mat random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(dist(rng), dist(rng));
  return m;
}

Mat random_unitary(int n, std::mt19937_64& rng) {
  const Mat m = random_complex(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(m);
  Mat u = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) u.col(i) *= r(i, i) / std::abs(r(i, i));
  return u;
}

Mat random_contractive(int n, std::mt19937_64& rng) {
  return 0.55 * random_unitary(n, rng) + 0.35 * random_unitary(n, rng);
}

json q(double value, const std::string& unit) {
  return json{{"value", value}, {"unit", unit}};
}

RegisterModel electron_only_model() {
  SubsystemFlags flags;
  flags.carbon = false;
  flags.nitrogen = false;
  return build_model(default_params(), flags);
}

double field_score(const RegisterModel& model, const ControlField& field,
                   const ProjectionSpec& spec, const Mat& g, bool phase_gauge = false) {
  const PropagatorTrajectory traj = evolve(model, field, EvolutionMode::hilbert, nullptr, false);
  const Mat pu = project(traj.u_final, spec);
  return phase_gauge ? gate_error_phase_gauge(pu, g).k : gate_error(pu, g).k;
}

// Grid the liouville optimizer would use for cnot_n_bath at this duration;
// closed warm-start pulses for the open runs are synthesized on it so the
// warm start carries an affordable grid into liouville mode.
int liouville_grid(double gate_time) {
  const ResolvedRun run =
      resolve_config(json{{"scenario", "cnot_n_bath"}, {"gate_time", q(gate_time, "us")}});
  return run.problem.n_t;
}

// Closed CNOT pulse on an explicit grid, reused as open-system warm start.
// An existing pulse from an earlier invocation is accepted only after
// re-evaluating it under the closed model.
std::string ensure_closed_pulse(double gate_time, int n_t, double k_accept, int max_iters) {
  std::ostringstream dir;
  dir << "acceptance_runs/cnot_closed_T" << gate_time << "_nt" << n_t;
  const json j = {{"scenario", "cnot_n"},
                  {"gate_time", q(gate_time, "us")},
                  {"n_t", n_t},
                  {"optimizer",
                   {{"seeds", {1}},
                    {"lambda0", 0.05},
                    {"max_iters", max_iters},
                    {"k_target", k_accept}}},
                  {"output_dir", dir.str()}};
  const ResolvedRun run = resolve_config(j);
  const std::string path = dir.str() + "/cnot_n_pulse.csv";
  if (fs::exists(path)) {
    const ControlField f = read_pulse_csv(path);
    if (f.steps() == n_t && std::abs(f.total_time() - gate_time) < 1e-12 &&
        run_evaluate(run, f).k <= 2.0 * k_accept) {
      return path;
    }
  }
  return run_synthesize(run).pulse_file;
}

// ---------------------------------------------------------------------------
// Criterion 1: analytic gradient and costate against central finite
// differences, hilbert (N = 8) and liouville (N = 64) shapes.

bool gradient_fd_shape(int n_b, bool liouville, std::mt19937_64& rng, double* worst_out) {
  const Mat g_h = random_unitary(2, rng);
  const Mat g = liouville ? liouville_target(g_h).eval() : g_h;
  const Mat pu = random_contractive(static_cast<int>(g.rows()) * n_b, rng);
  const Mat grad = gate_error_gradient(pu, g);
  std::normal_distribution<double> dist;
  const double eps = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    Mat delta(pu.rows(), pu.cols());
    for (int i = 0; i < delta.rows(); ++i)
      for (int j = 0; j < delta.cols(); ++j)
        delta(i, j) = trial % 2 == 0 ? cplx(dist(rng), 0.0) : cplx(0.0, dist(rng));
    delta /= delta.norm();
    const double fd =
        (gate_error(pu + eps * delta, g).k - gate_error(pu - eps * delta, g).k) / (2.0 * eps);
    const double an = 2.0 * grad.cwiseProduct(delta).sum().real();
    worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(fd)));
  }
  *worst_out = std::max(*worst_out, worst);
  return worst <= 1e-6;
}

bool costate_fd(std::mt19937_64& rng, double* worst_out) {
  std::vector<int> idx;
  for (int i = 4; i < 12; ++i) idx.push_back(i);
  const ProjectionSpec hspec = make_projection(2, 4, 12, idx);
  bool ok = true;
  for (bool liouville : {false, true}) {
    const ProjectionSpec spec = liouville ? liouville_projection(hspec) : hspec;
    const Mat g_h = random_unitary(2, rng);
    const Mat g = liouville ? liouville_target(g_h).eval() : g_h;
    const int full = spec.full_dim;
    const Mat u = random_contractive(full, rng);
    const Mat grad = gate_error_gradient(project(u, spec), g);
    const Mat b_t = boundary_costate(grad, spec);
    const double eps = 1e-6;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Mat du = random_complex(full, full, rng);
      du /= du.norm();
      const double fd = (gate_error(project(u + eps * du, spec), g).k -
                         gate_error(project(u - eps * du, spec), g).k) /
                        (2.0 * eps);
      const double an = -(b_t * du).trace().real();
      worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(fd)));
    }
    *worst_out = std::max(*worst_out, worst);
    ok = ok && worst <= 1e-6;
  }
  return ok;
}

void criterion_1() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  bool ok = true;
  for (int rep = 0; rep < 24; ++rep) ok = gradient_fd_shape(4, false, rng, &worst) && ok;
  for (int rep = 0; rep < 24; ++rep) ok = gradient_fd_shape(16, true, rng, &worst) && ok;
  ok = costate_fd(rng, &worst) && ok;
  report(1, "gradient oracle", ok,
         "48 gradient + 2 costate instances, worst relative deviation " + fmt(worst));
}

// ---------------------------------------------------------------------------
// Criterion 2: K against brute-force minimization over the 2x2 noise
// unitary (coordinate descent over its 4 angles, multistart).

Mat unitary_2x2(double alpha, double theta, double phi, double psi) {
  Mat u(2, 2);
  u(0, 0) = std::cos(theta) * std::exp(kImag * phi);
  u(0, 1) = std::sin(theta) * std::exp(kImag * psi);
  u(1, 0) = -std::sin(theta) * std::exp(-kImag * psi);
  u(1, 1) = std::cos(theta) * std::exp(-kImag * phi);
  return std::exp(kImag * alpha) * u;
}

double brute_force_k(const Mat& pu, const Mat& g) {
  const int n = static_cast<int>(pu.rows());
  auto cost = [&](const std::array<double, 4>& x) {
    const Mat diff = pu - kron(g, unitary_2x2(x[0], x[1], x[2], x[3]));
    return diff.squaredNorm() / (2.0 * n);
  };
  double best = 1e9;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u01(0.0, 2.0 * std::numbers::pi);
  for (int start = 0; start < 24; ++start) {
    std::array<double, 4> x = {u01(rng), u01(rng), u01(rng), u01(rng)};
    double span = 2.0 * std::numbers::pi;
    for (int sweep = 0; sweep < 80; ++sweep) {
      for (int i = 0; i < 4; ++i) {
        double best_v = cost(x);
        double best_x = x[i];
        for (int s = 0; s < 64; ++s) {
          std::array<double, 4> y = x;
          y[i] = x[i] - span / 2.0 + span * s / 63.0;
          const double v = cost(y);
          if (v < best_v) {
            best_v = v;
            best_x = y[i];
          }
        }
        x[i] = best_x;
      }
      span *= 0.75;
    }
    best = std::min(best, cost(x));
  }
  return best;
}

void criterion_2() {
  std::mt19937_64 rng(201);
  double worst = 0.0;
  for (int rep = 0; rep < 6; ++rep) {
    const Mat g = random_unitary(2, rng);
    const Mat pu = random_contractive(4, rng);
    worst = std::max(worst, std::abs(gate_error(pu, g).k - brute_force_k(pu, g)));
  }
  report(2, "error-functional oracle", worst <= 1e-6,
         "6 instances, worst |K - oracle| " + fmt(worst));
}

// ---------------------------------------------------------------------------
// Criterion 3: liouville propagation at b = 0 equals conj(U) kron U.

void criterion_3() {
  double worst = 0.0;
  std::mt19937_64 rng(301);
  std::uniform_real_distribution<double> amp(-25.0, 25.0);
  for (bool with_nitrogen : {false, true}) {
    SubsystemFlags flags;
    flags.carbon = false;
    flags.nitrogen = with_nitrogen;
    const RegisterModel m = build_model(default_params(), flags);
    ControlField f = make_field(0.001, 12000, 2);
    // Random piecewise-constant pulse held over 100-sample plateaus.
    for (int k = 0; k <= f.steps(); ++k) {
      if (k % 100 == 0) {
        f.channels[0][k] = amp(rng);
        f.channels[1][k] = amp(rng);
      } else {
        f.channels[0][k] = f.channels[0][k - 1];
        f.channels[1][k] = f.channels[1][k - 1];
      }
    }
    BathParams bath;
    bath.b = 0.0;
    bath.tau_c = 25.0;
    const Mat u = evolve(m, f, EvolutionMode::hilbert, nullptr, false).u_final;
    const Mat ul = evolve(m, f, EvolutionMode::liouville, &bath, false).u_final;
    worst = std::max(worst, (ul - kron(u.conjugate(), u)).norm());
  }
  report(3, "closed-open consistency", worst <= 1e-8, "worst Frobenius gap " + fmt(worst));
}

// ---------------------------------------------------------------------------
// Criterion 4: pure-dephasing coherence decay against the analytic
// decoherence function, including the squared S_z gap scaling.

void criterion_4() {
  RegisterParams p = default_params();
  p.delta = 0.0;
  p.gamma_e = p.gamma_c = p.gamma_n = 0.0;
  p.a_par_ec = p.a_perp_ec = p.a_par_en = p.a_perp_en = 0.0;
  p.bz = 0.0;
  SubsystemFlags flags;
  flags.carbon = false;
  flags.nitrogen = false;
  const RegisterModel m = build_model(p, flags);

  BathParams bath;
  bath.b = 1.1;
  bath.tau_c = 0.5;
  const int n_t = 8000;
  const ControlField f = make_field(4.0 * bath.tau_c, n_t, 2);
  const PropagatorTrajectory traj = evolve(m, f, EvolutionMode::liouville, &bath);

  const Mat rho0 = Mat::Constant(3, 3, cplx(1.0 / 3.0));
  double worst = 0.0;
  for (int idx = 400; idx <= n_t; idx += 400) {
    const double t = traj.times[idx];
    const Mat rho = devectorize(traj.u[idx] * vectorize(rho0));
    const double gamma =
        bath.b * bath.b * bath.tau_c * (t - bath.tau_c * (1.0 - std::exp(-t / bath.tau_c)));
    // m_s basis order +1, 0, -1: (0,1) and (1,2) are single-quantum
    // coherences (S_z gap 1), (0,2) double-quantum (gap 2, rate x4).
    const double e1 = std::exp(-gamma) / 3.0;
    const double e2 = std::exp(-4.0 * gamma) / 3.0;
    worst = std::max(worst, std::abs(std::abs(rho(0, 1)) - e1) / e1);
    worst = std::max(worst, std::abs(std::abs(rho(1, 2)) - e1) / e1);
    worst = std::max(worst, std::abs(std::abs(rho(0, 2)) - e2) / e2);
  }
  report(4, "pure-dephasing analytic check", worst <= 1e-6,
         "t in [0, 4 tau_c], worst relative deviation " + fmt(worst));
}

// ---------------------------------------------------------------------------
// Criterion 5: monotonic objective on accepted iterations, every preset.

bool monotone_log(const std::vector<IterationRecord>& log) {
  for (std::size_t i = 1; i < log.size(); ++i) {
    // J of the accepted candidate may not drop below F of the previous
    // accepted field (the penalty vanishes at the expansion point).
    if (log[i].j < (1.0 - log[i - 1].k) - 1e-9) return false;
  }
  return true;
}

void criterion_5() {
  std::vector<std::string> presets;
  for (const std::string g : {"x", "z", "h", "phase", "pi8", "identity"}) {
    for (const std::string suffix : {"_e", "_n", "_nc"}) presets.push_back(g + suffix);
  }
  presets.insert(presets.end(), {"cnot_n", "cnot_n_bath", "cnot_2lvl", "identity_pair"});

  bool ok = true;
  std::string failed;
  for (const std::string& preset : presets) {
    int iters = 6;
    json j = {{"scenario", preset}};
    if (preset == "cnot_n_bath") {
      // Probe the open-system branch at a short duration; full-length open
      // optimization belongs to the slow suite.
      j["gate_time"] = q(0.002, "us");
      iters = 3;
    } else if (preset == "cnot_n" || preset == "identity_pair") {
      iters = 4;
    }
    j["optimizer"] = {{"seeds", {1}}, {"max_iters", iters}, {"k_target", 1e-14}};
    const ResolvedRun run = resolve_config(j);
    KrotovConfig config = run.krotov;
    config.seed = run.seeds.front();
    const OptimizationResult result = optimize(run.problem, config);
    if (!monotone_log(result.log)) {
      ok = false;
      failed += preset + " ";
    }
  }
  report(5, "monotonicity", ok,
         ok ? "accepted objective non-decreasing on all " + std::to_string(presets.size()) +
                  " presets"
            : "violations: " + failed);
}

// ---------------------------------------------------------------------------
// Criterion 6: free-evolution Z baseline.

void criterion_6() {
  const RegisterParams p = default_params();
  const RegisterModel ideal = electron_only_model();
  const RegisterModel full = build_model(p, SubsystemFlags{});
  const Mat gz = gate_matrix("z");

  const double t_z = ideal_z_time(p);
  const int n_ideal = default_grid(ideal, t_z, EvolutionMode::hilbert, 0.0);
  const double k_ideal =
      field_score(ideal, free_evolution_z(t_z, n_ideal), make_projection(2, 1, 3, {1, 2}), gz);

  bool nuclei_ok = true;
  std::string detail = "ideal " + fmt(k_ideal) + "; T {0.34, 7.45, 15.2} ns:";
  const ProjectionSpec spec_full = projection_for(full.include, false);
  for (double t : {0.34e-3, 7.45e-3, 15.2e-3}) {
    const int n_t = default_grid(full, t, EvolutionMode::hilbert, 0.0);
    const double k = field_score(full, free_evolution_z(t, n_t), spec_full, gz);
    detail += " " + fmt(k);
    nuclei_ok = nuclei_ok && k > 6.0e-3;
  }
  report(6, "free-evolution Z baseline", k_ideal < 1e-8 && nuclei_ok, detail);
}

// ---------------------------------------------------------------------------
// Criterion 7: resonant pi-pulse X baseline.

void criterion_7() {
  const RegisterParams p = default_params();
  const RegisterModel ideal = electron_only_model();
  const RegisterModel full = build_model(p, SubsystemFlags{});
  BaselineSpec spec;
  spec.kind = BaselineKind::pi_pulse_x;
  spec.gate_time = 0.01;
  const double bx0 = std::numbers::pi * std::numbers::sqrt2 / (std::abs(p.gamma_e) * 0.01);
  const Mat gx = gate_matrix("x");

  const int n_t = default_grid(ideal, 0.01, EvolutionMode::hilbert, bx0);
  const ControlField f = make_baseline(spec, p, n_t);
  const double k_ideal = field_score(ideal, f, make_projection(2, 1, 3, {1, 2}), gx);
  const double k_full = field_score(full, f, projection_for(full.include, false), gx);
  report(7, "pi-pulse X baseline", k_full > 4e-3,
         "full " + fmt(k_full) + " (> 4e-3), bare electron " + fmt(k_ideal));
}

// ---------------------------------------------------------------------------
// Criterion 8: optimized single-qubit gates on the full register,
// T = 0.01 us, B_z = 500 G, best of 4 seeds.

double g_qoc_x_k = -1.0;  // reused by criterion 11

void criterion_8() {
  struct GateBand {
    const char* scenario;
    double band;
  };
  const std::vector<GateBand> gates = {{"x_nc", 1e-4},
                                       {"z_nc", 2e-3},
                                       {"h_nc", 3e-4},
                                       {"phase_nc", 1.5e-4},
                                       {"pi8_nc", 4e-4}};
  bool ok = true;
  std::string detail;
  for (const GateBand& gate : gates) {
    const auto t0 = std::chrono::steady_clock::now();
    const json j = {{"scenario", gate.scenario},
                    {"optimizer",
                     {{"seeds", {1, 2, 3, 4}},
                      {"max_iters", 2500},
                      {"k_target", 0.9 * gate.band}}},
                    {"output_dir", std::string("acceptance_runs/") + gate.scenario}};
    const ResultSummary s = run_synthesize(resolve_config(j));
    const bool gate_ok = s.k <= gate.band;
    ok = ok && gate_ok;
    detail += std::string(gate.scenario) + " " + fmt(s.k) + (gate_ok ? "" : "(>band)") + " [" +
              fmt(seconds_since(t0)) + "s] ";
    if (std::string(gate.scenario) == "x_nc") g_qoc_x_k = s.k;
  }
  report(8, "optimized single-qubit gates", ok, detail);
}

// ---------------------------------------------------------------------------
// Criterion 9: optimized closed-system CNOT, B_z = 1000 G.

void criterion_9() {
  struct Point {
    double gate_time;
    double band;
    int max_iters;
  };
  bool ok = true;
  std::string detail;
  // The shorter gate converges more slowly per iteration but each
  // iteration is ~2.5x cheaper; both points fit the same wall budget.
  for (const Point& point : {Point{0.125, 5e-4, 2200}, Point{0.05, 1.3e-3, 4800}}) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream dir;
    dir << "acceptance_runs/cnot_T" << point.gate_time;
    const json j = {{"scenario", "cnot_n"},
                    {"gate_time", q(point.gate_time, "us")},
                    {"optimizer",
                     {{"seeds", {1}},
                      {"lambda0", 0.05},
                      {"max_iters", point.max_iters},
                      {"k_target", 0.9 * point.band}}},
                    {"output_dir", dir.str()}};
    const ResultSummary s = run_synthesize(resolve_config(j));
    const bool point_ok = s.k <= point.band;
    ok = ok && point_ok;
    detail += "T=" + fmt(point.gate_time) + " K=" + fmt(s.k) + (point_ok ? "" : "(>band)") +
              " [" + fmt(seconds_since(t0)) + "s] ";
  }
  report(9, "optimized closed CNOT", ok, detail);
}

// ---------------------------------------------------------------------------
// Criterion 10 (slow): optimized open-system CNOT. The bath is deep in the
// quasi-static regime (tau_c >> T), so the heavy lifting is a
// detuning-ensemble-robust closed synthesis on the liouville grid; the
// open-system run warm-starts from it and polishes with the
// dissipator-adjoint gradient (monotone, so it can only improve on the
// warm start's open-system error).

std::string ensure_robust_pulse(double gate_time, int n_t, double b, double k_ens_target,
                                int max_iters) {
  std::ostringstream dir;
  dir << "acceptance_runs/cnot_robust_T" << gate_time << "_b" << b;
  const std::string path = dir.str() + "/cnot_n_pulse.csv";
  if (fs::exists(path)) {
    const ControlField f = read_pulse_csv(path);
    // Grid match only: the caller's open-system evaluation is the judge.
    if (f.steps() == n_t && std::abs(f.total_time() - gate_time) < 1e-12) return path;
  }
  // Gauss-Hermite 5-node ensemble for a N(0, b^2) static S_z detuning.
  const double s = std::sqrt(2.0) * b;
  json nodes = json::array();
  for (double x : {-2.020183, -0.958572, 0.0, 0.958572, 2.020183}) {
    nodes.push_back(q(s * x, "rad/us"));
  }
  const json j = {{"scenario", "cnot_n"},
                  {"gate_time", q(gate_time, "us")},
                  {"n_t", n_t},
                  {"optimizer",
                   {{"seeds", {1}},
                    {"lambda0", 0.05},
                    {"max_iters", max_iters},
                    {"k_target", k_ens_target},
                    {"detuning_ensemble", nodes},
                    {"detuning_weights", {0.011257, 0.222076, 0.533333, 0.222076, 0.011257}}}},
                  {"output_dir", dir.str()}};
  return run_synthesize(resolve_config(j)).pulse_file;
}

void criterion_10() {
  struct Point {
    double gate_time;
    double b;
    double band;
    double ens_target;
    int ens_iters;
    int max_iters;
  };
  const std::vector<Point> points = {{0.125, 38.46, 2e-3, 8e-4, 2600, 6},
                                     {0.05, 80.0, 1.3e-3, 1.2e-3, 3200, 6}};
  bool ok = true;
  std::string detail;
  for (const Point& point : points) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n_t = liouville_grid(point.gate_time);
    const std::string warm =
        ensure_robust_pulse(point.gate_time, n_t, point.b, point.ens_target, point.ens_iters);
    std::ostringstream dir;
    dir << "acceptance_runs/cnot_bath_T" << point.gate_time;
    const json j = {{"scenario", "cnot_n_bath"},
                    {"gate_time", q(point.gate_time, "us")},
                    {"bath", {{"b", q(point.b, "1/us")}, {"tau_c", q(25.0, "us")}}},
                    {"warm_start_pulse", warm},
                    {"optimizer",
                     {{"seeds", {1}},
                      {"lambda0", 0.05},
                      {"max_iters", point.max_iters},
                      {"k_target", 0.9 * point.band}}},
                    {"output_dir", dir.str()}};
    const ResultSummary s = run_synthesize(resolve_config(j));
    const bool point_ok = s.k <= point.band;
    ok = ok && point_ok;
    detail += "T=" + fmt(point.gate_time) + " b=" + fmt(point.b) + " K=" + fmt(s.k) +
              (point_ok ? "" : "(>band)") + " [" + fmt(seconds_since(t0)) + "s] ";
  }
  report(10, "optimized open CNOT", ok, detail);
}

// ---------------------------------------------------------------------------
// Criterion 11: qualitative trend regenerations.

void criterion_11() {
  bool ok = true;
  std::string detail;

  // (a) pi-pulse error decreases with duration (drive-frame score) while
  // the optimized X gate sits >= 2 orders below the pi-pulse value at
  // T = 0.01 us.
  {
    const RegisterParams p = default_params();
    const RegisterModel ideal = electron_only_model();
    const ProjectionSpec spec = make_projection(2, 1, 3, {1, 2});
    const Mat gx = gate_matrix("x");
    std::vector<double> ks;
    double k_pi_t01 = 0.0;
    for (double t : {0.005, 0.01, 0.02, 0.03}) {
      BaselineSpec bspec;
      bspec.kind = BaselineKind::pi_pulse_x;
      bspec.gate_time = t;
      const double bx0 = std::numbers::pi * std::numbers::sqrt2 / (std::abs(p.gamma_e) * t);
      const int n_t = default_grid(ideal, t, EvolutionMode::hilbert, bx0);
      const ControlField f = make_baseline(bspec, p, n_t);
      ks.push_back(field_score(ideal, f, spec, gx, /*phase_gauge=*/true));
      if (t == 0.01) k_pi_t01 = field_score(ideal, f, spec, gx, /*phase_gauge=*/false);
    }
    bool trend = true;
    for (std::size_t i = 1; i < ks.size(); ++i) trend = trend && ks[i] < ks[i - 1];
    double qoc = g_qoc_x_k;
    if (qoc < 0.0) {
      const json j = {{"scenario", "x_nc"},
                      {"optimizer", {{"seeds", {1, 2}}, {"max_iters", 2000}, {"k_target", 5e-5}}},
                      {"output_dir", "acceptance_runs/x_nc"}};
      qoc = run_synthesize(resolve_config(j)).k;
    }
    const bool sep = qoc <= 1e-2 * k_pi_t01;
    ok = ok && trend && sep;
    detail += std::string("pi-pulse trend ") + (trend ? "ok" : "BAD") + ", qoc/pi@0.01us " +
              fmt(qoc / k_pi_t01) + "; ";
  }

  // (b) pulses optimized on the two-level electron degrade on the
  // three-level model at low B_z; the three-level optimization still
  // reaches K <= 1e-3 at B_z = 500 G.
  {
    auto cross_eval = [&](double bz_gauss) {
      std::ostringstream dir;
      dir << "acceptance_runs/cnot2lvl_bz" << bz_gauss;
      const json j = {{"scenario", "cnot_2lvl"},
                      {"gate_time", q(0.05, "us")},
                      {"b_z", q(bz_gauss, "G")},
                      {"evaluate_on", {{"scenario", "cnot_n"}}},
                      {"optimizer",
                       {{"seeds", {1}},
                        {"lambda0", 0.05},
                        {"max_iters", 1200},
                        {"k_target", 2e-4}}},
                      {"output_dir", dir.str()}};
      const ResolvedRun run = resolve_config(j);
      const ResultSummary s = run_synthesize(run);
      const double cross = run_evaluate(run, read_pulse_csv(s.pulse_file)).k;
      return std::pair<double, double>(s.k, cross);
    };
    const auto [k2_low, cross_low] = cross_eval(100.0);
    const auto [k2_high, cross_high] = cross_eval(1000.0);

    const json j3 = {{"scenario", "cnot_n"},
                     {"gate_time", q(0.125, "us")},
                     {"b_z", q(500.0, "G")},
                     {"optimizer",
                      {{"seeds", {1}},
                       {"lambda0", 0.05},
                       {"max_iters", 2200},
                       {"k_target", 9e-4}}},
                     {"output_dir", "acceptance_runs/cnot_bz500"}};
    const ResultSummary s3 = run_synthesize(resolve_config(j3));

    const bool degrade = cross_low > 10.0 * k2_low && cross_low > cross_high;
    const bool works = s3.k <= 1e-3;
    ok = ok && degrade && works;
    detail += "2lvl cross 100G " + fmt(cross_low) + " vs 1000G " + fmt(cross_high) +
              ", 3lvl@500G " + fmt(s3.k) + "; ";
  }

  // (c) fixed-pulse K non-decreasing in the bath coupling b (liouville
  // evaluation of the closed T = 0.05 us pulse).
  {
    const int n_t = liouville_grid(0.05);
    const std::string pulse_path = ensure_closed_pulse(0.05, n_t, 2.2e-3, 2500);
    const json j = {{"scenario", "cnot_n"},
                    {"gate_time", q(0.05, "us")},
                    {"evaluate_on",
                     {{"scenario", "cnot_n_bath"},
                      {"bath", {{"b", q(3.846, "1/us")}, {"tau_c", q(25.0, "us")}}}}},
                    {"output_dir", "acceptance_runs/b_sweep"}};
    const ResolvedRun run = resolve_config(j);
    const ControlField pulse = read_pulse_csv(pulse_path);
    const auto pts = run_sweep(run, "bath_b", {0.0, 3.846, 10.0, 38.46, 80.0}, &pulse);
    bool monotone = pts.size() == 5;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      monotone = monotone && pts[i].second >= pts[i - 1].second - 1e-6;
    }
    ok = ok && monotone;
    detail += "b sweep";
    for (const auto& [v, k] : pts) detail += " " + fmt(k);
    detail += monotone ? " (non-decreasing)" : " (NOT monotone)";
  }

  report(11, "trend regenerations", ok, detail);
}

// Criterion 11, tau_c clause (slow): optimized open-system K non-increasing
// in tau_c and flat once tau_c is larger than ~5 us.
void criterion_11_tau_c() {
  const int n_t = liouville_grid(0.125);
  const std::string warm = ensure_robust_pulse(0.125, n_t, 38.46, 8e-4, 2600);
  std::vector<double> ks;
  std::string detail = "tau_c {1, 5, 25} us:";
  for (double tau_c : {1.0, 5.0, 25.0}) {
    std::ostringstream dir;
    dir << "acceptance_runs/tauc_" << tau_c;
    const json j = {{"scenario", "cnot_n_bath"},
                    {"bath", {{"b", q(38.46, "1/us")}, {"tau_c", q(tau_c, "us")}}},
                    {"warm_start_pulse", warm},
                    {"optimizer",
                     {{"seeds", {1}}, {"lambda0", 0.05}, {"max_iters", 3}, {"k_target", 1e-4}}},
                    {"output_dir", dir.str()}};
    ks.push_back(run_synthesize(resolve_config(j)).k);
    detail += " " + fmt(ks.back());
  }
  const bool non_increasing = ks[1] <= ks[0] * 1.05 && ks[2] <= ks[1] * 1.05;
  const bool flat = ks[2] >= 0.5 * ks[1];
  report(11, "trend regenerations, tau_c clause", non_increasing && flat, detail);
}

// ---------------------------------------------------------------------------
// Criterion 12: determinism of full runs.

void criterion_12() {
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  auto make = [&](const std::string& dir) {
    const json j = {{"scenario", "h_n"},
                    {"optimizer", {{"seeds", {3}}, {"max_iters", 6}, {"k_target", 1e-14}}},
                    {"output_dir", "acceptance_runs/" + dir}};
    return run_synthesize(resolve_config(j));
  };
  const ResultSummary a = make("det_a");
  const ResultSummary b = make("det_b");
  const bool ok = slurp(a.pulse_file) == slurp(b.pulse_file) &&
                  slurp(a.convergence_file) == slurp(b.convergence_file) && a.k == b.k;
  report(12, "determinism", ok,
         std::string("repeated run: pulse and log files byte-identical: ") + (ok ? "yes" : "no"));
}

}  // namespace
}  // namespace nvqoc

int main(int argc, char** argv) {
  bool fast = false, opt = false, slow = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) fast = true;
    else if (std::strcmp(argv[i], "--opt") == 0) opt = true;
    else if (std::strcmp(argv[i], "--slow") == 0) slow = true;
    else {
      std::cerr << "usage: acceptance [--fast] [--opt] [--slow]\n";
      return 2;
    }
  }
  if (!fast && !opt && !slow) fast = true;

  using namespace nvqoc;
  try {
    if (fast) {
      criterion_1();
      criterion_2();
      criterion_3();
      criterion_4();
      criterion_5();
      criterion_6();
      criterion_7();
      criterion_12();
    }
    if (opt) {
      criterion_8();
      criterion_9();
      criterion_11();
    }
    if (slow) {
      criterion_10();
      criterion_11_tau_c();
    }
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << std::endl;
    return 1;
  }

  int failures = 0;
  for (const auto& v : nvqoc::g_verdicts) {
    if (!v.pass) ++failures;
  }
  std::cout << (failures == 0 ? "ALL EXECUTED CRITERIA PASS"
                              : "FAILURES: " + std::to_string(failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}

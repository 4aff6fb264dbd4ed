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

#pragma once

#include <cstdint>
#include <optional>

#include "nvqoc/fidelity.hpp"

namespace nvqoc {

struct KrotovConfig {
  double lambda0 = 100.0;        // base update weight (larger = smaller steps)
  double lambda_edge_eps = 1e-3; // floor of the sin^2 edge-suppression profile
  int max_iters = 500;
  double k_target = 1e-6;
  double rel_improve_floor = 1e-7;
  int stall_iters = 5;           // consecutive below-floor iterations before stopping
  std::uint64_t seed = 1;
  double init_amplitude = 30.0;  // Gauss
  int init_components = 20;
  double init_freq_max = 0.0;    // rad/us; 0 = use problem.qubit_splitting
  double max_field = 0.0;        // optional |B| clamp, 0 = off
  // Include the dissipator's control dependence in the update direction via
  // a second costate for D(t) (liouville mode only). Without it the update
  // carries no information about bath refocusing.
  bool dissipator_adjoint = true;
  // Static S_z detunings (rad/us) with weights: the optimizer minimizes the
  // weighted ensemble-average error, producing pulses robust to slow
  // dephasing noise. Hilbert mode only; empty = nominal model only.
  std::vector<double> detuning_ensemble;
  std::vector<double> detuning_weights;
};

struct GateProblem {
  RegisterModel model;
  Mat target;                // hilbert-space system gate
  ProjectionSpec projection; // hilbert-space spec; squared internally in liouville mode
  EvolutionMode mode = EvolutionMode::hilbert;
  BathParams bath;
  double gate_time = 0.01;
  int n_t = 0;
  int n_channels = 1;
  double qubit_splitting = 0.0;  // rad/us, sets the initial-guess bandwidth
  std::optional<ControlField> warm_start;
};

struct IterationRecord {
  int iter;
  double k;
  double j;
  double delta_norm;  // L2 norm of the field change, sqrt(sum dt (d eps)^2)
  int retries = 0;
  double wall_s = 0.0;
};

enum class OptimizerStatus { converged_by_error, converged_by_improvement, iteration_cap };

struct OptimizationResult {
  ControlField field;
  ErrorReport report;  // nominal (undetuned) model
  std::vector<IterationRecord> log;  // log[i].k is the optimized functional
  OptimizerStatus status = OptimizerStatus::iteration_cap;
  // Weighted ensemble-average error when a detuning ensemble is active;
  // equals report.k otherwise.
  double ensemble_k = 0.0;
};

/// Update weight lambda(t) = lambda0 / (sin^2(pi t / T) + eps), suppressing
/// updates near the pulse edges.
double lambda_profile(double t, double total_time, const KrotovConfig& config);

/// Band-limited random waveform: <= init_components random-phase cosines
/// under a sin^2 envelope, peak-normalized to init_amplitude. Deterministic
/// in the seed.
ControlField initial_guess(const GateProblem& problem, const KrotovConfig& config);

/// J = (1 - k) - sum_k lambda(t_k)/2 (eps - eps_ref)^2 dt (left-endpoint
/// quadrature over all channels).
double objective(double k, const ControlField& field, const ControlField& reference,
                 const KrotovConfig& config);

struct CostateTrajectory {
  Mat b0;              // costate at t = 0
  std::vector<Mat> b;  // full history when requested, b[k] at t_k
  std::vector<Mat> c;  // dissipator costate history, c[k] at t_k (liouville only)
};

/// Integrates dB/dt = -B Lambda(t) from B(T) = b_final down to t = 0 under
/// the given field (and, in liouville mode, its dissipator history). When
/// u_final is given in liouville mode, the propagator is co-integrated
/// backward and the dissipator costate C(t) — the adjoint of the D(t)
/// equation sourced by the sensitivity of Lambda to D — is accumulated,
/// so the update direction can include the control dependence of D.
CostateTrajectory backward_pass(const Propagator& prop, const ControlField& field,
                                const std::vector<Mat>& d_half, const Mat& b_final,
                                bool store_history = false, const Mat* u_final = nullptr);

/// Immediate-feedback sweep: at each sample the field is updated from the
/// costate and the freshly propagated new-field propagator, then both are
/// advanced one step. The costate is re-integrated forward under the old
/// field. Returns the new field and its trajectory.
std::pair<ControlField, PropagatorTrajectory> forward_update(
    const Propagator& prop, const GateProblem& problem, const ControlField& old_field,
    const std::vector<Mat>& d_half_old, const Mat& b0, double lambda0_eff,
    const KrotovConfig& config, const std::vector<Mat>* c_hist = nullptr);

OptimizationResult optimize(const GateProblem& problem, const KrotovConfig& config);

}  // namespace nvqoc

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

#include <map>
#include <string>

#include <json.hpp>

#include "nvqoc/baseline.hpp"
#include "nvqoc/io.hpp"
#include "nvqoc/krotov.hpp"

namespace nvqoc {

using json = nlohmann::json;

/// Named gate matrices: x, z, h, phase, pi8, identity (2x2) and cnot,
/// identity4 (4x4, electron control, carbon target).
Mat gate_matrix(const std::string& name);

/// Computational-block selection for the configured register.
/// system_is_pair = false: system = electron qubit, noise = the nuclei.
/// system_is_pair = true: system = electron qubit (x) 13C, noise = 15N.
ProjectionSpec projection_for(const SubsystemFlags& include, bool system_is_pair);

/// Default grid: n_t = ceil(T rho / theta) with theta = 0.05 (hilbert) or
/// 0.2 (liouville), rho the spectral-radius estimate at max_field.
int default_grid(const RegisterModel& model, double gate_time, EvolutionMode mode,
                 double max_field);

/// Model/mode a stored pulse is re-evaluated under (cross-evaluation).
struct EvalModelSpec {
  SubsystemFlags include;
  EvolutionMode mode = EvolutionMode::hilbert;
  std::optional<BathParams> bath;
};

/// A fully resolved run: preset expanded, overrides applied, units
/// converted.
struct ResolvedRun {
  std::string scenario;
  std::string gate;
  bool system_is_pair = false;
  RegisterParams params;
  GateProblem problem;
  KrotovConfig krotov;
  std::vector<std::uint64_t> seeds;
  std::string output_dir;
  std::optional<BaselineSpec> baseline;
  std::optional<EvalModelSpec> evaluate_on;
  std::optional<std::string> warm_start_pulse;
  json raw;
  std::uint64_t config_hash = 0;
};

/// Parses and validates a config document. Unknown keys are rejected;
/// physical quantities must be {"value": ..., "unit": "..."} objects.
ResolvedRun resolve_config(const json& j);
ResolvedRun resolve_config_file(const std::string& path);

struct ResultSummary {
  std::string scenario;
  double k = 1.0;
  double f = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  double wall_s = 0.0;
  std::string status;
  std::uint64_t config_hash = 0;
  std::string pulse_file;
  std::string convergence_file;
  std::string summary_file;
};

/// Runs the configured seed list, keeps the best result, writes pulse,
/// convergence log and summary under the output directory.
ResultSummary run_synthesize(const ResolvedRun& run);

/// Re-propagates a stored pulse under the evaluation model (evaluate_on
/// when present, the scenario model otherwise). phase_gauge scores the
/// gate up to local z rotations (baseline frame ambiguity; hilbert only).
ErrorReport run_evaluate(const ResolvedRun& run, const ControlField& field,
                         bool phase_gauge = false);

/// Generates the configured baseline field, evaluates it, writes pulse and
/// summary.
std::pair<ErrorReport, ControlField> run_baseline(const ResolvedRun& run,
                                                  ResultSummary* summary = nullptr);

/// Independent runs along one parameter axis, merged to a (value, k) CSV.
/// axis is one of gate_time, b_z, bath_b, bath_tau_c (values in internal
/// units). Per-point failures are recorded as nan and the sweep continues.
std::vector<std::pair<double, double>> run_sweep(const ResolvedRun& run, const std::string& axis,
                                                 const std::vector<double>& values,
                                                 const ControlField* fixed_pulse = nullptr);

/// Output root: NVQOC_OUTPUT_ROOT when set, else the config's output_dir.
std::string output_directory(const ResolvedRun& run);

}  // namespace nvqoc

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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nvqoc/scenario.hpp"

namespace {

using nvqoc::json;

// Frequency/rate/field/time conversions for sweep value lists; values are
// stored internally in rad/us, 1/us, Gauss, us.
double axis_scale(const std::string& axis, const std::string& unit) {
  if (axis == "gate_time" || axis == "bath_tau_c") {
    if (unit.empty() || unit == "us") return 1.0;
    if (unit == "ns") return 1e-3;
  } else if (axis == "b_z") {
    if (unit.empty() || unit == "G") return 1.0;
  } else if (axis == "bath_b") {
    if (unit.empty() || unit == "1/us") return 1.0;
  }
  throw std::runtime_error("unsupported unit '" + unit + "' for axis " + axis);
}

void emit_error(const std::string& stage, const std::string& message) {
  json doc;
  doc["error"] = true;
  doc["stage"] = stage;
  doc["message"] = message;
  std::cerr << doc.dump() << '\n';
}

int do_synthesize(const std::string& config_path) {
  const nvqoc::ResolvedRun run = nvqoc::resolve_config_file(config_path);
  const nvqoc::ResultSummary summary = nvqoc::run_synthesize(run);
  std::cout << "scenario " << summary.scenario << ": K = " << nvqoc::format_double(summary.k)
            << " (" << summary.status << ", seed " << summary.seed << ", "
            << summary.iterations << " iterations)\n"
            << "pulse: " << summary.pulse_file << '\n';
  return 0;
}

int do_evaluate(const std::string& config_path, const std::string& pulse_path) {
  const nvqoc::ResolvedRun run = nvqoc::resolve_config_file(config_path);
  const nvqoc::ControlField field = nvqoc::read_pulse_csv(pulse_path);
  if (std::abs(field.total_time() - run.problem.gate_time) > 1e-9) {
    throw std::runtime_error("pulse duration does not match the configured gate time");
  }
  const nvqoc::ErrorReport report = nvqoc::run_evaluate(run, field);
  std::cout << "scenario " << run.scenario << ": K = " << nvqoc::format_double(report.k)
            << ", F = " << nvqoc::format_double(report.f) << '\n';
  return 0;
}

int do_baseline(const std::string& config_path) {
  const nvqoc::ResolvedRun run = nvqoc::resolve_config_file(config_path);
  const auto [report, field] = nvqoc::run_baseline(run);
  std::cout << "scenario " << run.scenario << " baseline: K = " << nvqoc::format_double(report.k)
            << ", F = " << nvqoc::format_double(report.f) << '\n';
  return 0;
}

int do_sweep(const std::string& config_path, const std::string& axis,
             const std::vector<double>& raw_values, const std::string& unit,
             const std::string& pulse_path) {
  const nvqoc::ResolvedRun run = nvqoc::resolve_config_file(config_path);
  const double scale = axis_scale(axis, unit);
  std::vector<double> values;
  for (double v : raw_values) values.push_back(v * scale);

  nvqoc::ControlField fixed;
  const nvqoc::ControlField* fixed_ptr = nullptr;
  if (!pulse_path.empty()) {
    fixed = nvqoc::read_pulse_csv(pulse_path);
    fixed_ptr = &fixed;
  }

  const auto points = nvqoc::run_sweep(run, axis, values, fixed_ptr);
  const std::string dir = nvqoc::output_directory(run);
  const std::string csv = dir + "/" + run.scenario + "_sweep_" + axis + ".csv";
  std::ofstream out(csv);
  if (!out) throw std::runtime_error("cannot open for writing: " + csv);
  out << "value,k\n";
  for (const auto& [value, k] : points) {
    out << nvqoc::format_double(value) << ',' << nvqoc::format_double(k) << '\n';
  }
  std::cout << "sweep over " << axis << ": " << points.size() << " points -> " << csv << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse synthesis and evaluation for an NV-center spin register"};
  app.require_subcommand(1);

  std::string config_path;
  std::string pulse_path;
  std::string axis;
  std::string unit;
  std::vector<double> values;

  auto* synth = app.add_subcommand("synthesize", "Optimize a control pulse for a preset");
  synth->add_option("config", config_path, "JSON config file")->required();

  auto* eval = app.add_subcommand("evaluate", "Evaluate a stored pulse");
  eval->add_option("config", config_path, "JSON config file")->required();
  eval->add_option("--pulse", pulse_path, "pulse CSV file")->required();

  auto* base = app.add_subcommand("baseline", "Generate and evaluate a reference pulse");
  base->add_option("config", config_path, "JSON config file")->required();

  auto* sweep = app.add_subcommand("sweep", "Run the scenario along one parameter axis");
  sweep->add_option("config", config_path, "JSON config file")->required();
  sweep->add_option("--axis", axis, "gate_time | b_z | bath_b | bath_tau_c")->required();
  sweep->add_option("--values", values, "axis values")->required()->delimiter(',');
  sweep->add_option("--unit", unit, "unit of the axis values (default: internal units)");
  sweep->add_option("--pulse", pulse_path, "fixed pulse: evaluate instead of re-optimizing");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return do_synthesize(config_path);
    if (eval->parsed()) return do_evaluate(config_path, pulse_path);
    if (base->parsed()) return do_baseline(config_path);
    if (sweep->parsed()) return do_sweep(config_path, axis, values, unit, pulse_path);
  } catch (const std::exception& e) {
    emit_error(app.get_subcommands().front()->get_name(), e.what());
    return 1;
  }
  return 2;
}

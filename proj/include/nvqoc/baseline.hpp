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

#include <optional>

#include "nvqoc/propagate.hpp"

namespace nvqoc {

enum class BaselineKind { pi_pulse_x, crot, free_evolution_z };

struct BaselineSpec {
  BaselineKind kind = BaselineKind::pi_pulse_x;
  double gate_time = 0.01;
  std::optional<double> omega;  // rad/us; unset = derive from the model spectrum
  std::optional<double> bx0;    // Gauss; unset = pi-area condition
  std::optional<double> by0;
  // Score the gate up to local z rotations and global phase (the drive
  // frame is only defined up to such phases). Free evolution is always
  // scored strictly.
  bool phase_gauge = false;
};

/// |E(m_s=0) - E(m_s=-1)| for the bare electron at the given parameters.
double electron_qubit_splitting(const RegisterParams& params);

/// Shortest free-evolution time realizing a Z gate on the bare electron.
double ideal_z_time(const RegisterParams& params);

/// Resonant cosine drive on B_x whose rotating-frame area gives a pi
/// rotation between the computational levels: |gamma_e| Bx0 T / sqrt(2) = pi.
ControlField pi_pulse_x(double gate_time, double omega, int n_t, double gamma_e);

/// Quadrature drive parameters for the carbon-conditional transition
/// (|1,down> <-> |1,up> of the electron (x) 13C model): frequency from the
/// H0 splitting, amplitudes from the conditional pi-area condition.
struct CrotDrive {
  double omega;
  double bx0;
  double by0;
};
CrotDrive crot_drive_params(const RegisterModel& model, double gate_time);

/// B_x = bx0 cos(w t), B_y = by0 sin(w t) on the grid.
ControlField crot_pulse(const CrotDrive& drive, double gate_time, int n_t);

/// All-zero channels: the gate is the free evolution itself.
ControlField free_evolution_z(double gate_time, int n_t);

ControlField make_baseline(const BaselineSpec& spec, const RegisterParams& params, int n_t);

}  // namespace nvqoc

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

#include "nvqoc/baseline.hpp"

#include <cmath>
#include <numbers>

namespace nvqoc {

double electron_qubit_splitting(const RegisterParams& params) {
  // E(m_s) = delta m^2 - gamma_e B_z m; qubit levels are m_s = 0 and -1.
  return std::abs(params.delta + params.gamma_e * params.bz);
}

double ideal_z_time(const RegisterParams& params) {
  return std::numbers::pi / electron_qubit_splitting(params);
}

ControlField pi_pulse_x(double gate_time, double omega, int n_t, double gamma_e) {
  ControlField field = make_field(gate_time, n_t, 1);
  const double bx0 = std::numbers::pi * std::numbers::sqrt2 / (std::abs(gamma_e) * gate_time);
  for (std::size_t k = 0; k < field.t.size(); ++k) {
    field.channels[0][k] = bx0 * std::cos(omega * field.t[k]);
  }
  return field;
}

CrotDrive crot_drive_params(const RegisterModel& model, double gate_time) {
  if (model.include.electron_levels != 3 || !model.include.carbon) {
    throw std::invalid_argument("crot_drive_params: need the 3-level electron (x) 13C model");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(model.h0);
  const Mat& vecs = es.eigenvectors();
  const int dim = model.dim();
  const int stride = dim / 6;  // extra subsystems (15N) sit inside each e (x) C block

  // Eigenstates dominated by |m_s=-1, up> and |m_s=-1, down> (basis
  // indices 4 and 5 of the e (x) C factor, nuclei beyond carbon in their
  // first basis state).
  auto dominant = [&](int basis_index) {
    int best = 0;
    double best_w = -1.0;
    for (int i = 0; i < dim; ++i) {
      const double w = std::norm(vecs(basis_index * stride, i));
      if (w > best_w) {
        best_w = w;
        best = i;
      }
    }
    return best;
  };
  const int up = dominant(4);
  const int down = dominant(5);
  const CVec psi_up = vecs.col(up);
  const CVec psi_down = vecs.col(down);

  CrotDrive drive;
  drive.omega = std::abs(es.eigenvalues()(down) - es.eigenvalues()(up));

  // Conditional pi-area: the quadrature drive's co-rotating coupling is
  // B0 |mu_x -+ i mu_y|; the stronger circular component sets the amplitude.
  const cplx mu_x = psi_down.dot(model.hx_op * psi_up);
  const cplx mu_y = psi_down.dot(model.hy_op * psi_up);
  const cplx i_unit(0.0, 1.0);
  const double mu = std::max(std::abs(mu_x + i_unit * mu_y), std::abs(mu_x - i_unit * mu_y));
  if (mu <= 0.0) {
    throw std::runtime_error("crot_drive_params: vanishing conditional matrix element");
  }
  drive.bx0 = drive.by0 = std::numbers::pi / (mu * gate_time);
  return drive;
}

ControlField crot_pulse(const CrotDrive& drive, double gate_time, int n_t) {
  ControlField field = make_field(gate_time, n_t, 2);
  for (std::size_t k = 0; k < field.t.size(); ++k) {
    field.channels[0][k] = drive.bx0 * std::cos(drive.omega * field.t[k]);
    field.channels[1][k] = drive.by0 * std::sin(drive.omega * field.t[k]);
  }
  return field;
}

ControlField free_evolution_z(double gate_time, int n_t) {
  return make_field(gate_time, n_t, 1);
}

ControlField make_baseline(const BaselineSpec& spec, const RegisterParams& params, int n_t) {
  switch (spec.kind) {
    case BaselineKind::pi_pulse_x: {
      const double omega = spec.omega.value_or(electron_qubit_splitting(params));
      ControlField f = pi_pulse_x(spec.gate_time, omega, n_t, params.gamma_e);
      if (spec.bx0) {
        const double area_bx0 =
            std::numbers::pi * std::numbers::sqrt2 / (std::abs(params.gamma_e) * spec.gate_time);
        for (double& v : f.channels[0]) v *= *spec.bx0 / area_bx0;
      }
      return f;
    }
    case BaselineKind::crot: {
      SubsystemFlags ideal{3, true, false};
      const RegisterModel model = build_model(params, ideal);
      CrotDrive drive = crot_drive_params(model, spec.gate_time);
      if (spec.omega) drive.omega = *spec.omega;
      if (spec.bx0) drive.bx0 = *spec.bx0;
      if (spec.by0) drive.by0 = *spec.by0;
      return crot_pulse(drive, spec.gate_time, n_t);
    }
    case BaselineKind::free_evolution_z:
      return free_evolution_z(spec.gate_time, n_t);
  }
  throw std::logic_error("make_baseline: unknown kind");
}

}  // namespace nvqoc

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

#include "nvqoc/spinalg.hpp"

namespace nvqoc {

// Internal units: angular frequency in rad/us, time in us, field in Gauss,
// hbar = 1. Gyromagnetic ratios carry rad/(us*G).

/// Physical parameters of the electron + 13C + 15N register.
struct RegisterParams {
  double delta;      // zero-field splitting
  double gamma_e;    // electron gyromagnetic ratio (signed)
  double gamma_c;    // 13C gyromagnetic ratio
  double gamma_n;    // 15N gyromagnetic ratio
  double a_par_ec;   // secular hyperfine, electron-13C
  double a_perp_ec;  // transverse hyperfine, electron-13C
  double a_par_en;   // secular hyperfine, electron-15N
  double a_perp_en;  // transverse hyperfine, electron-15N
  double bz;         // static field along z, Gauss
};

/// Experimentally established register parameters, bz = 500 G.
RegisterParams default_params();

/// Which subsystems enter the tensor space. Fixed order:
/// electron (x) 13C (x) 15N. electron_levels = 2 truncates the spin-1
/// operators to the {m_s = 0, -1} computational pair.
struct SubsystemFlags {
  int electron_levels = 3;
  bool carbon = true;
  bool nitrogen = true;
};

struct RegisterModel {
  SubsystemFlags include;
  std::vector<int> dims;
  Mat h0;       // static Hamiltonian
  Mat hx_op;    // operator multiplying B_x(t)
  Mat hy_op;    // operator multiplying B_y(t)
  Mat sz_full;  // electron S_z in the full space (bath coupling operator)

  int dim() const {
    int d = 1;
    for (int n : dims) d *= n;
    return d;
  }
};

Mat build_h0(const RegisterParams& params, const SubsystemFlags& include);
std::pair<Mat, Mat> build_control_ops(const RegisterParams& params, const SubsystemFlags& include);
RegisterModel build_model(const RegisterParams& params, const SubsystemFlags& include);

/// Exponentially correlated classical dephasing bath.
struct BathParams {
  double b = 0.0;      // average system-bath coupling, 1/us
  double tau_c = 1.0;  // correlation time, us
};

/// <B(t)B(t')> = b^2 exp(-|t-t'|/tau_c).
double bath_correlation(double dt, const BathParams& bath);

}  // namespace nvqoc

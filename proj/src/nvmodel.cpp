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

#include "nvqoc/nvmodel.hpp"

#include <cmath>
#include <numbers>

namespace nvqoc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Electron spin matrices for the configured level count. The basis order is
// m_s = +1, 0, -1; the two-level variant keeps the {0, -1} block.
SpinOperators electron_ops(int levels) {
  SpinOperators full = spin_operators(1.0);
  if (levels == 3) return full;
  if (levels != 2) {
    throw std::invalid_argument("electron_levels must be 2 or 3");
  }
  SpinOperators trunc;
  trunc.spin = 1.0;
  trunc.sx = full.sx.block(1, 1, 2, 2);
  trunc.sy = full.sy.block(1, 1, 2, 2);
  trunc.sz = full.sz.block(1, 1, 2, 2);
  return trunc;
}

struct EmbeddedOps {
  std::vector<int> dims;
  Mat sx, sy, sz;     // electron
  Mat icx, icy, icz;  // 13C (zero matrices when excluded)
  Mat inx, iny, inz;  // 15N
  bool carbon, nitrogen;
};

EmbeddedOps embedded_ops(const SubsystemFlags& include) {
  EmbeddedOps e;
  e.carbon = include.carbon;
  e.nitrogen = include.nitrogen;
  e.dims.push_back(include.electron_levels);
  std::size_t c_slot = 0, n_slot = 0;
  if (include.carbon) {
    c_slot = e.dims.size();
    e.dims.push_back(2);
  }
  if (include.nitrogen) {
    n_slot = e.dims.size();
    e.dims.push_back(2);
  }

  const SpinOperators s = electron_ops(include.electron_levels);
  const SpinOperators i_half = spin_operators(0.5);
  e.sx = embed(s.sx, 0, e.dims);
  e.sy = embed(s.sy, 0, e.dims);
  e.sz = embed(s.sz, 0, e.dims);

  int dim = 1;
  for (int n : e.dims) dim *= n;
  const Mat zero = Mat::Zero(dim, dim);
  e.icx = e.icy = e.icz = zero;
  e.inx = e.iny = e.inz = zero;
  if (include.carbon) {
    e.icx = embed(i_half.sx, c_slot, e.dims);
    e.icy = embed(i_half.sy, c_slot, e.dims);
    e.icz = embed(i_half.sz, c_slot, e.dims);
  }
  if (include.nitrogen) {
    e.inx = embed(i_half.sx, n_slot, e.dims);
    e.iny = embed(i_half.sy, n_slot, e.dims);
    e.inz = embed(i_half.sz, n_slot, e.dims);
  }
  return e;
}

}  // namespace

RegisterParams default_params() {
  RegisterParams p;
  p.delta = 2.87e3 * kTwoPi;     // 2.87 GHz
  p.gamma_e = -2.8 * kTwoPi;     // -2.8 MHz/G
  p.gamma_c = 0.00107 * kTwoPi;  // 1.07 kHz/G
  p.gamma_n = -0.43e-3 * kTwoPi; // -0.43 kHz/G
  p.a_par_ec = 127.0 * kTwoPi;
  p.a_perp_ec = 127.0 * kTwoPi;
  p.a_par_en = 3.03 * kTwoPi;
  p.a_perp_en = 3.03 * kTwoPi;
  p.bz = 500.0;
  return p;
}

Mat build_h0(const RegisterParams& params, const SubsystemFlags& include) {
  const EmbeddedOps e = embedded_ops(include);
  Mat h = params.delta * (e.sz * e.sz) - params.gamma_e * params.bz * e.sz;
  if (e.carbon) {
    h -= params.gamma_c * params.bz * e.icz;
    h += params.a_par_ec * (e.sz * e.icz);
    h += params.a_perp_ec * (e.sx * e.icx + e.sy * e.icy);
  }
  if (e.nitrogen) {
    h -= params.gamma_n * params.bz * e.inz;
    h += params.a_par_en * (e.sz * e.inz);
    h += params.a_perp_en * (e.sx * e.inx + e.sy * e.iny);
  }
  return h;
}

std::pair<Mat, Mat> build_control_ops(const RegisterParams& params, const SubsystemFlags& include) {
  const EmbeddedOps e = embedded_ops(include);
  Mat hx = -params.gamma_e * e.sx;
  Mat hy = -params.gamma_e * e.sy;
  if (e.carbon) {
    hx -= params.gamma_c * e.icx;
    hy -= params.gamma_c * e.icy;
  }
  if (e.nitrogen) {
    hx -= params.gamma_n * e.inx;
    hy -= params.gamma_n * e.iny;
  }
  return {hx, hy};
}

RegisterModel build_model(const RegisterParams& params, const SubsystemFlags& include) {
  RegisterModel m;
  m.include = include;
  m.dims = embedded_ops(include).dims;
  m.h0 = build_h0(params, include);
  std::tie(m.hx_op, m.hy_op) = build_control_ops(params, include);
  m.sz_full = embedded_ops(include).sz;
  return m;
}

double bath_correlation(double dt, const BathParams& bath) {
  return bath.b * bath.b * std::exp(-std::abs(dt) / bath.tau_c);
}

}  // namespace nvqoc

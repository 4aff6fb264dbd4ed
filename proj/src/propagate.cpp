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

#include "nvqoc/propagate.hpp"

#include <cmath>

namespace nvqoc {

namespace {
constexpr double kStabilityCap = 2.5;  // RK4 imaginary-axis limit is ~2.83
const cplx kI(0.0, 1.0);
}  // namespace

ControlField make_field(double total_time, int n_t, int n_channels) {
  if (n_t < 1 || total_time <= 0.0) {
    throw std::invalid_argument("make_field: need n_t >= 1 and T > 0");
  }
  ControlField f;
  f.t.resize(n_t + 1);
  for (int k = 0; k <= n_t; ++k) {
    f.t[k] = total_time * k / n_t;
  }
  f.channels.assign(n_channels, std::vector<double>(n_t + 1, 0.0));
  return f;
}

CVec vectorize(const Mat& rho) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("vectorize: matrix must be square");
  }
  return Eigen::Map<const CVec>(rho.data(), rho.size());
}

Mat devectorize(const CVec& v) {
  const auto d = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw std::invalid_argument("devectorize: length is not a perfect square");
  }
  return Eigen::Map<const Mat>(v.data(), d, d);
}

Mat hamiltonian_superop(const Mat& h) {
  const Mat id = Mat::Identity(h.rows(), h.cols());
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

Mat dissipator_superop(const Mat& d, const Mat& sz) {
  const Mat id = Mat::Identity(d.rows(), d.cols());
  const Mat d_adj = d.adjoint();
  return -kI * kron(id, Mat(sz * d)) + kI * kron(sz.transpose(), d) +
         kI * kron(Mat((d_adj * sz).transpose()), id) - kI * kron(d.conjugate(), sz);
}

Mat dissipator_rhs(const Mat& d, const Mat& h_s, const BathParams& bath, const Mat& sz) {
  return -kI * (bath.b * bath.b) * sz - kI * (h_s * d - d * h_s) - d / bath.tau_c;
}

Propagator::Propagator(const RegisterModel& model, EvolutionMode mode, const BathParams* bath)
    : model_(model), mode_(mode), dim_(model.dim()) {
  if (mode_ == EvolutionMode::liouville) {
    if (bath == nullptr) {
      throw std::invalid_argument("liouville mode requires bath parameters");
    }
    bath_ = *bath;
    h0s_ = hamiltonian_superop(model_.h0);
    hxs_ = hamiltonian_superop(model_.hx_op);
    hys_ = hamiltonian_superop(model_.hy_op);
  }
}

Mat Propagator::hamiltonian(double bx, double by) const {
  return model_.h0 + bx * model_.hx_op + by * model_.hy_op;
}

Mat Propagator::generator(double bx, double by, const Mat* d) const {
  if (mode_ == EvolutionMode::hilbert) {
    return -kI * hamiltonian(bx, by);
  }
  Mat lam = h0s_ + bx * hxs_ + by * hys_;
  if (d != nullptr) {
    lam += dissipator_superop(*d, model_.sz_full);
  }
  return lam;
}

Mat Propagator::control_derivative(int channel) const {
  const Mat& h = channel == 0 ? model_.hx_op : model_.hy_op;
  if (mode_ == EvolutionMode::hilbert) {
    return -kI * h;
  }
  return channel == 0 ? hxs_ : hys_;
}

Mat Propagator::d_step(const Mat& d, double bx, double by, double dt) const {
  const Mat h = hamiltonian(bx, by);
  const Mat& sz = model_.sz_full;
  const Mat k1 = dissipator_rhs(d, h, bath_, sz);
  const Mat k2 = dissipator_rhs(d + 0.5 * dt * k1, h, bath_, sz);
  const Mat k3 = dissipator_rhs(d + 0.5 * dt * k2, h, bath_, sz);
  const Mat k4 = dissipator_rhs(d + dt * k3, h, bath_, sz);
  return d + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void Propagator::advance(Mat& u, Mat& d, double bx, double by, double dt, Mat* d_mid_out) const {
  if (mode_ == EvolutionMode::hilbert) {
    const Mat a = generator(bx, by);
    rk4_generator_step(u, a, a, a, dt);
    return;
  }
  const Mat d_mid = d_step(d, bx, by, 0.5 * dt);
  const Mat d_end = d_step(d_mid, bx, by, 0.5 * dt);
  const Mat a1 = generator(bx, by, &d);
  const Mat a2 = generator(bx, by, &d_mid);
  const Mat a3 = generator(bx, by, &d_end);
  rk4_generator_step(u, a1, a2, a3, dt);
  d = d_end;
  if (d_mid_out != nullptr) {
    *d_mid_out = d_mid;
  }
}

void rk4_generator_step(Mat& u, const Mat& a_start, const Mat& a_mid, const Mat& a_end, double dt) {
  const Mat k1 = a_start * u;
  const Mat k2 = a_mid * (u + 0.5 * dt * k1);
  const Mat k3 = a_mid * (u + 0.5 * dt * k2);
  const Mat k4 = a_end * (u + dt * k3);
  u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void rk4_costate_step(Mat& b, const Mat& a_start, const Mat& a_mid, const Mat& a_end, double h) {
  const Mat k1 = -b * a_start;
  const Mat k2 = -(b + 0.5 * h * k1) * a_mid;
  const Mat k3 = -(b + 0.5 * h * k2) * a_mid;
  const Mat k4 = -(b + h * k3) * a_end;
  b += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double spectral_radius_estimate(const RegisterModel& model, double max_field) {
  Eigen::SelfAdjointEigenSolver<Mat> es(model.h0, Eigen::EigenvaluesOnly);
  const double h0_radius = es.eigenvalues().cwiseAbs().maxCoeff();
  const double ctrl = max_field * (model.hx_op.operatorNorm() + model.hy_op.operatorNorm());
  return h0_radius + ctrl;
}

PropagatorTrajectory evolve(const RegisterModel& model, const ControlField& field,
                            EvolutionMode mode, const BathParams* bath, bool store_u) {
  const int n_t = field.steps();
  const double dt = field.dt();
  if (field.channels.empty()) {
    throw std::invalid_argument("evolve: field has no channels");
  }

  double max_field = 0.0;
  for (const auto& ch : field.channels) {
    for (double v : ch) max_field = std::max(max_field, std::abs(v));
  }
  if (dt * spectral_radius_estimate(model, max_field) > kStabilityCap) {
    throw std::invalid_argument("evolve: time grid too coarse for the model spectral radius");
  }

  Propagator prop(model, mode, bath);
  const bool open = mode == EvolutionMode::liouville;

  PropagatorTrajectory traj;
  traj.mode = mode;
  traj.times = field.t;

  Mat u = Mat::Identity(prop.gen_dim(), prop.gen_dim());
  Mat d = prop.d_zero();
  if (store_u) {
    traj.u.reserve(n_t + 1);
    traj.u.push_back(u);
  }
  if (open) {
    traj.d_half.reserve(2 * n_t + 1);
    traj.d_half.push_back(d);
  }

  auto sample = [&](int ch, int k) {
    return ch < static_cast<int>(field.channels.size()) ? field.channels[ch][k] : 0.0;
  };

  Mat d_mid;
  for (int k = 0; k < n_t; ++k) {
    const double bx = sample(0, k);
    const double by = sample(1, k);
    prop.advance(u, d, bx, by, dt, &d_mid);
    if (open) {
      traj.d_half.push_back(d_mid);
      traj.d_half.push_back(d);
    }
    if (store_u) {
      traj.u.push_back(u);
    }
  }
  traj.u_final = u;
  return traj;
}

}  // namespace nvqoc

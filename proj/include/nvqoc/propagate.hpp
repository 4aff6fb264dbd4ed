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

#include "nvqoc/nvmodel.hpp"

namespace nvqoc {

/// Piecewise-constant multi-channel pulse on a uniform grid. Sample k is
/// applied on [t_k, t_{k+1}); the sample at t = T is kept for file output
/// but never enters the propagation.
struct ControlField {
  std::vector<double> t;                      // n_t + 1 points, 0 ... T
  std::vector<std::vector<double>> channels;  // channels[ch][k], n_t + 1 each

  int steps() const { return static_cast<int>(t.size()) - 1; }
  double dt() const { return t.back() / steps(); }
  double total_time() const { return t.back(); }
};

/// Zero-initialized field with n_channels channels on [0, T].
ControlField make_field(double total_time, int n_t, int n_channels);

enum class EvolutionMode { hilbert, liouville };

/// Column-stacking convention: vec(A rho B) = (B^T kron A) vec(rho).
CVec vectorize(const Mat& rho);
Mat devectorize(const CVec& v);

/// -i (I kron h - h^T kron I), the commutator superoperator of a Hamiltonian.
Mat hamiltonian_superop(const Mat& h);

/// Superoperator of rho -> -i(Sz D rho - D rho Sz) + i(rho D'Sz - Sz rho D')
/// with D' the adjoint of D.
Mat dissipator_superop(const Mat& d, const Mat& sz);

/// Dissipator equation of motion: -i b^2 Sz - i[h_s, d] - d/tau_c.
Mat dissipator_rhs(const Mat& d, const Mat& h_s, const BathParams& bath, const Mat& sz);

struct PropagatorTrajectory {
  EvolutionMode mode;
  std::vector<double> times;
  std::vector<Mat> u;       // propagator at every grid point when stored
  Mat u_final;              // always present
  std::vector<Mat> d_half;  // liouville only: D at half-step resolution, 2 n_t + 1 entries
};

/// Stage-generator provider shared by the evolution and the optimizer
/// passes. Liouville mode precomputes the constant Hamiltonian
/// superoperator pieces once.
class Propagator {
 public:
  Propagator(const RegisterModel& model, EvolutionMode mode, const BathParams* bath);

  EvolutionMode mode() const { return mode_; }
  int hilbert_dim() const { return dim_; }
  int gen_dim() const { return mode_ == EvolutionMode::hilbert ? dim_ : dim_ * dim_; }
  const BathParams& bath() const { return bath_; }
  const Mat& sz_full() const { return model_.sz_full; }

  Mat hamiltonian(double bx, double by) const;
  /// Hilbert-space control operator for one channel (0 = x, 1 = y).
  const Mat& control_hamiltonian(int channel) const {
    return channel == 0 ? model_.hx_op : model_.hy_op;
  }
  /// Lambda(t): -iH in hilbert mode; Hamiltonian superoperator plus the
  /// dissipator term of the given D in liouville mode.
  Mat generator(double bx, double by, const Mat* d = nullptr) const;
  /// Direct control derivative of Lambda for one channel (0 = x, 1 = y).
  Mat control_derivative(int channel) const;

  /// One RK4 step of D across dt under constant controls.
  Mat d_step(const Mat& d, double bx, double by, double dt) const;
  Mat d_zero() const { return Mat::Zero(dim_, dim_); }

  /// Advances (u, d) across one interval. In liouville mode D is advanced
  /// by two half-steps and the midpoint value feeds the RK4 stages of u;
  /// when given, d_mid_out receives that midpoint. The optimizer's forward
  /// sweep and evolve() share this routine so their trajectories agree
  /// bit for bit.
  void advance(Mat& u, Mat& d, double bx, double by, double dt, Mat* d_mid_out = nullptr) const;

 private:
  RegisterModel model_;
  EvolutionMode mode_;
  BathParams bath_;
  int dim_;
  Mat h0s_, hxs_, hys_;  // liouville mode only
};

/// RK4 step for dU/dt = Lambda(t) U with the three stage generators
/// (start, midpoint, end of the interval).
void rk4_generator_step(Mat& u, const Mat& a_start, const Mat& a_mid, const Mat& a_end, double dt);

/// RK4 step for the costate equation dB/dt = -B Lambda(t). `h` may be
/// negative (backward integration); generators are those at t, t + h/2
/// and t + h.
void rk4_costate_step(Mat& b, const Mat& a_start, const Mat& a_mid, const Mat& a_end, double h);

/// Propagates the full trajectory. Throws std::invalid_argument when the
/// grid is too coarse for the model's spectral radius (RK4 stability).
PropagatorTrajectory evolve(const RegisterModel& model, const ControlField& field,
                            EvolutionMode mode, const BathParams* bath = nullptr,
                            bool store_u = true);

/// Largest |eigenvalue| of h0 plus the control contribution at max field,
/// used for the default-grid rule and the step-size check.
double spectral_radius_estimate(const RegisterModel& model, double max_field);

}  // namespace nvqoc

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

#include "nvqoc/krotov.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

namespace nvqoc {

namespace {

constexpr double kMonotonicityTol = 1e-9;
constexpr int kMaxRetries = 6;

std::pair<ProjectionSpec, Mat> effective_target(const GateProblem& problem) {
  if (problem.mode == EvolutionMode::liouville) {
    return {liouville_projection(problem.projection), liouville_target(problem.target)};
  }
  return {problem.projection, problem.target};
}

double real_trace_product(const Mat& b, const Mat& m) {
  // Tr(b m) without forming the product matrix.
  return b.transpose().cwiseProduct(m).sum().real();
}

// Riesz representer m of the real-linear functional
//   dD -> Re Tr[B S(dD) U],  W = U B,
// under <m, X> = Re Tr[m^dag X], where S(D) is the dissipator
// superoperator. Written in terms of block contractions of W: with
// W[(s,r)] the (s,r) block, V(s,r) = Tr W[(s,r)], Z(s,r) = Tr[Sz W[(s,r)]],
// W_d = sum_s W[(s,s)] and W_zz = sum_{s,r} Sz(s,r) W[(s,r)],
//   m = i (Sz W_d^dag - W_zz^dag + Sz V^T - Z^T).
Mat dissipator_costate_source(const Mat& w, const Mat& sz) {
  const int n = static_cast<int>(sz.rows());
  Mat w_d = Mat::Zero(n, n), w_zz = Mat::Zero(n, n);
  Mat v(n, n), z(n, n);
  for (int s = 0; s < n; ++s) {
    for (int r = 0; r < n; ++r) {
      const auto blk = w.block(s * n, r * n, n, n);
      v(s, r) = blk.trace();
      z(s, r) = sz.cwiseProduct(blk.transpose()).sum();
      if (sz(s, r) != 0.0) w_zz += sz(s, r) * blk;
      if (s == r) w_d += blk;
    }
  }
  const std::complex<double> im(0.0, 1.0);
  return im * (sz * w_d.adjoint() - w_zz.adjoint() + sz * v.transpose() - z.transpose());
}

// One RK4 step of the dissipator costate dC/dt = -i[h, C] + C/tau_c - m(t)
// across h_step (negative = backward), with the source at the start,
// midpoint and end of the step.
void rk4_dissipator_costate_step(Mat& c, const Mat& h, double tau_c, const Mat& m_start,
                                 const Mat& m_mid, const Mat& m_end, double h_step) {
  const std::complex<double> im(0.0, 1.0);
  auto rhs = [&](const Mat& x, const Mat& m) -> Mat {
    return -im * (h * x - x * h) + x / tau_c - m;
  };
  const Mat k1 = rhs(c, m_start);
  const Mat k2 = rhs(c + 0.5 * h_step * k1, m_mid);
  const Mat k3 = rhs(c + 0.5 * h_step * k2, m_mid);
  const Mat k4 = rhs(c + h_step * k3, m_end);
  c += (h_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double lambda_profile(double t, double total_time, const KrotovConfig& config) {
  const double s = std::sin(std::numbers::pi * t / total_time);
  return config.lambda0 / (s * s + config.lambda_edge_eps);
}

ControlField initial_guess(const GateProblem& problem, const KrotovConfig& config) {
  ControlField field = make_field(problem.gate_time, problem.n_t, problem.n_channels);
  if (config.init_amplitude == 0.0) return field;

  double freq_max = config.init_freq_max > 0.0 ? config.init_freq_max : problem.qubit_splitting;
  if (freq_max <= 0.0) {
    freq_max = 2.0 * std::numbers::pi * config.init_components / problem.gate_time;
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> freq(0.0, freq_max);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  const double total_time = problem.gate_time;
  for (auto& channel : field.channels) {
    std::vector<double> omega(config.init_components), phi(config.init_components);
    for (int m = 0; m < config.init_components; ++m) {
      omega[m] = freq(rng);
      phi[m] = phase(rng);
    }
    double peak = 0.0;
    for (std::size_t k = 0; k < field.t.size(); ++k) {
      const double t = field.t[k];
      double w = 0.0;
      for (int m = 0; m < config.init_components; ++m) {
        w += std::cos(omega[m] * t + phi[m]);
      }
      const double env = std::sin(std::numbers::pi * t / total_time);
      channel[k] = w * env * env;
      peak = std::max(peak, std::abs(channel[k]));
    }
    if (peak > 0.0) {
      for (double& v : channel) v *= config.init_amplitude / peak;
    }
  }
  return field;
}

double objective(double k, const ControlField& field, const ControlField& reference,
                 const KrotovConfig& config) {
  if (field.t.size() != reference.t.size() || field.channels.size() != reference.channels.size()) {
    throw std::invalid_argument("objective: field grids do not match");
  }
  const double dt = field.dt();
  const double total_time = field.total_time();
  double penalty = 0.0;
  for (int k_step = 0; k_step < field.steps(); ++k_step) {
    const double lam = lambda_profile(field.t[k_step], total_time, config);
    for (std::size_t ch = 0; ch < field.channels.size(); ++ch) {
      const double de = field.channels[ch][k_step] - reference.channels[ch][k_step];
      penalty += 0.5 * lam * de * de * dt;
    }
  }
  return (1.0 - k) - penalty;
}

CostateTrajectory backward_pass(const Propagator& prop, const ControlField& field,
                                const std::vector<Mat>& d_half, const Mat& b_final,
                                bool store_history, const Mat* u_final) {
  const int n_t = field.steps();
  const double dt = field.dt();
  const bool open = prop.mode() == EvolutionMode::liouville;
  if (open && static_cast<int>(d_half.size()) != 2 * n_t + 1) {
    throw std::logic_error("backward_pass: missing dissipator history");
  }
  const bool with_c = open && u_final != nullptr;

  CostateTrajectory ct;
  if (store_history) {
    ct.b.assign(n_t + 1, Mat());
    ct.b[n_t] = b_final;
  }

  Mat b = b_final;
  Mat u, c, m_next;
  if (with_c) {
    const int n = prop.hilbert_dim();
    u = *u_final;
    c = Mat::Zero(n, n);
    m_next = dissipator_costate_source(u * b, prop.sz_full());
    ct.c.assign(n_t + 1, Mat());
    ct.c[n_t] = c;
  }
  for (int k = n_t - 1; k >= 0; --k) {
    const double bx = field.channels[0][k];
    const double by = field.channels.size() > 1 ? field.channels[1][k] : 0.0;
    if (open) {
      const Mat a_end = prop.generator(bx, by, &d_half[2 * k + 2]);
      const Mat a_mid = prop.generator(bx, by, &d_half[2 * k + 1]);
      const Mat a_start = prop.generator(bx, by, &d_half[2 * k]);
      rk4_costate_step(b, a_end, a_mid, a_start, -dt);
      if (with_c) {
        rk4_generator_step(u, a_end, a_mid, a_start, -dt);
        const Mat m_k = dissipator_costate_source(u * b, prop.sz_full());
        rk4_dissipator_costate_step(c, prop.hamiltonian(bx, by), prop.bath().tau_c, m_next,
                                    0.5 * (m_next + m_k), m_k, -dt);
        ct.c[k] = c;
        m_next = m_k;
      }
    } else {
      const Mat a = prop.generator(bx, by);
      rk4_costate_step(b, a, a, a, -dt);
    }
    if (store_history) ct.b[k] = b;
  }
  ct.b0 = b;
  return ct;
}

namespace {

// Simultaneous immediate-feedback sweep over ensemble members sharing one
// field: the update at each sample is the weight-averaged gradient over
// members, then every member's propagator (and costate, under the old
// field) is advanced one step. Liouville mode is the single-member case,
// optionally with the dissipator-costate term.
std::pair<ControlField, std::vector<PropagatorTrajectory>> forward_update_members(
    const std::vector<Propagator>& props, const GateProblem& problem,
    const ControlField& old_field, const std::vector<const std::vector<Mat>*>& d_half_old,
    const std::vector<Mat>& b0s, const std::vector<double>& weights, double lambda0_eff,
    const KrotovConfig& config, const std::vector<Mat>* c_hist) {
  const int n_t = old_field.steps();
  const double dt = old_field.dt();
  const double total_time = old_field.total_time();
  const std::size_t n_m = props.size();
  const bool open = props[0].mode() == EvolutionMode::liouville;

  KrotovConfig local = config;
  local.lambda0 = lambda0_eff;

  std::vector<Mat> d_lambda(problem.n_channels);
  for (int ch = 0; ch < problem.n_channels; ++ch) {
    d_lambda[ch] = props[0].control_derivative(ch);
  }

  ControlField new_field = old_field;
  std::vector<PropagatorTrajectory> trajs(n_m);
  std::vector<Mat> u(n_m), d(n_m), b = b0s;
  for (std::size_t i = 0; i < n_m; ++i) {
    trajs[i].mode = props[i].mode();
    trajs[i].times = old_field.t;
    u[i] = Mat::Identity(props[i].gen_dim(), props[i].gen_dim());
    d[i] = props[i].d_zero();
    if (open) {
      trajs[i].d_half.reserve(2 * n_t + 1);
      trajs[i].d_half.push_back(d[i]);
    }
  }
  Mat d_mid;

  for (int k = 0; k < n_t; ++k) {
    const double lam = lambda_profile(old_field.t[k], total_time, local);
    for (int ch = 0; ch < problem.n_channels; ++ch) {
      double grad = 0.0;
      for (std::size_t i = 0; i < n_m; ++i) {
        const Mat m = d_lambda[ch] * u[i];
        grad += weights[i] * real_trace_product(b[i], m);
      }
      if (c_hist != nullptr) {
        // Re Tr[C^dag (-i [h_ch, D])]: the dissipator's control dependence.
        const Mat& h_ch = props[0].control_hamiltonian(ch);
        const Mat& d_old = (*d_half_old[0])[2 * k];
        const std::complex<double> im(0.0, 1.0);
        const Mat f = -im * (h_ch * d_old - d_old * h_ch);
        grad += weights[0] * (*c_hist)[k].conjugate().cwiseProduct(f).sum().real();
      }
      double eps = old_field.channels[ch][k] + grad / lam;
      if (config.max_field > 0.0) {
        eps = std::clamp(eps, -config.max_field, config.max_field);
      }
      new_field.channels[ch][k] = eps;
    }

    const double bx = new_field.channels[0][k];
    const double by = problem.n_channels > 1 ? new_field.channels[1][k] : 0.0;
    // The costate stays tied to the previous field and its dissipator history.
    const double ox = old_field.channels[0][k];
    const double oy = old_field.channels.size() > 1 ? old_field.channels[1][k] : 0.0;
    for (std::size_t i = 0; i < n_m; ++i) {
      props[i].advance(u[i], d[i], bx, by, dt, &d_mid);
      if (open) {
        trajs[i].d_half.push_back(d_mid);
        trajs[i].d_half.push_back(d[i]);
        const Mat a_start = props[i].generator(ox, oy, &(*d_half_old[i])[2 * k]);
        const Mat a_mid = props[i].generator(ox, oy, &(*d_half_old[i])[2 * k + 1]);
        const Mat a_end = props[i].generator(ox, oy, &(*d_half_old[i])[2 * k + 2]);
        rk4_costate_step(b[i], a_start, a_mid, a_end, dt);
      } else {
        const Mat a = props[i].generator(ox, oy);
        rk4_costate_step(b[i], a, a, a, dt);
      }
    }
  }
  for (std::size_t i = 0; i < n_m; ++i) trajs[i].u_final = u[i];
  return {std::move(new_field), std::move(trajs)};
}

}  // namespace

std::pair<ControlField, PropagatorTrajectory> forward_update(
    const Propagator& prop, const GateProblem& problem, const ControlField& old_field,
    const std::vector<Mat>& d_half_old, const Mat& b0, double lambda0_eff,
    const KrotovConfig& config, const std::vector<Mat>* c_hist) {
  auto [field, trajs] =
      forward_update_members({prop}, problem, old_field, {&d_half_old}, {b0}, {1.0},
                             lambda0_eff, config, c_hist);
  return {std::move(field), std::move(trajs[0])};
}

OptimizationResult optimize(const GateProblem& problem, const KrotovConfig& config) {
  const bool open = problem.mode == EvolutionMode::liouville;
  const BathParams* bath = open ? &problem.bath : nullptr;
  if (!config.detuning_ensemble.empty()) {
    if (open) {
      throw std::invalid_argument("optimize: detuning_ensemble requires hilbert mode");
    }
    if (config.detuning_weights.size() != config.detuning_ensemble.size()) {
      throw std::invalid_argument(
          "optimize: detuning_ensemble and detuning_weights lengths differ");
    }
    for (double w : config.detuning_weights) {
      if (!(w > 0.0)) throw std::invalid_argument("optimize: detuning weights must be positive");
    }
  }

  // Ensemble members: copies of the model with S_z-shifted static
  // Hamiltonians, weights normalized. The nominal problem is the
  // single-member trivial ensemble.
  std::vector<RegisterModel> models;
  std::vector<double> weights;
  if (config.detuning_ensemble.empty()) {
    models.push_back(problem.model);
    weights.push_back(1.0);
  } else {
    double w_sum = 0.0;
    for (double w : config.detuning_weights) w_sum += w;
    for (std::size_t i = 0; i < config.detuning_ensemble.size(); ++i) {
      RegisterModel m = problem.model;
      m.h0 += config.detuning_ensemble[i] * m.sz_full;
      models.push_back(std::move(m));
      weights.push_back(config.detuning_weights[i] / w_sum);
    }
  }
  const std::size_t n_m = models.size();
  std::vector<Propagator> props;
  props.reserve(n_m);
  for (const RegisterModel& m : models) props.emplace_back(m, problem.mode, bath);
  const auto [spec, g] = effective_target(problem);

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  OptimizationResult result;
  result.field = problem.warm_start ? *problem.warm_start : initial_guess(problem, config);

  std::vector<PropagatorTrajectory> trajs(n_m);
  std::vector<Mat> pu(n_m);
  auto propagate_all = [&](const ControlField& field, std::vector<PropagatorTrajectory>& out,
                           std::vector<Mat>& pu_out) {
    double k_ens = 0.0;
    for (std::size_t i = 0; i < n_m; ++i) {
      out[i] = evolve(models[i], field, problem.mode, bath, /*store_u=*/false);
      pu_out[i] = project(out[i].u_final, spec);
      k_ens += weights[i] * gate_error(pu_out[i], g).k;
    }
    return k_ens;
  };
  double k_ens = propagate_all(result.field, trajs, pu);
  result.log.push_back({0, k_ens, 1.0 - k_ens, 0.0, 0, elapsed()});

  // Monotonicity is checked against F of the accepted field (the penalty
  // vanishes at the expansion point), the quantity the method is
  // guaranteed not to decrease.
  double prev_j = 1.0 - k_ens;
  int stall = 0;
  result.status = OptimizerStatus::iteration_cap;
  if (k_ens <= config.k_target) {
    result.status = OptimizerStatus::converged_by_error;
  } else {
    const bool use_c = open && config.dissipator_adjoint;
    for (int iter = 1; iter <= config.max_iters; ++iter) {
      std::vector<Mat> b0s(n_m);
      CostateTrajectory ct0;
      for (std::size_t i = 0; i < n_m; ++i) {
        const Mat b_final = boundary_costate(gate_error_gradient(pu[i], g), spec);
        CostateTrajectory ct =
            backward_pass(props[i], result.field, trajs[i].d_half, b_final,
                          /*store_history=*/false, use_c ? &trajs[i].u_final : nullptr);
        b0s[i] = std::move(ct.b0);
        if (i == 0) ct0 = std::move(ct);
      }
      std::vector<const std::vector<Mat>*> d_half_ptrs(n_m);
      for (std::size_t i = 0; i < n_m; ++i) d_half_ptrs[i] = &trajs[i].d_half;

      double lam = config.lambda0;
      int retries = 0;
      bool accepted = false;
      ControlField new_field;
      std::vector<PropagatorTrajectory> new_trajs;
      std::vector<Mat> new_pu(n_m);
      double k_ens_new = 0.0;
      double j_new = 0.0;
      for (;; ++retries) {
        std::tie(new_field, new_trajs) =
            forward_update_members(props, problem, result.field, d_half_ptrs, b0s, weights, lam,
                                   config, use_c ? &ct0.c : nullptr);
        k_ens_new = 0.0;
        for (std::size_t i = 0; i < n_m; ++i) {
          new_pu[i] = project(new_trajs[i].u_final, spec);
          k_ens_new += weights[i] * gate_error(new_pu[i], g).k;
        }
        j_new = objective(k_ens_new, new_field, result.field, config);
        if (j_new >= prev_j - kMonotonicityTol) {
          accepted = true;
          break;
        }
        if (retries >= kMaxRetries) break;
        lam *= 2.0;
      }
      if (!accepted) {
        // No step weight yields a monotone step; keep the current field.
        result.status = OptimizerStatus::converged_by_improvement;
        break;
      }

      double delta_sq = 0.0;
      const double dt = result.field.dt();
      for (std::size_t ch = 0; ch < new_field.channels.size(); ++ch) {
        for (int k = 0; k < new_field.steps(); ++k) {
          const double de = new_field.channels[ch][k] - result.field.channels[ch][k];
          delta_sq += de * de * dt;
        }
      }

      const double k_prev = k_ens;
      result.field = std::move(new_field);
      trajs = std::move(new_trajs);
      pu = std::move(new_pu);
      k_ens = k_ens_new;
      prev_j = 1.0 - k_ens;
      result.log.push_back({iter, k_ens, j_new, std::sqrt(delta_sq), retries, elapsed()});

      if (!std::isfinite(k_ens) || !std::isfinite(delta_sq)) {
        throw std::runtime_error("optimize: non-finite values at iteration " + std::to_string(iter));
      }

      if (k_ens <= config.k_target) {
        result.status = OptimizerStatus::converged_by_error;
        break;
      }
      const double rel = k_prev > 0.0 ? (k_prev - k_ens) / k_prev : 0.0;
      if (rel < config.rel_improve_floor) {
        if (++stall >= config.stall_iters) {
          result.status = OptimizerStatus::converged_by_improvement;
          break;
        }
      } else {
        stall = 0;
      }
    }
  }

  // Fresh propagation of the final field must reproduce the in-loop error.
  std::vector<PropagatorTrajectory> fresh_trajs(n_m);
  std::vector<Mat> fresh_pu(n_m);
  const double k_fresh = propagate_all(result.field, fresh_trajs, fresh_pu);
  if (std::abs(k_fresh - k_ens) > 1e-10) {
    throw std::logic_error("optimize: stale trajectory, recomputed K disagrees");
  }
  result.ensemble_k = k_fresh;
  if (config.detuning_ensemble.empty()) {
    result.report = gate_error(fresh_pu[0], g);
  } else {
    const PropagatorTrajectory nominal =
        evolve(problem.model, result.field, problem.mode, bath, /*store_u=*/false);
    result.report = gate_error(project(nominal.u_final, spec), g);
  }
  return result;
}

}  // namespace nvqoc

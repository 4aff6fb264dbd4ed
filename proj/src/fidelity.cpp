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

#include "nvqoc/fidelity.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace nvqoc {

namespace {
constexpr double kSingularTol = 1e-12;  // relative floor for the polar pseudo-inverse
}

ProjectionSpec make_projection(int n_s, int n_b, int full_dim, std::vector<int> indices) {
  ProjectionSpec spec;
  spec.mode = EvolutionMode::hilbert;
  spec.n_s = n_s;
  spec.n_b = n_b;
  spec.full_dim = full_dim;
  spec.full_indices = std::move(indices);
  if (static_cast<int>(spec.full_indices.size()) != n_s * n_b) {
    throw std::invalid_argument("projection: index count must equal n_s * n_b");
  }
  for (int idx : spec.full_indices) {
    if (idx < 0 || idx >= full_dim) {
      throw std::invalid_argument("projection: index out of range");
    }
  }
  return spec;
}

ProjectionSpec liouville_projection(const ProjectionSpec& h) {
  if (h.mode != EvolutionMode::hilbert) {
    throw std::invalid_argument("liouville_projection expects a hilbert spec");
  }
  ProjectionSpec spec;
  spec.mode = EvolutionMode::liouville;
  spec.n_s = h.n_s * h.n_s;
  spec.n_b = h.n_b * h.n_b;
  spec.full_dim = h.full_dim * h.full_dim;
  spec.full_indices.resize(spec.n_s * spec.n_b);
  // Block order (system-col, system-row, noise-col, noise-row) so that the
  // system factor matches conj(g) kron g under column stacking.
  int a = 0;
  for (int sc = 0; sc < h.n_s; ++sc) {
    for (int sr = 0; sr < h.n_s; ++sr) {
      for (int bc = 0; bc < h.n_b; ++bc) {
        for (int br = 0; br < h.n_b; ++br) {
          const int col = h.full_indices[sc * h.n_b + bc];
          const int row = h.full_indices[sr * h.n_b + br];
          spec.full_indices[a++] = col * h.full_dim + row;
        }
      }
    }
  }
  return spec;
}

Mat liouville_target(const Mat& g) { return kron(g.conjugate(), g); }

Mat project(const Mat& u, const ProjectionSpec& spec) {
  if (u.rows() != spec.full_dim || u.cols() != spec.full_dim) {
    throw std::invalid_argument("project: propagator dimension mismatch");
  }
  const int n = spec.projected_dim();
  Mat pu(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      pu(a, b) = u(spec.full_indices[a], spec.full_indices[b]);
    }
  }
  return pu;
}

Mat assemble_q(const Mat& pu, const Mat& g, int n_b) {
  const int n_s = static_cast<int>(g.rows());
  if (pu.rows() != n_s * n_b || pu.cols() != n_s * n_b) {
    throw std::invalid_argument("assemble_q: PU dimension mismatch");
  }
  Mat q = Mat::Zero(n_b, n_b);
  for (int i = 0; i < n_s; ++i) {
    for (int j = 0; j < n_s; ++j) {
      q += std::conj(g(i, j)) * pu.block(i * n_b, j * n_b, n_b, n_b);
    }
  }
  return q;
}

ErrorReport gate_error(const Mat& pu, const Mat& g) {
  const int n = static_cast<int>(pu.rows());
  const int n_b = n / static_cast<int>(g.rows());
  const Mat q = assemble_q(pu, g, n_b);
  const SvdResult qs = svd(q);

  ErrorReport rep;
  rep.q_singulars = qs.singulars;
  rep.trace_term = (pu.adjoint() * pu).trace().real() / (2.0 * n);
  rep.k = 0.5 + rep.trace_term - qs.singulars.sum() / n;
  rep.f = 1.0 - rep.k;
  if (qs.singulars.size() > 0) {
    rep.rank_deficient = qs.singulars.minCoeff() < kSingularTol * qs.singulars.maxCoeff();
  }
  assert(rep.k > -1e-9 && rep.k < 1.0 + 1e-9);
  return rep;
}

ErrorReport gate_error_phase_gauge(const Mat& pu, const Mat& g) {
  const int n_s = static_cast<int>(g.rows());
  const int n_b = static_cast<int>(pu.rows()) / n_s;

  auto gauged = [&](const Eigen::VectorXd& phi) {
    Mat m = pu;
    for (int s = 1; s < n_s; ++s) {
      m.middleRows(s * n_b, n_b) *= std::exp(cplx(0.0, phi(s - 1)));
    }
    return m;
  };

  // Coordinate descent on the relative phases; K is smooth and periodic in
  // each, so a scanned grid plus two refinements pins the minimum well
  // below the reporting tolerance.
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n_s - 1);
  constexpr int kScan = 256;
  for (int sweep = 0; sweep < 4; ++sweep) {
    for (int s = 0; s < n_s - 1; ++s) {
      double center = phi(s);
      double span = sweep == 0 ? 2.0 * std::numbers::pi : 0.5;
      for (int refine = 0; refine < 3; ++refine) {
        double best_k = 2.0;
        double best_phi = center;
        for (int i = 0; i < kScan; ++i) {
          phi(s) = center - span / 2.0 + span * i / (kScan - 1.0);
          const double k = gate_error(gauged(phi), g).k;
          if (k < best_k) {
            best_k = k;
            best_phi = phi(s);
          }
        }
        center = best_phi;
        span = 3.0 * span / kScan;
      }
      phi(s) = center;
    }
  }
  return gate_error(gauged(phi), g);
}

Mat gate_error_gradient(const Mat& pu, const Mat& g, bool* rank_deficient) {
  const int n = static_cast<int>(pu.rows());
  const int n_b = n / static_cast<int>(g.rows());
  const Mat q = assemble_q(pu, g, n_b);
  const SvdResult qs = svd(q);
  if (rank_deficient != nullptr) {
    *rank_deficient = qs.singulars.size() > 0 &&
                      qs.singulars.minCoeff() < kSingularTol * qs.singulars.maxCoeff();
  }
  // With Q = V S W', the polar factor (Q'Q)^{-1/2} Q' is W V'; directions in
  // the null space of Q contribute zero (pseudo-inverse convention).
  const Mat polar = qs.v * qs.u.adjoint();

  Mat grad(n, n);
  for (int a = 0; a < n; ++a) {
    const int i_a = a / n_b;
    for (int b = 0; b < n; ++b) {
      const int j_b = b / n_b;
      const cplx tr = std::conj(g(i_a, j_b)) * polar(b % n_b, a % n_b);
      grad(a, b) = (std::conj(pu(a, b)) - tr) / (2.0 * n);
    }
  }
  return grad;
}

Mat boundary_costate(const Mat& grad, const ProjectionSpec& spec) {
  const int n = spec.projected_dim();
  if (grad.rows() != n || grad.cols() != n) {
    throw std::invalid_argument("boundary_costate: gradient dimension mismatch");
  }
  // dK = 2 Re sum_ab grad_ab dPU_ab; the factor 2 is folded in here so that
  // dK = -Re Tr[B(T) dU] holds for full-space perturbations.
  Mat b_full = Mat::Zero(spec.full_dim, spec.full_dim);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      b_full(spec.full_indices[b], spec.full_indices[a]) = -2.0 * grad(a, b);
    }
  }
  return b_full;
}

}  // namespace nvqoc

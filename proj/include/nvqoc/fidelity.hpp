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

#include "nvqoc/propagate.hpp"

namespace nvqoc {

/// Selection of the computational block out of the full propagator.
/// full_indices[a] is the full-space index of composite row a, where
/// a = s * n_b + n runs system-major over system-computational (x) noise
/// states. The liouville variant lives on the squared space with
/// n_s and n_b squared and the (system-col, system-row, noise-col,
/// noise-row) block ordering induced by column stacking.
struct ProjectionSpec {
  EvolutionMode mode = EvolutionMode::hilbert;
  int n_s = 1;
  int n_b = 1;
  int full_dim = 1;
  std::vector<int> full_indices;

  int projected_dim() const { return n_s * n_b; }
};

/// Hilbert-space spec from strictly increasing computational indices
/// already in system-major order.
ProjectionSpec make_projection(int n_s, int n_b, int full_dim, std::vector<int> indices);

/// Derives the squared-space spec (and its index permutation) from a
/// hilbert one.
ProjectionSpec liouville_projection(const ProjectionSpec& hilbert_spec);

/// Target gate. `g` is the hilbert-space unitary on the system
/// computational space; liouville_target gives conj(g) kron g.
struct GateTarget {
  Mat g;
};
Mat liouville_target(const Mat& g);

struct ErrorReport {
  double k = 0.0;
  double f = 1.0;
  double trace_term = 0.0;  // Tr[(PU)' PU] / (2N)
  Eigen::VectorXd q_singulars;
  bool rank_deficient = false;
};

/// Restriction of u to the computational rows/columns in block order.
Mat project(const Mat& u, const ProjectionSpec& spec);

/// Q = sum_ij conj(G_ij) (PU)_(ij) over n_b x n_b partitions of PU.
Mat assemble_q(const Mat& pu, const Mat& g, int n_b);

/// Gate error K = 1/2 + Tr[(PU)'PU]/(2N) - (1/N) sum of singular values
/// of Q, and F = 1 - K.
ErrorReport gate_error(const Mat& pu, const Mat& g);

/// K minimized over the diagonal phase gauge diag(e^{i phi_s}) on the
/// system factor, i.e. the gate taken up to local z rotations and global
/// phase (the natural score for frame-ambiguous driven gates). Hilbert
/// shapes only. Deterministic coordinate descent over the n_s - 1 relative
/// phases.
ErrorReport gate_error_phase_gauge(const Mat& pu, const Mat& g);

/// Wirtinger derivative dK/dPU_ab, holding conj(PU) fixed.
Mat gate_error_gradient(const Mat& pu, const Mat& g, bool* rank_deficient = nullptr);

/// Full-space costate boundary value B(T), embedded through the
/// projection and scaled so that dK = -Re Tr[B(T) dU] for any full-space
/// perturbation dU.
Mat boundary_costate(const Mat& grad, const ProjectionSpec& spec);

}  // namespace nvqoc

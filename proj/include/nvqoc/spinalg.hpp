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

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace nvqoc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Angular-momentum ladder matrices for a single spin, dimension 2s+1.
/// sz is diagonal with eigenvalues s, s-1, ..., -s (descending).
struct SpinOperators {
  double spin;
  Mat sx, sy, sz;
};

/// Builds spin matrices for half-integer s. Throws std::invalid_argument
/// if 2s is not a non-negative integer.
SpinOperators spin_operators(double s);

/// Kronecker product a (x) b.
Mat kron(const Mat& a, const Mat& b);

/// Embeds op into the tensor space described by dims, acting on subsystem
/// `slot` and identity elsewhere: I (x) ... (x) op (x) ... (x) I.
Mat embed(const Mat& op, std::size_t slot, const std::vector<int>& dims);

/// Thin SVD, m = u * diag(singulars) * v.adjoint(), singulars descending.
struct SvdResult {
  Mat u;
  Eigen::VectorXd singulars;
  Mat v;
};
SvdResult svd(const Mat& m);

bool is_hermitian(const Mat& m, double tol = 1e-12);

}  // namespace nvqoc

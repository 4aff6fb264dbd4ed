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

#include "nvqoc/spinalg.hpp"

#include <cmath>

namespace nvqoc {

SpinOperators spin_operators(double s) {
  const double two_s = 2.0 * s;
  if (s < 0.0 || std::abs(two_s - std::round(two_s)) > 1e-12) {
    throw std::invalid_argument("spin quantum number must be a non-negative half-integer");
  }
  const int dim = static_cast<int>(std::lround(two_s)) + 1;

  // Basis ordered by descending magnetic quantum number: m = s, s-1, ..., -s.
  SpinOperators ops;
  ops.spin = s;
  ops.sx = Mat::Zero(dim, dim);
  ops.sy = Mat::Zero(dim, dim);
  ops.sz = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    ops.sz(i, i) = s - i;
  }
  // s+ |s,m> = sqrt(s(s+1) - m(m+1)) |s,m+1>; row i has m = s - i.
  for (int i = 1; i < dim; ++i) {
    const double m = s - i;
    const double c = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    ops.sx(i - 1, i) += 0.5 * c;
    ops.sx(i, i - 1) += 0.5 * c;
    ops.sy(i - 1, i) += cplx(0.0, -0.5) * c;
    ops.sy(i, i - 1) += cplx(0.0, 0.5) * c;
  }
  return ops;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Mat embed(const Mat& op, std::size_t slot, const std::vector<int>& dims) {
  if (slot >= dims.size()) {
    throw std::invalid_argument("embed: slot out of range");
  }
  if (op.rows() != dims[slot] || op.cols() != dims[slot]) {
    throw std::invalid_argument("embed: operator dimension does not match dims[slot]");
  }
  Mat out = Mat::Identity(1, 1);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i == slot) {
      out = kron(out, op);
    } else {
      out = kron(out, Mat::Identity(dims[i], dims[i]));
    }
  }
  return out;
}

SvdResult svd(const Mat& m) {
  Eigen::JacobiSVD<Mat> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("svd: decomposition did not converge");
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace nvqoc

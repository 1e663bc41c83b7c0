// Copyright 2026 The spincat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spincat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spincat {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) / scale;
}

bool is_hermitian(const Matrix& m, double tol) { return hermitian_defect(m) <= tol; }

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) {
    return false;
  }
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return max_abs(u * u.adjoint() - id) <= tol && max_abs(u.adjoint() * u - id) <= tol;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Complex frobenius_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace();
}

HermitianPropagator::HermitianPropagator(const Matrix& h) {
  if (!is_hermitian(h, 1e-10)) {
    throw DomainError("propagator generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Matrix HermitianPropagator::at(double t) const {
  Vector phases(eigenvalues_.size());
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
    phases(k) = std::exp(-kI * eigenvalues_(k) * t);
  }
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Matrix expm_hermitian(const Matrix& h, double t) { return HermitianPropagator(h).at(t); }

}  // namespace spincat

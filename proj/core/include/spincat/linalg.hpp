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

#ifndef SPINCAT_LINALG_HPP
#define SPINCAT_LINALG_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace spincat {

using Complex = std::complex<double>;

/// Operators in the Dicke basis. Row/column 0 is m = +I.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Raised for out-of-range arguments and violated preconditions.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Largest absolute entry of M - M^dagger, relative to max(1, max|M|).
double hermitian_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-12);
bool is_unitary(const Matrix& u, double tol = 1e-12);

/// (M + M^dagger) / 2
Matrix hermitian_part(const Matrix& m);

/// Tr(A^dagger B)
Complex frobenius_inner(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& m);

/// Cached eigendecomposition of a Hermitian generator H, used to form
/// exp(-i H t) for many t without re-diagonalizing.
class HermitianPropagator {
 public:
  /// Throws DomainError when H is not Hermitian.
  explicit HermitianPropagator(const Matrix& h);

  /// exp(-i H t)
  Matrix at(double t) const;

  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

 private:
  RealVector eigenvalues_;
  Matrix eigenvectors_;
};

/// exp(-i H t) for Hermitian H.
Matrix expm_hermitian(const Matrix& h, double t);

}  // namespace spincat

#endif  // SPINCAT_LINALG_HPP

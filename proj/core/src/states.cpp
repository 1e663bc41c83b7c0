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

#include "spincat/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spincat {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) {
    out = out * (n - k + j) / j;
  }
  return out;
}

// Amplitudes sqrt(C(2I, I+m)) sin^{I+m}(vartheta/2) cos^{I-m}(vartheta/2) e^{-i (I+m) varphi}.
Vector coherent_amplitudes(const SpinSystem& sys, double vartheta, double varphi) {
  const int two_i = sys.two_spin();
  const double c = std::cos(0.5 * vartheta);
  const double s = std::sin(0.5 * vartheta);
  Vector amp(sys.dim());
  for (int k = 0; k < sys.dim(); ++k) {
    const int n_up = two_i - k;  // I + m
    const int n_down = k;        // I - m
    amp(k) = std::sqrt(binomial(two_i, n_up)) * std::pow(s, n_up) * std::pow(c, n_down) *
             std::exp(-kI * (static_cast<double>(n_up) * varphi));
  }
  return amp;
}

}  // namespace

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0 || std::abs(amplitudes_.norm() - 1.0) > 1e-10) {
    throw DomainError("state vector is not normalized");
  }
}

StateVector StateVector::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) {
    throw DomainError("cannot normalize a zero vector");
  }
  return StateVector(v / n);
}

DensityMatrix::DensityMatrix(Matrix m, double tol) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DomainError("density matrix must be square and non-empty");
  }
  if (!is_hermitian(matrix_, tol)) {
    throw DomainError("density matrix is not Hermitian");
  }
}

bool DensityMatrix::is_physical(double tol) const {
  if (std::abs(trace() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(matrix_), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

std::array<double, 3> bloch_vector(const SpinSystem& sys, const DensityMatrix& rho) {
  const AngularMomentum ops = angular_momentum(sys);
  const Matrix& r = rho.matrix();
  return {(r * ops.x).trace().real(), (r * ops.y).trace().real(), (r * ops.z).trace().real()};
}

std::array<double, 3> bloch_vector(const SpinSystem& sys, const StateVector& psi) {
  return bloch_vector(sys, DensityMatrix::pure(psi));
}

StateVector coherent_state(const SpinSystem& sys, const CoherentParams& params) {
  if (!(params.vartheta >= 0.0 && params.vartheta <= kPi) || !std::isfinite(params.varphi)) {
    throw DomainError("coherent state angles out of range: vartheta must lie in [0, pi]");
  }
  return StateVector::normalized(coherent_amplitudes(sys, params.vartheta, params.varphi));
}

StateVector cat_state(const SpinSystem& sys, const CoherentParams& params, int p) {
  const double spin = sys.spin();
  const double vartheta = params.vartheta;
  const double varphi = params.varphi;
  // coherent_state validates the angles once up front.
  (void)coherent_state(sys, params);

  const Complex casimir_phase = std::exp(kI * (kPi * sys.casimir() / 6.0));
  Vector sum;
  if (sys.half_integer()) {
    const Complex psi_i = casimir_phase * std::exp(-kI * (kPi / 8.0)) / std::sqrt(2.0);
    const double up = 0.5 * kPi * (p + 1);
    const double down = 0.5 * kPi * (p - 1);
    sum = psi_i * (std::exp(-kI * (up * spin)) * coherent_amplitudes(sys, vartheta, varphi - up) +
                   std::exp(-kI * (down * spin)) * coherent_amplitudes(sys, vartheta, varphi - down));
  } else {
    const double first = 0.5 * kPi * p;
    const double second = 0.5 * kPi * (p + 2);
    const Complex w1 = Complex(0.5, -0.5) * std::exp(-kI * (first * spin));
    const Complex w2 = Complex(0.5, 0.5) * std::exp(-kI * (second * spin));
    sum = casimir_phase * (w1 * coherent_amplitudes(sys, vartheta, varphi - first) +
                           w2 * coherent_amplitudes(sys, vartheta, varphi - second));
  }
  return StateVector::normalized(sum);
}

Matrix DecomposedDensity::full() const {
  const int d = deviation.dim();
  return identity_weight * Matrix::Identity(d, d) + epsilon * deviation.matrix();
}

DecomposedDensity pseudo_pure_density(const SpinSystem& sys, double epsilon, const DensityMatrix& deviation) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive, got " + std::to_string(epsilon));
  }
  if (deviation.dim() != sys.dim()) {
    throw DomainError("deviation dimension does not match the spin system");
  }
  const double d = sys.dim();
  return {epsilon, (1.0 - epsilon * deviation.trace()) / d, deviation};
}

DecomposedDensity thermal_density(const SpinSystem& sys, double epsilon) {
  return pseudo_pure_density(sys, epsilon, DensityMatrix(angular_momentum(sys).z));
}

DensityMatrix zeeman_pseudo_pure(const SpinSystem& sys) {
  Matrix m = Matrix::Zero(sys.dim(), sys.dim());
  m(0, 0) = 1.0;
  return DensityMatrix(m);
}

double zeeman_epsilon(double larmor_hz, double temperature_kelvin, int dim) {
  constexpr double kPlanck = 6.62607015e-34;
  constexpr double kBoltzmann = 1.380649e-23;
  if (!(larmor_hz > 0.0) || !(temperature_kelvin > 0.0) || dim < 2) {
    throw DomainError("zeeman_epsilon: non-physical arguments");
  }
  return kPlanck * larmor_hz / (kBoltzmann * temperature_kelvin * dim);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("fidelity: dimension mismatch");
  }
  const double na = a.matrix().squaredNorm();
  const double nb = b.matrix().squaredNorm();
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw DomainError("fidelity: zero-norm input");
  }
  // Tr(a b) = Tr(a^dagger b) for Hermitian a.
  const double f = std::abs(frobenius_inner(a.matrix(), b.matrix())) / std::sqrt(na * nb);
  return std::min(f, 1.0);
}

double distance_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("distance_up_to_phase: dimension mismatch");
  }
  // dot() conjugates its left operand: <b|a>.
  const Complex overlap = b.amplitudes().dot(a.amplitudes());
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a.amplitudes() - phase * b.amplitudes()).norm();
}

}  // namespace spincat

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

#ifndef SPINCAT_STATES_HPP
#define SPINCAT_STATES_HPP

#include <array>

#include "spincat/spin_ops.hpp"

namespace spincat {

/// Effective thermal polarization of the 23Na sample at 9.4 T and room
/// temperature.
inline constexpr double kNa23Epsilon = 0.426e-5;

/// Polar angle vartheta in [0, pi] and azimuth varphi in [0, 2 pi] of a spin
/// coherent state; the excitation parameter is tan(vartheta/2) exp(-i varphi).
struct CoherentParams {
  double vartheta = 0.0;
  double varphi = 0.0;
};

/// Unit-norm amplitudes in the Dicke basis.
class StateVector {
 public:
  /// Throws DomainError if |v| differs from 1 by more than 1e-10.
  explicit StateVector(Vector amplitudes);

  /// Rescales v to unit norm. Throws DomainError for a zero vector.
  static StateVector normalized(const Vector& v);

  const Vector& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  Complex operator[](int k) const { return amplitudes_(k); }

  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Vector amplitudes_;
};

/// Hermitian d x d matrix. Full density operators have unit trace and are
/// positive; deviation matrices need not be, so only Hermiticity is enforced.
class DensityMatrix {
 public:
  /// Throws DomainError when `m` is not square or not Hermitian within `tol`.
  explicit DensityMatrix(Matrix m, double tol = 1e-10);
  static DensityMatrix pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  double trace() const { return matrix_.trace().real(); }
  Complex operator()(int row, int col) const { return matrix_(row, col); }

  /// Unit trace and no eigenvalue below -tol.
  bool is_physical(double tol = 1e-10) const;

 private:
  Matrix matrix_;
};

/// <I> = (<Ix>, <Iy>, <Iz>)
std::array<double, 3> bloch_vector(const SpinSystem& sys, const DensityMatrix& rho);
std::array<double, 3> bloch_vector(const SpinSystem& sys, const StateVector& psi);

/// |zeta(vartheta, varphi)> with amplitudes sqrt(C(2I, I+m)) zeta^{I+m} / (1 + |zeta|^2)^I.
/// Evaluated in the equivalent cos/sin form so vartheta = pi returns |I,+I>.
StateVector coherent_state(const SpinSystem& sys, const CoherentParams& params);

/// State reached from |zeta(vartheta, varphi)> after free evolution for t_S
/// under -(omega_Q/2)(p Iz - Iz^2 + I^2/3), written as a superposition of two
/// coherent states.
///
/// Half-integer I:
///   psi_I [ e^{-i pi (p+1) I/2} |zeta(vartheta, varphi - pi(p+1)/2)>
///         + e^{-i pi (p-1) I/2} |zeta(vartheta, varphi - pi(p-1)/2)> ]
/// with psi_I = exp(i pi I(I+1)/6 - i pi/8) / sqrt(2).
/// Integer I:
///   e^{i pi I(I+1)/6} [ (1-i)/2 e^{-i pi p I/2}     |zeta(vartheta, varphi - pi p/2)>
///                     + (1+i)/2 e^{-i pi (p+2) I/2} |zeta(vartheta, varphi - pi(p+2)/2)> ].
/// Both forms are exact per amplitude, so the result equals the propagated
/// coherent state including its global phase.
StateVector cat_state(const SpinSystem& sys, const CoherentParams& params, int p);

/// rho = (1/d - eps') 1 + eps Delta, with eps' = eps Tr(Delta)/d so that Tr rho = 1.
struct DecomposedDensity {
  double epsilon = 0.0;
  double identity_weight = 0.0;
  DensityMatrix deviation;

  Matrix full() const;
};

/// High-temperature Zeeman state: Delta = Iz. Throws DomainError for eps <= 0.
DecomposedDensity thermal_density(const SpinSystem& sys, double epsilon);

/// Same decomposition around an arbitrary deviation (e.g. a projector).
DecomposedDensity pseudo_pure_density(const SpinSystem& sys, double epsilon, const DensityMatrix& deviation);

/// Effective pure state of the Zeeman deviation: the projector onto |I, +I>.
DensityMatrix zeeman_pseudo_pure(const SpinSystem& sys);

/// hbar omega_L / (k_B T Z) for a Larmor frequency in Hz and Z = d.
double zeeman_epsilon(double larmor_hz, double temperature_kelvin, int dim);

/// |Tr(a b)| / sqrt(Tr(a^2) Tr(b^2)). Throws DomainError on a zero-norm
/// input or a dimension mismatch.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// min over chi of |a - e^{i chi} b|.
double distance_up_to_phase(const StateVector& a, const StateVector& b);

}  // namespace spincat

#endif  // SPINCAT_STATES_HPP

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

#ifndef SPINCAT_SPIN_OPS_HPP
#define SPINCAT_SPIN_OPS_HPP

#include <vector>

#include "spincat/linalg.hpp"

namespace spincat {

/// A single spin I with Hilbert dimension d = 2I + 1.
///
/// The Dicke basis is ordered m = +I, I-1, ..., -I, so basis index k carries
/// magnetic quantum number m = I - k. Every operator and state in the library
/// uses this ordering.
class SpinSystem {
 public:
  /// Throws DomainError unless 2I is a positive integer.
  explicit SpinSystem(double spin);

  static SpinSystem from_twice(int two_spin);

  int two_spin() const { return two_spin_; }
  double spin() const { return 0.5 * two_spin_; }
  int dim() const { return two_spin_ + 1; }
  bool half_integer() const { return two_spin_ % 2 == 1; }

  /// m for basis index k.
  double m(int index) const { return spin() - index; }
  /// 2m for basis index k, exact.
  int two_m(int index) const { return two_spin_ - 2 * index; }

  /// I(I+1)
  double casimir() const { return spin() * (spin() + 1.0); }

  bool operator==(const SpinSystem&) const = default;

 private:
  int two_spin_;
};

struct AngularMomentum {
  Matrix x;
  Matrix y;
  Matrix z;
  Matrix plus;
  Matrix minus;
  /// Ix^2 + Iy^2 + Iz^2, which equals I(I+1) times the identity.
  Matrix sq;
};

AngularMomentum angular_momentum(const SpinSystem& sys);

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>, all arguments doubled.
/// Returns 0 for any combination violating the triangle or projection rules.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m);

/// Irreducible spherical tensor operator T_KQ with matrix elements
///   <I m'| T_KQ |I m> = sqrt((2K+1)/(2I+1)) <I m; K Q | I m'>.
/// This normalization makes the set orthonormal under Tr(A^dagger B) and
/// gives T_KQ^dagger = (-1)^Q T_{K,-Q}. Throws DomainError unless
/// 0 <= K <= 2I and |Q| <= K.
Matrix spherical_tensor(const SpinSystem& sys, int rank, int order);

struct TensorComponent {
  int rank;
  int order;
  Matrix op;
};

/// All (2I+1)^2 tensors, ordered K = 0..2I, Q = -K..K. The position of (K, Q)
/// is K*K + K + Q.
std::vector<TensorComponent> tensor_basis(const SpinSystem& sys);

inline int tensor_index(int rank, int order) { return rank * rank + rank + order; }

/// Reduced Wigner matrix d^L_{m'm}(theta) = <L m'| exp(-i theta L_y) |L m>,
/// rows and columns ordered m = +L..-L. `two_rank` is 2L.
RealMatrix reduced_wigner_d(int two_rank, double theta);

/// U = exp(-i alpha Iz) exp(-i beta Iy) exp(-i gamma Iz).
Matrix rotation_operator(const SpinSystem& sys, double alpha, double beta, double gamma);

/// exp(-i angle (Ix cos phase + Iy sin phase)), an ideal hard pulse.
Matrix pulse_rotation(const SpinSystem& sys, double angle, double phase);

}  // namespace spincat

#endif  // SPINCAT_SPIN_OPS_HPP

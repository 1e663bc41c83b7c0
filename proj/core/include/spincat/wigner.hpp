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

#ifndef SPINCAT_WIGNER_HPP
#define SPINCAT_WIGNER_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "spincat/states.hpp"

namespace spincat {

/// Coefficients T_KQ = Tr(rho T_KQ^dagger) for K = 0..2I, Q = -K..K, stored
/// at tensor_index(K, Q).
class TensorExpansion {
 public:
  TensorExpansion(SpinSystem sys, std::vector<Complex> coefficients);

  const SpinSystem& system() const { return sys_; }
  Complex at(int rank, int order) const;
  const std::vector<Complex>& coefficients() const { return coefficients_; }

  /// sum_KQ T_KQ T_KQ-operator
  Matrix reconstruct() const;

 private:
  SpinSystem sys_;
  std::vector<Complex> coefficients_;
};

/// Throws DomainError when rho's dimension differs from 2I+1.
TensorExpansion tensor_expectations(const SpinSystem& sys, const DensityMatrix& rho);

/// Orthonormal spherical harmonic with the Condon-Shortley phase.
Complex spherical_harmonic(int rank, int order, double theta, double phi);

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendre {
  RealVector nodes;
  RealVector weights;
};
GaussLegendre gauss_legendre(int n);

struct GridSpec {
  int n_theta = 64;
  int n_phi = 128;
};

/// W(theta, phi) sampled on Gauss-Legendre nodes in cos(theta) (theta
/// ascending) and a uniform phi grid phi_j = 2 pi j / n_phi.
struct WignerGrid {
  RealVector theta;
  RealVector phi;
  /// n_theta x n_phi
  RealMatrix values;
  /// Solid-angle weight of every sample on row i; sums to 4 pi over the grid.
  RealVector row_weights;
  /// Largest |Im W| seen while summing the expansion.
  double max_imag_residue = 0.0;
};

/// sqrt((2I+1)/4pi) sum_KQ T_KQ Y_KQ(theta, phi), returned as a complex
/// number so callers can inspect the imaginary residue.
Complex wigner_value(const TensorExpansion& expansion, double theta, double phi);

/// Throws DomainError when either grid size is below 8.
WignerGrid wigner_function(const SpinSystem& sys, const DensityMatrix& rho, const GridSpec& spec = {});

/// Quadrature estimate of the integral of W over the sphere.
double integrate_sphere(const WignerGrid& grid);

/// W(pi/2, 2 pi j / n) for j = 0..n-1.
RealVector equatorial_scan(const TensorExpansion& expansion, int n);

/// Strict local extrema of a periodic sequence: {minima, maxima}.
std::pair<int, int> count_periodic_extrema(const RealVector& values);

/// Writes "# spin=<I> n_theta=<n> n_phi=<n>", "theta,phi,W", then one
/// "theta,phi,W" line per sample, theta-major, each number as %.17g.
void write_wigner_csv(std::ostream& out, const SpinSystem& sys, const WignerGrid& grid);

}  // namespace spincat

#endif  // SPINCAT_WIGNER_HPP

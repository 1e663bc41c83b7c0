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

#include "spincat/wigner.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>

namespace spincat {

TensorExpansion::TensorExpansion(SpinSystem sys, std::vector<Complex> coefficients)
    : sys_(sys), coefficients_(std::move(coefficients)) {
  if (static_cast<int>(coefficients_.size()) != sys_.dim() * sys_.dim()) {
    throw DomainError("TensorExpansion: expected (2I+1)^2 coefficients");
  }
}

Complex TensorExpansion::at(int rank, int order) const {
  if (rank < 0 || rank > sys_.two_spin() || order < -rank || order > rank) {
    throw DomainError("TensorExpansion::at: (K, Q) out of range");
  }
  return coefficients_[tensor_index(rank, order)];
}

Matrix TensorExpansion::reconstruct() const {
  Matrix out = Matrix::Zero(sys_.dim(), sys_.dim());
  for (const TensorComponent& t : tensor_basis(sys_)) {
    out += coefficients_[tensor_index(t.rank, t.order)] * t.op;
  }
  return out;
}

TensorExpansion tensor_expectations(const SpinSystem& sys, const DensityMatrix& rho) {
  if (rho.dim() != sys.dim()) {
    throw DomainError("tensor_expectations: density matrix dimension does not match the spin system");
  }
  std::vector<Complex> coefficients(sys.dim() * sys.dim());
  for (const TensorComponent& t : tensor_basis(sys)) {
    // Tr(rho T^dagger) = <T, rho> in the Frobenius product.
    coefficients[tensor_index(t.rank, t.order)] = frobenius_inner(t.op, rho.matrix());
  }
  return TensorExpansion(sys, std::move(coefficients));
}

Complex spherical_harmonic(int rank, int order, double theta, double phi) {
  const int q = std::abs(order);
  const double legendre = std::sph_legendre(rank, q, theta);
  const Complex positive = legendre * std::exp(kI * (static_cast<double>(q) * phi));
  if (order >= 0) {
    return positive;
  }
  return (q % 2 == 0 ? 1.0 : -1.0) * std::conj(positive);
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) {
    throw DomainError("gauss_legendre: need at least one node");
  }
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)), &gsl_integration_glfixed_table_free);
  if (!table) {
    throw DomainError("gauss_legendre: table allocation failed");
  }
  GaussLegendre out{RealVector(n), RealVector(n)};
  for (int i = 0; i < n; ++i) {
    double x = 0.0;
    double w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &x, &w, table.get());
    out.nodes(i) = x;
    out.weights(i) = w;
  }
  return out;
}

Complex wigner_value(const TensorExpansion& expansion, double theta, double phi) {
  const SpinSystem& sys = expansion.system();
  Complex sum = 0.0;
  for (int rank = 0; rank <= sys.two_spin(); ++rank) {
    for (int order = -rank; order <= rank; ++order) {
      sum += expansion.at(rank, order) * spherical_harmonic(rank, order, theta, phi);
    }
  }
  return std::sqrt(sys.dim() / (4.0 * kPi)) * sum;
}

WignerGrid wigner_function(const SpinSystem& sys, const DensityMatrix& rho, const GridSpec& spec) {
  if (spec.n_theta < 8 || spec.n_phi < 8) {
    throw DomainError("wigner_function: grid sizes below 8 are too coarse for the quadrature");
  }
  const TensorExpansion expansion = tensor_expectations(sys, rho);
  const GaussLegendre gl = gauss_legendre(spec.n_theta);

  WignerGrid grid;
  grid.theta.resize(spec.n_theta);
  grid.phi.resize(spec.n_phi);
  grid.row_weights.resize(spec.n_theta);
  grid.values.resize(spec.n_theta, spec.n_phi);

  const double dphi = 2.0 * kPi / spec.n_phi;
  for (int j = 0; j < spec.n_phi; ++j) {
    grid.phi(j) = dphi * j;
  }
  // GSL returns ascending cos(theta); reverse so theta ascends.
  for (int i = 0; i < spec.n_theta; ++i) {
    const int src = spec.n_theta - 1 - i;
    grid.theta(i) = std::acos(gl.nodes(src));
    grid.row_weights(i) = gl.weights(src) * dphi;
  }

  const int max_rank = sys.two_spin();
  const double prefactor = std::sqrt(sys.dim() / (4.0 * kPi));
  // Separable sum: W(theta_i, phi_j) = sum_Q c_Q(theta_i) e^{i Q phi_j}.
  std::vector<Complex> row(2 * max_rank + 1);
  for (int i = 0; i < spec.n_theta; ++i) {
    for (int order = -max_rank; order <= max_rank; ++order) {
      Complex c = 0.0;
      const int q = std::abs(order);
      for (int rank = q; rank <= max_rank; ++rank) {
        double legendre = std::sph_legendre(rank, q, grid.theta(i));
        if (order < 0 && q % 2 == 1) legendre = -legendre;
        c += expansion.at(rank, order) * legendre;
      }
      row[order + max_rank] = prefactor * c;
    }
    for (int j = 0; j < spec.n_phi; ++j) {
      Complex w = 0.0;
      for (int order = -max_rank; order <= max_rank; ++order) {
        w += row[order + max_rank] * std::exp(kI * (static_cast<double>(order) * grid.phi(j)));
      }
      grid.values(i, j) = w.real();
      grid.max_imag_residue = std::max(grid.max_imag_residue, std::abs(w.imag()));
    }
  }
  return grid;
}

double integrate_sphere(const WignerGrid& grid) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    total += grid.row_weights(i) * grid.values.row(i).sum();
  }
  return total;
}

RealVector equatorial_scan(const TensorExpansion& expansion, int n) {
  if (n < 3) {
    throw DomainError("equatorial_scan: need at least three samples");
  }
  RealVector out(n);
  for (int j = 0; j < n; ++j) {
    out(j) = wigner_value(expansion, 0.5 * kPi, 2.0 * kPi * j / n).real();
  }
  return out;
}

std::pair<int, int> count_periodic_extrema(const RealVector& values) {
  const Eigen::Index n = values.size();
  int minima = 0;
  int maxima = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double prev = values((j + n - 1) % n);
    const double next = values((j + 1) % n);
    if (values(j) < prev && values(j) < next) ++minima;
    if (values(j) > prev && values(j) > next) ++maxima;
  }
  return {minima, maxima};
}

void write_wigner_csv(std::ostream& out, const SpinSystem& sys, const WignerGrid& grid) {
  char buf[96];
  const int n_theta = static_cast<int>(grid.theta.size());
  const int n_phi = static_cast<int>(grid.phi.size());
  std::snprintf(buf, sizeof(buf), "# spin=%.17g n_theta=%d n_phi=%d\n", sys.spin(), n_theta, n_phi);
  out << buf << "theta,phi,W\n";
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", grid.theta(i), grid.phi(j), grid.values(i, j));
      out << buf;
    }
  }
}

}  // namespace spincat

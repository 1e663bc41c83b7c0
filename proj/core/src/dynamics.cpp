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

#include "spincat/dynamics.hpp"

#include <cmath>

namespace spincat {

NmrParams resonant_params(double omega_larmor, double omega_q, int p) {
  NmrParams out;
  out.omega_larmor = omega_larmor;
  out.omega_rf = omega_larmor - 0.5 * p * omega_q;
  out.omega_q = omega_q;
  return out;
}

double cat_time(double nu_q_hz) {
  if (!(nu_q_hz > 0.0)) {
    throw DomainError("nu_Q must be positive");
  }
  return 1.0 / (2.0 * nu_q_hz);
}

Matrix nmr_hamiltonian(const SpinSystem& sys, const NmrParams& params) {
  const AngularMomentum ops = angular_momentum(sys);
  return -(params.omega_larmor - params.omega_rf) * ops.z +
         (params.omega_q / 6.0) * (3.0 * ops.z * ops.z - ops.sq) +
         params.omega_1 * (std::cos(params.rf_phase) * ops.x + std::sin(params.rf_phase) * ops.y);
}

Matrix effective_hamiltonian(const SpinSystem& sys, double omega_q, int p) {
  const AngularMomentum ops = angular_momentum(sys);
  return -(0.5 * omega_q) * (static_cast<double>(p) * ops.z - ops.z * ops.z + ops.sq / 3.0);
}

Matrix atom_field_hamiltonian(const SpinSystem& sys, double kappa, double nbar) {
  if (!(nbar >= 0.0)) {
    throw DomainError("mean photon number must be non-negative");
  }
  const AngularMomentum ops = angular_momentum(sys);
  return kappa * ((2.0 * nbar + 1.0) * ops.z - ops.z * ops.z + ops.sq);
}

Matrix quadrupolar_hamiltonian(const SpinSystem& sys, const QuadrupolarParams& params) {
  if (!(params.eta >= 0.0 && params.eta <= 1.0)) {
    throw DomainError("asymmetry parameter eta must lie in [0, 1]");
  }
  const AngularMomentum ops = angular_momentum(sys);
  return (params.omega_q / 6.0) *
         ((3.0 * ops.z * ops.z - ops.sq) + params.eta * (ops.x * ops.x - ops.y * ops.y));
}

StateVector evolve(const StateVector& psi, const Matrix& h, double t) {
  if (h.rows() != psi.dim()) {
    throw DomainError("evolve: Hamiltonian dimension does not match the state");
  }
  return StateVector::normalized(expm_hermitian(h, t) * psi.amplitudes());
}

DensityMatrix evolve(const DensityMatrix& rho, const Matrix& h, double t) {
  if (h.rows() != rho.dim()) {
    throw DomainError("evolve: Hamiltonian dimension does not match the density matrix");
  }
  const Matrix u = expm_hermitian(h, t);
  return DensityMatrix(hermitian_part(u * rho.matrix() * u.adjoint()));
}

std::vector<DensityMatrix> free_evolution_schedule(const SpinSystem& sys, const DensityMatrix& rho0, int p,
                                                   double nu_q_hz, std::span<const double> multiples) {
  const double t_s = cat_time(nu_q_hz);
  const HermitianPropagator propagator(effective_hamiltonian(sys, omega_from_hz(nu_q_hz), p));
  std::vector<DensityMatrix> out;
  out.reserve(multiples.size());
  for (const double k : multiples) {
    const Matrix u = propagator.at(k * t_s);
    out.emplace_back(hermitian_part(u * rho0.matrix() * u.adjoint()));
  }
  return out;
}

std::vector<DensityMatrix> free_evolution_schedule(const SpinSystem& sys, int p, double nu_q_hz,
                                                   std::span<const double> multiples) {
  const DensityMatrix rho0 = DensityMatrix::pure(coherent_state(sys, {0.5 * kPi, 0.0}));
  return free_evolution_schedule(sys, rho0, p, nu_q_hz, multiples);
}

StateVector analytic_state(const SpinSystem& sys, const CoherentParams& params, int p, double multiple) {
  if (multiple == 0.0) {
    return coherent_state(sys, params);
  }
  if (multiple == 1.0) {
    return cat_state(sys, params, p);
  }
  if (multiple == 2.0) {
    // exp[i pi (p m - m^2)] reduces to a pure azimuth shift.
    const double shift = sys.half_integer() ? kPi * p : kPi * (p - 1);
    return coherent_state(sys, {params.vartheta, params.varphi - shift});
  }
  const StateVector start = coherent_state(sys, params);
  Vector amp = start.amplitudes();
  for (int k = 0; k < sys.dim(); ++k) {
    const double m = sys.m(k);
    amp(k) *= std::exp(kI * (0.5 * kPi * multiple * (p * m - m * m + sys.casimir() / 3.0)));
  }
  return StateVector::normalized(amp);
}

}  // namespace spincat

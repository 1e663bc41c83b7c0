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

#ifndef SPINCAT_DYNAMICS_HPP
#define SPINCAT_DYNAMICS_HPP

#include <span>
#include <vector>

#include "spincat/states.hpp"

namespace spincat {

// All Hamiltonians are H / hbar in rad/s.

/// Rotating-frame NMR parameters, all angular frequencies in rad/s.
struct NmrParams {
  double omega_larmor = 0.0;
  double omega_rf = 0.0;
  double omega_q = 0.0;
  double omega_1 = 0.0;
  double rf_phase = 0.0;  // upsilon, radians
};

struct QuadrupolarParams {
  double omega_q = 0.0;
  double eta = 0.0;  // asymmetry, [0, 1]
};

/// Mapping between the atom-field mean photon number and the NMR offset
/// index: p = 2 nbar + 1.
inline double p_from_nbar(double nbar) { return 2.0 * nbar + 1.0; }
inline double nbar_from_p(int p) { return 0.5 * (p - 1); }

/// Resonance condition omega_RF = omega_L - p omega_Q / 2.
NmrParams resonant_params(double omega_larmor, double omega_q, int p);

inline double omega_from_hz(double hz) { return 2.0 * kPi * hz; }

/// t_S = pi / omega_Q = 1 / (2 nu_Q), seconds. Throws DomainError for nu_Q <= 0.
double cat_time(double nu_q_hz);

/// -(omega_L - omega_RF) Iz + (omega_Q/6)(3 Iz^2 - I^2) + omega_1 (Ix cos upsilon + Iy sin upsilon)
Matrix nmr_hamiltonian(const SpinSystem& sys, const NmrParams& params);

/// -(omega_Q/2)(p Iz - Iz^2 + I^2/3): the on-resonance form reached with
/// omega_RF = omega_L - p omega_Q / 2 and no RF field.
Matrix effective_hamiltonian(const SpinSystem& sys, double omega_q, int p);

/// kappa ((2 nbar + 1) Iz - Iz^2 + I^2), spin operators standing in for J.
/// Throws DomainError for nbar < 0.
Matrix atom_field_hamiltonian(const SpinSystem& sys, double kappa, double nbar);

/// (omega_Q/6)[(3 Iz^2 - I^2) + eta (Ix^2 - Iy^2)]. Throws DomainError when
/// eta is outside [0, 1].
Matrix quadrupolar_hamiltonian(const SpinSystem& sys, const QuadrupolarParams& params);

/// exp(-i H t) applied to a state or as U rho U^dagger. H must be Hermitian.
StateVector evolve(const StateVector& psi, const Matrix& h, double t);
DensityMatrix evolve(const DensityMatrix& rho, const Matrix& h, double t);

/// Free evolution of the |zeta(pi/2, 0)> deviation under the resonant
/// Hamiltonian with offset index p, sampled at k t_S for each k in
/// `multiples`.
std::vector<DensityMatrix> free_evolution_schedule(const SpinSystem& sys, int p, double nu_q_hz,
                                                   std::span<const double> multiples);

/// Same, from an arbitrary initial deviation matrix.
std::vector<DensityMatrix> free_evolution_schedule(const SpinSystem& sys, const DensityMatrix& rho0, int p,
                                                   double nu_q_hz, std::span<const double> multiples);

/// Closed-form state at k t_S from |zeta(params)>: the coherent state for
/// k = 0, cat_state for k = 1, the shifted coherent state for k = 2, and the
/// diagonal propagator phases exp[i (pi k/2)(p m - m^2 + I(I+1)/3)] otherwise.
StateVector analytic_state(const SpinSystem& sys, const CoherentParams& params, int p, double multiple);

}  // namespace spincat

#endif  // SPINCAT_DYNAMICS_HPP

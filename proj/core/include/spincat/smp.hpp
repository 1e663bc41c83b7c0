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

#ifndef SPINCAT_SMP_HPP
#define SPINCAT_SMP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spincat/dynamics.hpp"
#include "spincat/tomography.hpp"

namespace spincat {

/// Piecewise-constant RF slice. omega is the nutation amplitude in rad/s,
/// phase is the RF phase in radians, duration in seconds. A free-evolution
/// delay is a segment with omega = 0.
struct PulseSegment {
  double omega = 0.0;
  double phase = 0.0;
  double duration = 0.0;
};

struct PulseSequence {
  std::vector<PulseSegment> segments;
  std::string target;
  std::optional<double> fidelity;

  double total_duration() const;
};

/// Each segment evolves under nmr_hamiltonian(params) with omega_1 and
/// rf_phase replaced by the segment values. Throws DomainError on a negative
/// amplitude, a non-positive duration, or a dimension mismatch.
Matrix sequence_propagator(const SpinSystem& sys, const PulseSequence& seq, const NmrParams& params);
DensityMatrix simulate_sequence(const SpinSystem& sys, const DensityMatrix& rho0, const PulseSequence& seq,
                                const NmrParams& params);

struct FidelityGradient {
  double fidelity = 0.0;
  std::vector<double> d_omega;
  std::vector<double> d_phase;
};

/// Fidelity of simulate_sequence(rho0) against `target` and its exact
/// derivatives with respect to every segment amplitude and phase.
FidelityGradient fidelity_gradient(const SpinSystem& sys, const DensityMatrix& rho0, const DensityMatrix& target,
                                   const PulseSequence& seq, const NmrParams& params);

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SmpOptions {
  /// Upper bound on every segment amplitude, rad/s.
  double amplitude_cap = 2.0 * kPi * 100e3;
  /// Maximum objective evaluations over all starts, checked between
  /// optimizer iterations. Zero returns the first initial guess.
  int budget = 4000;
  int starts = 8;
  std::uint64_t seed = 2024;
  /// Stop a start once its fidelity reaches this value.
  double target_fidelity = 0.9999;
  /// Defaults to zeeman_pseudo_pure(sys).
  std::optional<DensityMatrix> initial;
};

struct SmpResult {
  PulseSequence sequence;
  double fidelity = 0.0;
  int evaluations = 0;
  /// Best fidelity seen after each evaluation; non-decreasing.
  std::vector<double> history;
};

/// Multi-start quasi-Newton search over n segments of length delta_t for the
/// amplitudes and phases that best prepare `target`. Amplitudes are kept in
/// [0, cap] through omega = cap sin^2(s). Deterministic for a given seed.
/// Throws InfeasibleError when the cap is not positive or too weak to nutate
/// by pi/2 in the available time, DomainError when n < 1 or delta_t <= 0.
SmpResult optimize_smp(const SpinSystem& sys, const NmrParams& params, const StateVector& target, int n,
                       double delta_t, const SmpOptions& options = {});

/// Arithmetic mean of the density matrices produced by each variant. Throws
/// DomainError for an empty list.
DensityMatrix temporal_average(const SpinSystem& sys, const std::vector<PulseSequence>& variants,
                               const DensityMatrix& rho0, const NmrParams& params);

/// Preparation followed by the cat-formation delay 1/(2 nu_Q), the readout
/// pulse as one hard segment of amplitude `readout_omega`, and the
/// pre-acquisition delay 1/nu_Q.
PulseSequence readout_schedule(const PulseSequence& preparation, double nu_q_hz, const TomographyPulse& readout,
                               double readout_omega = 2.0 * kPi * 25e3);

}  // namespace spincat

#endif  // SPINCAT_SMP_HPP

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

#ifndef SPINCAT_TOMOGRAPHY_HPP
#define SPINCAT_TOMOGRAPHY_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spincat/states.hpp"

namespace spincat {

/// One global rotation of the readout: nutation theta about the axis at
/// transmitter phase phi, detected with receiver phase alpha. All angles are
/// radians, phases reduced to [0, 2 pi).
struct TomographyPulse {
  double theta = 0.5 * kPi;
  double phi = 0.0;
  double alpha = 0.0;
  int target_coherence = 0;
};

/// Steps whose averaged signal keeps only coherence order `order`, i.e. the
/// density-matrix elements rho(a, b) with m_a - m_b = order.
struct PhaseCycle {
  int order = 0;
  double theta = 0.5 * kPi;
  std::vector<TomographyPulse> steps;
};

/// Cycles for every order -2I..2I, each at nutations pi/2 and pi/4. Order 0
/// uses the four-step set phi = {pi/2, pi, 3pi/2, 0}, alpha = {0, 3pi/2, pi,
/// pi/2} when 2I < 4. All other cycles use N = 4I + 1 steps with
/// phi_k = 2 pi k / N and alpha_k = -(q + 1) phi_k.
std::vector<PhaseCycle> phase_cycles(const SpinSystem& sys);

/// The flattened list of pulses from phase_cycles().
std::vector<TomographyPulse> pulse_set(const SpinSystem& sys);

/// Single-quantum lines, one per transition m <-> m+1, ordered m = I-1 down
/// to -I. frequency_hz is the offset nu_Q (m + 1/2) from the carrier.
struct SpectrumLines {
  std::vector<double> frequency_hz;
  std::vector<Complex> amplitude;

  std::size_t size() const { return amplitude.size(); }
};

enum class AcquisitionMode { Coherence, Fid };

/// Throws DomainError for anything other than "coherence" or "fid".
AcquisitionMode parse_acquisition_mode(std::string_view name);
std::string to_string(AcquisitionMode mode);

struct AcquisitionOptions {
  AcquisitionMode mode = AcquisitionMode::Coherence;
  double nu_q_hz = 15220.0;
  /// Fid mode only.
  int n_points = 4096;
  double dwell_s = 12e-6;
  /// Transverse relaxation time; values <= 0 disable the decay.
  double t2_s = 0.0;
  /// Free evolution before acquisition; negative means 1 / nu_Q.
  double pre_delay_s = -1.0;
  /// Error on nu_Q during evolution, added to nu_q_hz. The line regions stay
  /// at the nominal coupling.
  double nu_q_offset_hz = 0.0;

  double pre_delay() const { return pre_delay_s < 0.0 ? 1.0 / nu_q_hz : pre_delay_s; }
  /// Nyquist frequency 1 / (2 dwell).
  double spectral_half_width() const { return 0.5 / dwell_s; }
};

/// Line amplitudes for readout `pulse` applied to rho.
///
/// Coherence mode reads e^{i alpha} (I+)_{m,m+1} rho'(m+1, m) with
/// rho' = U rho U^dagger directly. Fid mode evolves rho' for the pre-delay
/// under the quadrupolar coupling, samples s(t) = e^{i alpha} Tr(rho(t) I+)
/// over n_points at dwell_s, Fourier transforms, and sums the spectrum over
/// +-nu_Q/2 around each line. Both modes are linear in rho and agree when the
/// lines sit exactly on frequency bins.
SpectrumLines synthesize_spectrum(const SpinSystem& sys, const DensityMatrix& rho, const TomographyPulse& pulse,
                                  const AcquisitionOptions& options = {});

/// Same, for an arbitrary (possibly non-Hermitian) operator.
SpectrumLines synthesize_spectrum(const SpinSystem& sys, const Matrix& op, const TomographyPulse& pulse,
                                  const AcquisitionOptions& options = {});

/// Adds independent complex Gaussian noise with per-quadrature standard
/// deviation sigma to every amplitude. Deterministic for a given seed;
/// sigma = 0 returns the input unchanged. Throws DomainError for sigma < 0.
SpectrumLines add_line_noise(SpectrumLines lines, double sigma, std::uint64_t seed);

struct NoiseSettings {
  /// Standard deviation relative to the largest noise-free line.
  double relative_sigma = 0.0;
  /// Each pulse draws a nu_Q error uniformly from [-jitter, +jitter].
  double nu_q_jitter_hz = 0.0;
  std::uint64_t seed = 0;
};

/// Stacked measurement vector B: the mean line amplitudes of every cycle in
/// order, followed by Tr(op) as a final normalization row.
Vector acquire(const SpinSystem& sys, const Matrix& op, const std::vector<PhaseCycle>& cycles,
               const AcquisitionOptions& options = {}, const NoiseSettings& noise = {});

class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(int rank, int required);
  int rank() const { return rank_; }
  int required() const { return required_; }
  int deficiency() const { return required_ - rank_; }

 private:
  int rank_;
  int required_;
};

/// A X = B, columns indexed by tensor_index(K, Q).
struct DesignSystem {
  SpinSystem sys;
  std::vector<PhaseCycle> cycles;
  AcquisitionOptions options;
  Matrix a;
  RealVector singular_values;
  double condition_number = 0.0;
  int rank = 0;
};

/// Column (K, Q) is acquire() applied to the basis operator T_KQ. Throws
/// RankDeficientError when rank(A) < (2I+1)^2, using the singular-value
/// cutoff 1e-10 sigma_max.
DesignSystem build_design_matrix(const SpinSystem& sys, const std::vector<PhaseCycle>& cycles,
                                 const AcquisitionOptions& options = {});

struct Reconstruction {
  /// a_{K,Q} at tensor_index(K, Q).
  Vector coefficients;
  Matrix raw;
  DensityMatrix hermitized;
  /// |raw - hermitized|_F
  double hermitian_residual = 0.0;
  /// |A X - B|_2
  double solve_residual = 0.0;
  double condition_number = 0.0;
  /// Non-empty when the condition number exceeds kIllConditioned.
  std::string warning;
};

inline constexpr double kIllConditioned = 1e8;

/// Least squares through the pseudo-inverse of A with cutoff 1e-10 sigma_max.
/// Throws DomainError when B has the wrong length.
Reconstruction reconstruct(const DesignSystem& design, const Vector& b);

}  // namespace spincat

#endif  // SPINCAT_TOMOGRAPHY_HPP

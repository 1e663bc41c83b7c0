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

#include "spincat/tomography.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <random>

namespace spincat {

namespace {

double wrap_phase(double x) {
  double r = std::fmod(x, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  // fmod can land on 2 pi after the correction for tiny negative inputs.
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

constexpr double kNutations[] = {0.5 * kPi, 0.25 * kPi};

PhaseCycle zero_order_quad(double theta) {
  PhaseCycle cycle{0, theta, {}};
  const double phis[] = {0.5 * kPi, kPi, 1.5 * kPi, 0.0};
  const double alphas[] = {0.0, 1.5 * kPi, kPi, 0.5 * kPi};
  for (int k = 0; k < 4; ++k) {
    cycle.steps.push_back({theta, phis[k], alphas[k], 0});
  }
  return cycle;
}

PhaseCycle stepped_cycle(const SpinSystem& sys, int order, double theta) {
  const int n = 2 * sys.two_spin() + 1;
  PhaseCycle cycle{order, theta, {}};
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * kPi * k / n;
    cycle.steps.push_back({theta, phi, wrap_phase(-(order + 1) * phi), order});
  }
  return cycle;
}

// Diagonal of the secular quadrupolar Hamiltonian (omega_Q/6)(3 Iz^2 - I^2).
RealVector quadrupolar_energies(const SpinSystem& sys, double omega_q) {
  RealVector e(sys.dim());
  for (int k = 0; k < sys.dim(); ++k) {
    const double m = sys.m(k);
    e(k) = omega_q / 6.0 * (3.0 * m * m - sys.casimir());
  }
  return e;
}

// Independent stream per (pulse, purpose) from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

std::vector<PhaseCycle> phase_cycles(const SpinSystem& sys) {
  std::vector<PhaseCycle> out;
  const int max_order = sys.two_spin();
  // Four steps alias orders that differ by 4, harmless only while 2I < 4.
  const bool use_quad = max_order < 4;
  for (const double theta : kNutations) {
    if (use_quad) {
      out.push_back(zero_order_quad(theta));
    }
    for (int q = -max_order; q <= max_order; ++q) {
      if (q == 0 && use_quad) continue;
      out.push_back(stepped_cycle(sys, q, theta));
    }
  }
  return out;
}

std::vector<TomographyPulse> pulse_set(const SpinSystem& sys) {
  std::vector<TomographyPulse> out;
  for (const PhaseCycle& cycle : phase_cycles(sys)) {
    out.insert(out.end(), cycle.steps.begin(), cycle.steps.end());
  }
  return out;
}

AcquisitionMode parse_acquisition_mode(std::string_view name) {
  if (name == "coherence") return AcquisitionMode::Coherence;
  if (name == "fid") return AcquisitionMode::Fid;
  throw DomainError("unknown acquisition mode '" + std::string(name) + "' (expected coherence or fid)");
}

std::string to_string(AcquisitionMode mode) {
  switch (mode) {
    case AcquisitionMode::Coherence:
      return "coherence";
    case AcquisitionMode::Fid:
      return "fid";
  }
  throw DomainError("unknown acquisition mode");
}

SpectrumLines synthesize_spectrum(const SpinSystem& sys, const DensityMatrix& rho, const TomographyPulse& pulse,
                                  const AcquisitionOptions& options) {
  return synthesize_spectrum(sys, rho.matrix(), pulse, options);
}

SpectrumLines synthesize_spectrum(const SpinSystem& sys, const Matrix& op, const TomographyPulse& pulse,
                                  const AcquisitionOptions& options) {
  const int d = sys.dim();
  if (op.rows() != d || op.cols() != d) {
    throw DomainError("synthesize_spectrum: operator dimension does not match the spin system");
  }
  const Matrix u = pulse_rotation(sys, pulse.theta, pulse.phi);
  const Matrix rotated = u * op * u.adjoint();
  const Matrix& plus = angular_momentum(sys).plus;
  const Complex receiver = std::exp(kI * pulse.alpha);

  SpectrumLines lines;
  lines.frequency_hz.resize(d - 1);
  lines.amplitude.resize(d - 1);
  // Coherence amplitudes rho'(j, j-1) feeding line j-1, the transition m_j <-> m_j + 1.
  std::vector<Complex> coherence(d - 1);
  for (int j = 1; j < d; ++j) {
    lines.frequency_hz[j - 1] = options.nu_q_hz * (sys.m(j) + 0.5);
    coherence[j - 1] = receiver * plus(j - 1, j) * rotated(j, j - 1);
  }

  switch (options.mode) {
    case AcquisitionMode::Coherence:
      lines.amplitude = coherence;
      return lines;
    case AcquisitionMode::Fid:
      break;
    default:
      throw DomainError("synthesize_spectrum: unknown acquisition mode");
  }

  if (options.n_points < 2 || !(options.dwell_s > 0.0) || !(options.nu_q_hz > 0.0)) {
    throw DomainError("synthesize_spectrum: fid mode needs n_points >= 2, dwell > 0 and nu_Q > 0");
  }
  const int n = options.n_points;
  const double omega_q = 2.0 * kPi * (options.nu_q_hz + options.nu_q_offset_hz);
  const RealVector energy = quadrupolar_energies(sys, omega_q);
  const double tau = options.pre_delay();

  // Each coherence rotates at -(E_j - E_{j-1}) and contributes independently.
  std::vector<Complex> fid(n, Complex(0.0));
  for (int j = 1; j < d; ++j) {
    const double omega = -(energy(j) - energy(j - 1));
    const Complex start = coherence[j - 1] * std::exp(kI * (omega * tau));
    const Complex step = std::exp(kI * (omega * options.dwell_s));
    Complex value = start;
    for (int t = 0; t < n; ++t) {
      // Re-anchor periodically so the recurrence does not drift.
      if (t % 256 == 0) value = start * std::exp(kI * (omega * options.dwell_s * t));
      fid[t] += value;
      value *= step;
    }
  }
  if (options.t2_s > 0.0) {
    for (int t = 0; t < n; ++t) {
      fid[t] *= std::exp(-(t * options.dwell_s) / options.t2_s);
    }
  }

  // Causal processing: halve the first point and zero-fill to twice the
  // length, so the transform never sees the jump from the last sample back to
  // the first. Without this an undamped, off-bin line loses up to half its
  // weight to the wrap-around and becomes hypersensitive to its frequency.
  fid[0] *= 0.5;
  fid.resize(2 * static_cast<std::size_t>(n), Complex(0.0));
  const int m = 2 * n;
  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, fid);

  const double width = 1.0 / options.dwell_s;
  const double bin_hz = width / m;
  const double half_region = 0.5 * options.nu_q_hz;
  for (int line = 0; line < d - 1; ++line) {
    Complex total = 0.0;
    for (int k = 0; k < m; ++k) {
      const double f = (k < m / 2 ? k : k - m) * bin_hz;
      double delta = std::fmod(f - lines.frequency_hz[line] + 0.5 * width, width);
      if (delta < 0.0) delta += width;
      delta -= 0.5 * width;
      if (delta >= -half_region && delta < half_region) total += spectrum[k];
    }
    lines.amplitude[line] = total / static_cast<double>(n);
  }
  return lines;
}

SpectrumLines add_line_noise(SpectrumLines lines, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) {
    throw DomainError("add_line_noise: sigma must be non-negative");
  }
  if (sigma == 0.0) return lines;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  for (Complex& a : lines.amplitude) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a += Complex(re, im);
  }
  return lines;
}

Vector acquire(const SpinSystem& sys, const Matrix& op, const std::vector<PhaseCycle>& cycles,
               const AcquisitionOptions& options, const NoiseSettings& noise) {
  const int lines_per = sys.dim() - 1;
  Vector b = Vector::Zero(static_cast<Eigen::Index>(cycles.size()) * lines_per + 1);

  double sigma = 0.0;
  if (noise.relative_sigma > 0.0) {
    double largest = 0.0;
    for (const PhaseCycle& cycle : cycles) {
      for (const TomographyPulse& pulse : cycle.steps) {
        for (const Complex& a : synthesize_spectrum(sys, op, pulse, options).amplitude) {
          largest = std::max(largest, std::abs(a));
        }
      }
    }
    sigma = noise.relative_sigma * largest;
  }

  std::uint64_t pulse_index = 0;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const PhaseCycle& cycle = cycles[c];
    for (const TomographyPulse& pulse : cycle.steps) {
      AcquisitionOptions shot = options;
      if (noise.nu_q_jitter_hz > 0.0) {
        std::mt19937_64 rng(derive_seed(noise.seed, pulse_index, 1));
        shot.nu_q_offset_hz += std::uniform_real_distribution<double>(-noise.nu_q_jitter_hz, noise.nu_q_jitter_hz)(rng);
      }
      SpectrumLines lines = synthesize_spectrum(sys, op, pulse, shot);
      if (sigma > 0.0) {
        lines = add_line_noise(std::move(lines), sigma, derive_seed(noise.seed, pulse_index, 0));
      }
      for (int l = 0; l < lines_per; ++l) {
        b(static_cast<Eigen::Index>(c) * lines_per + l) += lines.amplitude[l];
      }
      ++pulse_index;
    }
    const double inv = 1.0 / static_cast<double>(cycle.steps.size());
    b.segment(static_cast<Eigen::Index>(c) * lines_per, lines_per) *= inv;
  }
  b(b.size() - 1) = op.trace();
  return b;
}

RankDeficientError::RankDeficientError(int rank, int required)
    : std::runtime_error("design matrix is rank deficient: rank " + std::to_string(rank) + " of " +
                         std::to_string(required) + " (deficiency " + std::to_string(required - rank) + ")"),
      rank_(rank),
      required_(required) {}

DesignSystem build_design_matrix(const SpinSystem& sys, const std::vector<PhaseCycle>& cycles,
                                 const AcquisitionOptions& options) {
  const std::vector<TensorComponent> basis = tensor_basis(sys);
  const Eigen::Index rows = static_cast<Eigen::Index>(cycles.size()) * (sys.dim() - 1) + 1;
  Matrix a(rows, static_cast<Eigen::Index>(basis.size()));
  for (const TensorComponent& t : basis) {
    a.col(tensor_index(t.rank, t.order)) = acquire(sys, t.op, cycles, options);
  }

  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector sv = svd.singularValues();
  const double cutoff = 1e-10 * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  const int required = static_cast<int>(basis.size());
  if (rank < required) {
    throw RankDeficientError(rank, required);
  }
  DesignSystem out{sys, cycles, options, std::move(a), sv, sv(0) / sv(sv.size() - 1), rank};
  return out;
}

Reconstruction reconstruct(const DesignSystem& design, const Vector& b) {
  if (b.size() != design.a.rows()) {
    throw DomainError("reconstruct: measurement vector has " + std::to_string(b.size()) + " rows, design has " +
                      std::to_string(design.a.rows()));
  }
  Eigen::JacobiSVD<Matrix> svd(design.a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double cutoff = 1e-10 * sv(0);
  Vector projected = svd.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    projected(i) = sv(i) > cutoff ? projected(i) / sv(i) : Complex(0.0);
  }
  const Vector x = svd.matrixV() * projected;

  const int d = design.sys.dim();
  Matrix raw = Matrix::Zero(d, d);
  for (const TensorComponent& t : tensor_basis(design.sys)) {
    raw += x(tensor_index(t.rank, t.order)) * t.op;
  }
  Matrix herm = hermitian_part(raw);
  const double herm_residual = (raw - herm).norm();

  Reconstruction out{x, raw, DensityMatrix(std::move(herm)), herm_residual, (design.a * x - b).norm(),
                     design.condition_number, {}};
  if (design.condition_number > kIllConditioned) {
    out.warning = "design matrix is ill-conditioned (condition number " + std::to_string(design.condition_number) + ")";
  }
  return out;
}

}  // namespace spincat

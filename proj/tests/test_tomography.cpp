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

#include "gtest/gtest.h"

#include "spincat/dynamics.hpp"
#include "test_support.hpp"

using namespace spincat;

namespace {

Matrix order_filter(const SpinSystem& sys, const Matrix& rho, int order) {
  Matrix out = Matrix::Zero(sys.dim(), sys.dim());
  for (int a = 0; a < sys.dim(); ++a) {
    for (int b = 0; b < sys.dim(); ++b) {
      if (sys.two_m(a) - sys.two_m(b) == 2 * order) out(a, b) = rho(a, b);
    }
  }
  return out;
}

// Line j from the definition: receiver phase times <m| I- rotated |m+1> style product
// computed with a Pade propagator instead of the library rotation.
std::vector<Complex> oracle_lines(const SpinSystem& sys, const Matrix& rho, const TomographyPulse& p) {
  const AngularMomentum o = angular_momentum(sys);
  const Matrix u = support::pade_propagator(std::cos(p.phi) * o.x + std::sin(p.phi) * o.y, p.theta);
  const Matrix r = u * rho * u.adjoint();
  std::vector<Complex> out;
  for (int j = 1; j < sys.dim(); ++j) {
    out.push_back(std::exp(kI * p.alpha) * o.plus(j - 1, j) * r(j, j - 1));
  }
  return out;
}

}  // namespace

TEST(pulse_set, contains_zero_order_quad_verbatim) {
  const SpinSystem sys(1.5);
  const std::vector<PhaseCycle> cycles = phase_cycles(sys);
  const PhaseCycle& quad = cycles.front();
  ASSERT_EQ(quad.order, 0);
  ASSERT_EQ(quad.steps.size(), 4u);
  const double phis[] = {0.5 * kPi, kPi, 1.5 * kPi, 0.0};
  const double alphas[] = {0.0, 1.5 * kPi, kPi, 0.5 * kPi};
  for (int k = 0; k < 4; ++k) {
    ASSERT_DOUBLE_EQ(quad.steps[k].theta, 0.5 * kPi);
    ASSERT_DOUBLE_EQ(quad.steps[k].phi, phis[k]);
    ASSERT_DOUBLE_EQ(quad.steps[k].alpha, alphas[k]);
  }
  for (const TomographyPulse& p : pulse_set(sys)) {
    ASSERT_GE(p.phi, 0.0);
    ASSERT_LT(p.phi, 2.0 * kPi);
    ASSERT_GE(p.alpha, 0.0);
    ASSERT_LT(p.alpha, 2.0 * kPi);
    ASSERT_LE(std::abs(p.target_coherence), 3);
  }
}

TEST(pulse_set, cycling_selects_the_target_order) {
  std::mt19937_64 rng(53);
  for (const int two : {1, 2, 3, 4, 5}) {
    const SpinSystem sys = SpinSystem::from_twice(two);
    const Matrix rho = support::random_hermitian(sys.dim(), rng);
    for (const PhaseCycle& cycle : phase_cycles(sys)) {
      std::vector<Complex> mean(sys.dim() - 1, 0.0);
      for (const TomographyPulse& p : cycle.steps) {
        const SpectrumLines lines = synthesize_spectrum(sys, rho, p);
        for (int l = 0; l < sys.dim() - 1; ++l) mean[l] += lines.amplitude[l] / static_cast<double>(cycle.steps.size());
      }
      const SpectrumLines filtered =
          synthesize_spectrum(sys, order_filter(sys, rho, cycle.order), cycle.steps.front());
      for (int l = 0; l < sys.dim() - 1; ++l) {
        ASSERT_LT(std::abs(mean[l] - filtered.amplitude[l]), 1e-10)
            << "I=" << sys.spin() << " q=" << cycle.order << " theta=" << cycle.theta;
      }
    }
  }
}

TEST(synthesize_spectrum, coherence_mode_matches_oracle) {
  std::mt19937_64 rng(59);
  const SpinSystem sys(2.5);
  const Matrix rho = support::random_hermitian(6, rng);
  for (const TomographyPulse& p : pulse_set(sys)) {
    const SpectrumLines lines = synthesize_spectrum(sys, rho, p);
    const std::vector<Complex> ref = oracle_lines(sys, rho, p);
    for (std::size_t l = 0; l < ref.size(); ++l) ASSERT_LT(std::abs(lines.amplitude[l] - ref[l]), 1e-12);
  }
}

TEST(synthesize_spectrum, identity_gives_no_lines) {
  const SpinSystem sys(1.5);
  for (const TomographyPulse& p : pulse_set(sys)) {
    for (const Complex& a : synthesize_spectrum(sys, DensityMatrix(Matrix::Identity(4, 4) / 4.0), p).amplitude) {
      ASSERT_LT(std::abs(a), 1e-15);
    }
  }
}

TEST(synthesize_spectrum, thermal_lines_three_four_three) {
  const SpinSystem sys(1.5);
  AcquisitionOptions options;
  options.nu_q_hz = 15220.0;
  const SpectrumLines lines = synthesize_spectrum(sys, DensityMatrix(angular_momentum(sys).z), {0.5 * kPi, 0.0, 0.0, 0},
                                                  options);
  ASSERT_EQ(lines.size(), 3u);
  ASSERT_NEAR(lines.frequency_hz[0], 15220.0, 1e-9);
  ASSERT_NEAR(lines.frequency_hz[1], 0.0, 1e-9);
  ASSERT_NEAR(lines.frequency_hz[2], -15220.0, 1e-9);
  const double a0 = std::abs(lines.amplitude[0]);
  ASSERT_NEAR(std::abs(lines.amplitude[1]) / a0, 4.0 / 3.0, 1e-12);
  ASSERT_NEAR(std::abs(lines.amplitude[2]) / a0, 1.0, 1e-12);
}

TEST(synthesize_spectrum, fid_mode_defaults_and_line_recovery) {
  AcquisitionOptions defaults;
  ASSERT_EQ(defaults.n_points, 4096);
  ASSERT_DOUBLE_EQ(defaults.dwell_s, 12e-6);
  ASSERT_NEAR(2.0 * defaults.spectral_half_width(), 83333.3, 0.1);
  ASSERT_NEAR(defaults.spectral_half_width(), 41666.7, 0.1);

  // A single coherence with no pulse: the fid line region recovers the
  // coherence amplitude, neighbours only see its dispersive tail, and a small
  // coupling error barely moves anything.
  const SpinSystem sys(1.5);
  for (int j = 1; j < 4; ++j) {
    Matrix op = Matrix::Zero(4, 4);
    op(j, j - 1) = Complex(0.3, -0.2);
    const TomographyPulse none{0.0, 0.0, 0.0, 0};
    AcquisitionOptions fid;
    fid.mode = AcquisitionMode::Fid;
    const SpectrumLines coherent = synthesize_spectrum(sys, op, none);
    const SpectrumLines a = synthesize_spectrum(sys, op, none, fid);
    const double scale = std::abs(coherent.amplitude[j - 1]);
    ASSERT_LT(std::abs(a.amplitude[j - 1] - coherent.amplitude[j - 1]), 2e-3 * scale) << "line " << j - 1;
    for (int l = 0; l < 3; ++l) {
      if (l != j - 1) {
        ASSERT_LT(std::abs(a.amplitude[l]), 0.5 * scale);
      }
    }
    fid.nu_q_offset_hz = 10.0;
    const SpectrumLines shifted = synthesize_spectrum(sys, op, none, fid);
    for (int l = 0; l < 3; ++l) ASSERT_LT(std::abs(shifted.amplitude[l] - a.amplitude[l]), 5e-3 * scale);
  }
}

TEST(synthesize_spectrum, unknown_mode_and_dimension_errors) {
  const SpinSystem sys(1.5);
  AcquisitionOptions bad;
  bad.mode = static_cast<AcquisitionMode>(7);
  ASSERT_THROW(synthesize_spectrum(sys, Matrix::Identity(4, 4), {}, bad), DomainError);
  ASSERT_THROW(synthesize_spectrum(sys, Matrix::Identity(3, 3), {}), DomainError);
  ASSERT_THROW(parse_acquisition_mode("echo"), DomainError);
  ASSERT_EQ(parse_acquisition_mode("fid"), AcquisitionMode::Fid);
  ASSERT_EQ(to_string(AcquisitionMode::Coherence), "coherence");
}

TEST(add_line_noise, determinism_and_identity) {
  SpectrumLines lines{{1.0, 0.0, -1.0}, {Complex(1.0, 0.0), Complex(0.0, 2.0), Complex(-1.0, 0.5)}};
  const SpectrumLines same = add_line_noise(lines, 0.0, 5);
  ASSERT_EQ(same.amplitude, lines.amplitude);
  const SpectrumLines a = add_line_noise(lines, 0.1, 99);
  const SpectrumLines b = add_line_noise(lines, 0.1, 99);
  const SpectrumLines c = add_line_noise(lines, 0.1, 100);
  ASSERT_EQ(a.amplitude, b.amplitude);
  ASSERT_NE(a.amplitude, c.amplitude);
  ASSERT_EQ(a.frequency_hz, lines.frequency_hz);
  ASSERT_THROW(add_line_noise(lines, -1.0, 1), DomainError);
}

TEST(design_matrix, full_rank_and_well_conditioned) {
  for (const int two : {1, 2, 3, 4, 5, 6}) {
    const SpinSystem sys = SpinSystem::from_twice(two);
    const DesignSystem design = build_design_matrix(sys, phase_cycles(sys));
    ASSERT_EQ(design.rank, sys.dim() * sys.dim());
    if (two == 3) {
      ASSERT_LT(design.condition_number, 1e3);
    }
    // T_00 is proportional to the identity: no line, only the trace row.
    const auto col = design.a.col(tensor_index(0, 0));
    ASSERT_LT(col.head(col.size() - 1).cwiseAbs().maxCoeff(), 1e-14);
    ASSERT_NEAR(col(col.size() - 1).real(), std::sqrt(static_cast<double>(sys.dim())), 1e-12);
  }
}

TEST(design_matrix, rank_deficiency_is_reported) {
  const SpinSystem sys(1.5);
  std::vector<PhaseCycle> cycles = phase_cycles(sys);
  cycles.resize(3);
  try {
    build_design_matrix(sys, cycles);
    FAIL() << "expected RankDeficientError";
  } catch (const RankDeficientError& e) {
    ASSERT_EQ(e.required(), 16);
    ASSERT_GT(e.deficiency(), 0);
    ASSERT_EQ(e.rank() + e.deficiency(), 16);
  }
}

TEST(acquire, linear_in_rho) {
  std::mt19937_64 rng(67);
  const SpinSystem sys(1.5);
  const auto cycles = phase_cycles(sys);
  const Matrix a = support::random_hermitian(4, rng);
  const Matrix b = support::random_hermitian(4, rng);
  const Vector ba = acquire(sys, a, cycles);
  const Vector bb = acquire(sys, b, cycles);
  ASSERT_LT((acquire(sys, a + b, cycles) - ba - bb).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(reconstruct, noise_free_round_trip_both_modes) {
  std::mt19937_64 rng(71);
  for (const AcquisitionMode mode : {AcquisitionMode::Coherence, AcquisitionMode::Fid}) {
    const SpinSystem sys(1.5);
    AcquisitionOptions options;
    options.mode = mode;
    const auto cycles = phase_cycles(sys);
    const DesignSystem design = build_design_matrix(sys, cycles, options);
    const DensityMatrix coherent = DensityMatrix::pure(coherent_state(sys, {0.5 * kPi, 0.0}));
    const Reconstruction rec = reconstruct(design, acquire(sys, coherent.matrix(), cycles, options));
    ASSERT_LT((rec.hermitized.matrix() - coherent.matrix()).norm(), 1e-8);
    ASSERT_LT(rec.hermitian_residual, 1e-10);
    ASSERT_TRUE(rec.warning.empty());
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix dev = support::random_hermitian(4, rng);
      const Reconstruction r = reconstruct(design, acquire(sys, dev, cycles, options));
      ASSERT_LT((r.hermitized.matrix() - dev).norm(), 1e-8);
    }
  }
}

TEST(reconstruct, linear_and_length_checked) {
  std::mt19937_64 rng(73);
  const SpinSystem sys(1.5);
  const auto cycles = phase_cycles(sys);
  const DesignSystem design = build_design_matrix(sys, cycles);
  const Vector b1 = acquire(sys, support::random_hermitian(4, rng), cycles);
  const Vector b2 = acquire(sys, support::random_hermitian(4, rng), cycles);
  const Reconstruction r12 = reconstruct(design, b1 + b2);
  const Reconstruction r1 = reconstruct(design, b1);
  const Reconstruction r2 = reconstruct(design, b2);
  ASSERT_LT(max_abs(r12.raw - r1.raw - r2.raw), 1e-10);
  ASSERT_THROW(reconstruct(design, Vector::Zero(5)), DomainError);
}

TEST(reconstruct, receiver_offset_is_absorbed_by_the_design) {
  const SpinSystem sys(1.5);
  std::vector<PhaseCycle> shifted = phase_cycles(sys);
  for (PhaseCycle& c : shifted) {
    for (TomographyPulse& p : c.steps) p.alpha = std::fmod(p.alpha + 1.1, 2.0 * kPi);
  }
  const DensityMatrix target = DensityMatrix::pure(cat_state(sys, {0.5 * kPi, 0.0}, 1));
  const auto base_cycles = phase_cycles(sys);
  const Reconstruction base =
      reconstruct(build_design_matrix(sys, base_cycles), acquire(sys, target.matrix(), base_cycles));
  const Reconstruction moved = reconstruct(build_design_matrix(sys, shifted), acquire(sys, target.matrix(), shifted));
  ASSERT_LT(max_abs(base.hermitized.matrix() - moved.hermitized.matrix()), 1e-10);
  ASSERT_GE(fidelity(moved.hermitized, target), 1.0 - 1e-10);
}

TEST(acquire, noise_and_jitter_are_seeded) {
  const SpinSystem sys(1.5);
  const auto cycles = phase_cycles(sys);
  const Matrix rho = DensityMatrix::pure(coherent_state(sys, {0.5 * kPi, 0.0})).matrix();
  AcquisitionOptions fid;
  fid.mode = AcquisitionMode::Fid;
  const NoiseSettings noise{0.01, 70.0, 12};
  ASSERT_EQ(acquire(sys, rho, cycles, fid, noise), acquire(sys, rho, cycles, fid, noise));
  const NoiseSettings other{0.01, 70.0, 13};
  ASSERT_NE(acquire(sys, rho, cycles, fid, noise), acquire(sys, rho, cycles, fid, other));
  // Jitter alone keeps the reconstruction close: 70 Hz over 1/nu_Q is a small phase.
  const DesignSystem design = build_design_matrix(sys, cycles, fid);
  const Reconstruction rec = reconstruct(design, acquire(sys, rho, cycles, fid, {0.0, 70.0, 1}));
  ASSERT_GT(fidelity(rec.hermitized, DensityMatrix(rho)), 0.999);
}

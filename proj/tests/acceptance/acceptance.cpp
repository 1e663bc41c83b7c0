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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "spincat/dynamics.hpp"
#include "spincat/smp.hpp"
#include "spincat/spin_ops.hpp"
#include "spincat/states.hpp"
#include "spincat/tomography.hpp"
#include "spincat/wigner.hpp"
#include "test_support.hpp"

using namespace spincat;

namespace {

constexpr double kNuQ = 15220.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

Matrix traceless(const Matrix& m) {
  const Eigen::Index d = m.rows();
  return m - (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
}

const SpinSystem kSpins[] = {SpinSystem(1), SpinSystem(1.5), SpinSystem(2), SpinSystem(2.5), SpinSystem(3)};

Outcome criterion1() {
  Outcome out;
  double worst = 0.0;
  for (const SpinSystem& sys : kSpins) {
    for (const int p : {0, 1}) {
      for (const double phi : {0.0, kPi / 3.0}) {
        const CoherentParams start{0.5 * kPi, phi};
        const StateVector evolved =
            evolve(coherent_state(sys, start), effective_hamiltonian(sys, omega_from_hz(kNuQ), p), cat_time(kNuQ));
        worst = std::max(worst, distance_up_to_phase(evolved, cat_state(sys, start, p)));
      }
    }
  }
  out.require(worst < 1e-9, "distance below 1e-9");
  out.note("max distance " + fmt("%.2e", worst));
  return out;
}

Outcome criterion2() {
  Outcome out;
  const SpinSystem sys(1.5);
  const CoherentParams start{0.5 * kPi, 0.0};
  const DensityMatrix initial = DensityMatrix::pure(coherent_state(sys, start));
  const double multiples[] = {2.0, 4.0};
  const auto p1 = free_evolution_schedule(sys, 1, kNuQ, multiples);
  const auto p0 = free_evolution_schedule(sys, 0, kNuQ, multiples);
  const double f_flip = fidelity(p1[0], DensityMatrix::pure(coherent_state(sys, {0.5 * kPi, kPi})));
  const double f_back = fidelity(p1[1], initial);
  const double f_p0 = fidelity(p0[0], initial);
  const double worst = std::min({f_flip, f_back, f_p0});
  out.require(worst >= 1.0 - 1e-10, "fidelity at least 1 - 1e-10");
  out.note("min fidelity 1 - " + fmt("%.1e", 1.0 - worst));
  return out;
}

Outcome criterion3() {
  Outcome out;
  const SpinSystem sys(1.5);
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const WignerGrid grid = wigner_function(sys, support::random_density(4, rng));
    worst = std::max(worst, std::abs(integrate_sphere(grid) - 1.0));
  }
  out.require(worst < 1e-6, "integral within 1e-6");
  out.note("max |int W - 1| " + fmt("%.1e", worst));

  const WignerGrid coh = wigner_function(sys, DensityMatrix::pure(coherent_state(sys, {0.5 * kPi, 0.0})));
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  coh.values.maxCoeff(&row, &col);
  // One cell: the neighbouring node spacing in each direction.
  const Eigen::Index n_theta = coh.theta.size();
  Eigen::Index nearest = 0;
  for (Eigen::Index r = 0; r < n_theta; ++r) {
    if (std::abs(coh.theta(r) - 0.5 * kPi) < std::abs(coh.theta(nearest) - 0.5 * kPi)) nearest = r;
  }
  const bool theta_ok = std::abs(row - nearest) <= 1;
  const Eigen::Index n_phi = coh.phi.size();
  const bool phi_ok = col <= 1 || col >= n_phi - 1;
  out.require(theta_ok && phi_ok, "coherent argmax within one cell of (pi/2, 0)");
  out.note("coherent argmax (" + fmt("%.4f", coh.theta(row)) + ", " + fmt("%.4f", coh.phi(col)) + ")");

  const TensorExpansion cat = tensor_expectations(sys, DensityMatrix::pure(cat_state(sys, {0.5 * kPi, 0.0}, 1)));
  const auto [minima, maxima] = count_periodic_extrema(equatorial_scan(cat, 720));
  out.require(minima == 3 && maxima == 3, "cat equatorial scan has 3 minima and 3 maxima");
  out.note("cat scan " + std::to_string(minima) + " minima " + std::to_string(maxima) + " maxima");
  return out;
}

Outcome criterion4() {
  Outcome out;
  const SpinSystem sys(1.5);
  const auto cycles = phase_cycles(sys);
  const DesignSystem design = build_design_matrix(sys, cycles);
  std::mt19937_64 rng(4);
  double worst_clean = 1.0;
  std::vector<double> noisy;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix target = DensityMatrix::pure(support::random_state(4, rng));
    const Reconstruction clean = reconstruct(design, acquire(sys, target.matrix(), cycles));
    worst_clean = std::min(worst_clean, fidelity(clean.hermitized, target));
    const NoiseSettings noise{0.01, 0.0, static_cast<std::uint64_t>(1000 + trial)};
    const Reconstruction rec = reconstruct(design, acquire(sys, target.matrix(), cycles, {}, noise));
    noisy.push_back(fidelity(rec.hermitized, target));
  }
  std::sort(noisy.begin(), noisy.end());
  const double median = 0.5 * (noisy[49] + noisy[50]);
  const double p5 = noisy[4];
  out.require(worst_clean >= 1.0 - 1e-8, "noise-free fidelity at least 1 - 1e-8");
  out.require(median >= 0.98, "noisy median at least 0.98");
  out.require(p5 >= 0.96, "noisy 5th percentile at least 0.96");
  out.note("clean min 1 - " + fmt("%.1e", 1.0 - worst_clean) + ", noisy median " + fmt("%.4f", median) +
           ", p5 " + fmt("%.4f", p5) + ", cond " + fmt("%.2f", design.condition_number));
  return out;
}

Outcome criterion5() {
  Outcome out;
  const double wq = omega_from_hz(kNuQ);
  // With omega_L = 0 the detuning omega_L - omega_RF is exact. At a realistic
  // Larmor frequency omega_RF itself is rounded, which sets a floor of
  // ulp(omega_L) / 2 * I on the diagonal.
  const double larmor = 2.0 * kPi * 105.8e6;
  double worst_exact = 0.0;
  double worst_lab = 0.0;
  double lab_floor = 0.0;
  double worst_atom = 0.0;
  for (const SpinSystem& sys : kSpins) {
    for (const int p : {-1, 0, 1, 2, 3}) {
      const Matrix eff = effective_hamiltonian(sys, wq, p);
      // Elementwise, in units of omega_Q.
      worst_exact = std::max(worst_exact, max_abs(nmr_hamiltonian(sys, resonant_params(0.0, wq, p)) - eff) / wq);
      worst_lab = std::max(worst_lab, max_abs(nmr_hamiltonian(sys, resonant_params(larmor, wq, p)) - eff) / wq);
      const double ulp = std::nextafter(larmor, 2.0 * larmor) - larmor;
      // Half an ulp from rounding omega_RF plus half from the final sum.
      lab_floor = std::max(lab_floor, ulp * sys.spin() / wq);
      // The two forms have opposite sign; normalize and compare traceless
      // parts. A mean photon number needs p >= 1.
      if (p >= 1) {
        const Matrix atom = atom_field_hamiltonian(sys, 0.5 * wq, nbar_from_p(p));
        worst_atom = std::max(worst_atom, max_abs(traceless(eff + atom)) / wq);
      }
    }
  }
  out.require(worst_exact < 1e-12, "nmr equals effective elementwise");
  out.require(worst_lab <= lab_floor, "realistic Larmor frequency within its rounding floor");
  out.require(worst_atom < 1e-12, "effective and atom-field agree up to sign and offset");
  out.note("max |H_nmr - H_eff| / w_Q " + fmt("%.1e", worst_exact) + " (at 105.8 MHz " + fmt("%.1e", worst_lab) +
           ", rounding floor " + fmt("%.1e", lab_floor) + "), atom-field " + fmt("%.1e", worst_atom));
  return out;
}

Outcome criterion6() {
  Outcome out;
  const double t_s_us = cat_time(kNuQ) * 1e6;
  out.require(std::abs(t_s_us - 32.85) <= 0.01, "t_S = 32.85 us");
  out.require(kNa23Epsilon == 0.426e-5, "epsilon = 0.426e-5");
  const SpinSystem sys(1.5);
  AcquisitionOptions options;
  options.nu_q_hz = kNuQ;
  const SpectrumLines lines =
      synthesize_spectrum(sys, DensityMatrix(thermal_density(sys, kNa23Epsilon).deviation), TomographyPulse{}, options);
  std::vector<double> f = lines.frequency_hz;
  std::sort(f.begin(), f.end());
  out.require(lines.size() == 3, "three lines");
  out.require(f.size() == 3 && std::abs(f[0] + kNuQ) < 1e-9 && std::abs(f[1]) < 1e-9 && std::abs(f[2] - kNuQ) < 1e-9,
              "satellites at +-15220 Hz");
  out.note("t_S " + fmt("%.4f", t_s_us) + " us, " + std::to_string(lines.size()) + " lines at " + fmt("%.1f", f[0]) +
           ", " + fmt("%.1f", f[1]) + ", " + fmt("%.1f", f[2]) + " Hz");
  return out;
}

Outcome criterion7() {
  Outcome out;
  const SpinSystem sys(1.5);
  NmrParams params;
  params.omega_q = omega_from_hz(kNuQ);
  const StateVector target = coherent_state(sys, {0.5 * kPi, 0.0});
  const SmpResult result = optimize_smp(sys, params, target, 20, 0.5e-6);
  out.require(result.fidelity >= 0.99, "SMP fidelity at least 0.99");
  out.note("SMP fidelity " + fmt("%.6f", result.fidelity) + " after " + std::to_string(result.evaluations) +
           " evaluations");

  // Central differences on a generic point of the landscape.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  PulseSequence seq;
  for (int k = 0; k < 20; ++k) seq.segments.push_back({2.0 * kPi * 50e3 * u(rng), 2.0 * kPi * u(rng), 0.5e-6});
  const DensityMatrix rho0 = zeeman_pseudo_pure(sys);
  const DensityMatrix goal = DensityMatrix::pure(target);
  const FidelityGradient g = fidelity_gradient(sys, rho0, goal, seq, params);
  auto f = [&](const PulseSequence& s) { return fidelity(simulate_sequence(sys, rho0, s, params), goal); };
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < seq.segments.size(); ++k) {
    PulseSequence up = seq;
    PulseSequence down = seq;
    up.segments[k].omega += 1.0;
    down.segments[k].omega -= 1.0;
    const double fd = 0.5 * (f(up) - f(down));
    worst = std::max(worst, std::abs(g.d_omega[k] - fd));
    scale = std::max(scale, std::abs(fd));
  }
  const double rel = worst / scale;
  out.require(rel < 1e-5, "gradient within 1e-5 relative of finite differences");
  out.note("gradient rel err " + fmt("%.1e", rel));
  return out;
}

Outcome criterion8() {
  Outcome out;
  std::mt19937_64 rng(8);
  double commutator = 0.0;
  double casimir = 0.0;
  double completeness = 0.0;
  double unitarity = 0.0;
  double imag = 0.0;
  double covariance = 0.0;
  double selectivity = 0.0;
  for (const SpinSystem& sys : kSpins) {
    const int d = sys.dim();
    const AngularMomentum o = angular_momentum(sys);
    commutator = std::max(commutator, max_abs(o.x * o.y - o.y * o.x - kI * o.z));
    casimir = std::max(casimir, max_abs(o.sq - sys.spin() * (sys.spin() + 1.0) * Matrix::Identity(d, d)));

    // Sum_KQ T_KQ X T_KQ^dagger = Tr(X) 1 for a complete orthonormal basis.
    const Matrix x = support::random_matrix(d, rng);
    Matrix acc = Matrix::Zero(d, d);
    for (const TensorComponent& t : tensor_basis(sys)) acc += t.op * x * t.op.adjoint();
    completeness = std::max(completeness, max_abs(acc - x.trace() * Matrix::Identity(d, d)));

    const Matrix h = support::random_hermitian(d, rng);
    const Matrix u = expm_hermitian(h, 0.7);
    unitarity = std::max(unitarity, max_abs(u * u.adjoint() - Matrix::Identity(d, d)));

    const DensityMatrix rho = support::random_density(d, rng);
    const WignerGrid grid = wigner_function(sys, rho, {32, 64});
    imag = std::max(imag, grid.max_imag_residue);

    const double a = 0.4, b = 1.1, c = -0.6;
    const Matrix r = rotation_operator(sys, a, b, c);
    const TensorExpansion e0 = tensor_expectations(sys, rho);
    const TensorExpansion e1 = tensor_expectations(sys, DensityMatrix(hermitian_part(r * rho.matrix() * r.adjoint())));
    const Eigen::Matrix3d rot = (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) *
                                 Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
                                 Eigen::AngleAxisd(c, Eigen::Vector3d::UnitZ()))
                                    .toRotationMatrix();
    for (int k = 0; k < 8; ++k) {
      const double th = 0.3 + 0.3 * k;
      const double ph = 0.8 * k;
      const Eigen::Vector3d n(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      const Eigen::Vector3d m = rot.transpose() * n;
      const double th0 = std::acos(std::clamp(m.z(), -1.0, 1.0));
      const double ph0 = std::atan2(m.y(), m.x());
      covariance = std::max(covariance, std::abs(wigner_value(e1, th, ph) - wigner_value(e0, th0, ph0)));
    }

    const Matrix op = support::random_hermitian(d, rng);
    for (const PhaseCycle& cycle : phase_cycles(sys)) {
      Matrix filtered = Matrix::Zero(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          if (sys.two_m(i) - sys.two_m(j) == 2 * cycle.order) filtered(i, j) = op(i, j);
        }
      }
      const SpectrumLines ref = synthesize_spectrum(sys, filtered, cycle.steps.front());
      std::vector<Complex> mean(d - 1, 0.0);
      for (const TomographyPulse& p : cycle.steps) {
        const SpectrumLines l = synthesize_spectrum(sys, op, p);
        for (int j = 0; j < d - 1; ++j) mean[j] += l.amplitude[j] / static_cast<double>(cycle.steps.size());
      }
      for (int j = 0; j < d - 1; ++j) selectivity = std::max(selectivity, std::abs(mean[j] - ref.amplitude[j]));
    }
  }
  out.require(commutator < 1e-12, "[Ix, Iy] = i Iz");
  out.require(casimir < 1e-12, "I^2 = I(I+1)");
  out.require(completeness < 1e-12, "tensor completeness");
  out.require(unitarity < 1e-12, "propagator unitarity");
  out.require(imag < 1e-12, "Wigner reality");
  out.require(covariance < 1e-10, "Wigner rotational covariance");
  out.require(selectivity < 1e-10, "phase-cycling selectivity");
  out.note("max residues: comm " + fmt("%.0e", commutator) + ", casimir " + fmt("%.0e", casimir) + ", complete " +
           fmt("%.0e", completeness) + ", unitary " + fmt("%.0e", unitarity) + ", imag W " + fmt("%.0e", imag) +
           ", covariance " + fmt("%.0e", covariance) + ", selectivity " + fmt("%.0e", selectivity));
  return out;
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "analytic cat equivalence", 1.0, criterion1},
      {2, "schedule periodicity", 1.0, criterion2},
      {3, "Wigner normalization and signature", 10.0, criterion3},
      {4, "tomography round trip", 30.0, criterion4},
      {5, "Hamiltonian identity", 1.0, criterion5},
      {6, "numeric constants", 1.0, criterion6},
      {7, "SMP optimizer", 60.0, criterion7},
      {8, "property suites", 120.0, criterion8},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.note(std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.limit_s) {
      out.pass = false;
      out.note("runtime over " + fmt("%.0f", c.limit_s) + " s");
    }
    std::printf("%s criterion %d: %s (%.3f s) %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title, elapsed,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

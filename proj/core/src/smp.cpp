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

#include "spincat/smp.hpp"

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace spincat {

namespace {

void check_segment(const PulseSegment& s) {
  if (!(s.omega >= 0.0) || !std::isfinite(s.omega)) {
    throw DomainError("pulse segment amplitude must be finite and non-negative");
  }
  if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
    throw DomainError("pulse segment duration must be positive");
  }
}

Matrix segment_hamiltonian(const SpinSystem& sys, const NmrParams& params, const PulseSegment& s) {
  NmrParams local = params;
  local.omega_1 = s.omega;
  local.rf_phase = s.phase;
  return nmr_hamiltonian(sys, local);
}

// sin(x)/x, finite at 0.
double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// Propagator of one segment together with the tools for its directional
// derivative d/dx exp(-i H t) = W (G o (W^dagger dH W)) W^dagger.
struct SegmentPropagator {
  Matrix u;
  Matrix w;
  Matrix g;

  SegmentPropagator(const Matrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
    const RealVector& lambda = solver.eigenvalues();
    w = solver.eigenvectors();
    const Eigen::Index d = lambda.size();
    Vector phases(d);
    for (Eigen::Index a = 0; a < d; ++a) phases(a) = std::exp(-kI * (lambda(a) * t));
    u = w * phases.asDiagonal() * w.adjoint();
    g.resize(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        const double mean = 0.5 * (lambda(a) + lambda(b));
        const double half_gap = 0.5 * (lambda(a) - lambda(b)) * t;
        g(a, b) = -kI * t * std::exp(-kI * (mean * t)) * sinc(half_gap);
      }
    }
  }

  Matrix derivative(const Matrix& dh) const { return w * g.cwiseProduct(w.adjoint() * dh * w) * w.adjoint(); }
};

double norm_factor(const DensityMatrix& rho0, const DensityMatrix& target) {
  const double a = rho0.matrix().squaredNorm();
  const double b = target.matrix().squaredNorm();
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("fidelity: zero-norm input");
  }
  return 1.0 / std::sqrt(a * b);
}

// Polar angle of the Bloch vector, usable as a rotation budget for physical states.
double polar_angle(const SpinSystem& sys, const DensityMatrix& rho) {
  const double z = bloch_vector(sys, rho)[2] / sys.spin();
  return std::acos(std::clamp(z, -1.0, 1.0));
}

struct Problem {
  const SpinSystem* sys;
  const NmrParams* params;
  const DensityMatrix* rho0;
  const DensityMatrix* target;
  int n;
  double delta_t;
  double cap;
  int evaluations = 0;
  double best = -1.0;
  std::vector<double> best_x;
  std::vector<double> history;

  PulseSequence decode(const gsl_vector* x) const {
    PulseSequence seq;
    seq.segments.resize(n);
    for (int k = 0; k < n; ++k) {
      const double s = std::sin(gsl_vector_get(x, k));
      seq.segments[k] = {cap * s * s, gsl_vector_get(x, n + k), delta_t};
    }
    return seq;
  }

  // Returns -F and fills the gradient in the reparametrized coordinates.
  double evaluate(const gsl_vector* x, gsl_vector* grad) {
    const PulseSequence seq = decode(x);
    const FidelityGradient fg = fidelity_gradient(*sys, *rho0, *target, seq, *params);
    ++evaluations;
    if (fg.fidelity > best) {
      best = fg.fidelity;
      best_x.resize(2 * n);
      for (int i = 0; i < 2 * n; ++i) best_x[i] = gsl_vector_get(x, i);
    }
    history.push_back(best);
    if (grad != nullptr) {
      for (int k = 0; k < n; ++k) {
        const double s = gsl_vector_get(x, k);
        gsl_vector_set(grad, k, -fg.d_omega[k] * cap * std::sin(2.0 * s));
        gsl_vector_set(grad, n + k, -fg.d_phase[k]);
      }
    }
    return -fg.fidelity;
  }

  static double f(const gsl_vector* x, void* self) { return static_cast<Problem*>(self)->evaluate(x, nullptr); }
  static void df(const gsl_vector* x, void* self, gsl_vector* g) { static_cast<Problem*>(self)->evaluate(x, g); }
  static void fdf(const gsl_vector* x, void* self, double* value, gsl_vector* g) {
    *value = static_cast<Problem*>(self)->evaluate(x, g);
  }
};

}  // namespace

double PulseSequence::total_duration() const {
  double total = 0.0;
  for (const PulseSegment& s : segments) total += s.duration;
  return total;
}

Matrix sequence_propagator(const SpinSystem& sys, const PulseSequence& seq, const NmrParams& params) {
  Matrix u = Matrix::Identity(sys.dim(), sys.dim());
  for (const PulseSegment& s : seq.segments) {
    check_segment(s);
    u = expm_hermitian(segment_hamiltonian(sys, params, s), s.duration) * u;
  }
  return u;
}

DensityMatrix simulate_sequence(const SpinSystem& sys, const DensityMatrix& rho0, const PulseSequence& seq,
                                const NmrParams& params) {
  if (rho0.dim() != sys.dim()) {
    throw DomainError("simulate_sequence: density matrix dimension does not match the spin system");
  }
  const Matrix u = sequence_propagator(sys, seq, params);
  return DensityMatrix(hermitian_part(u * rho0.matrix() * u.adjoint()));
}

FidelityGradient fidelity_gradient(const SpinSystem& sys, const DensityMatrix& rho0, const DensityMatrix& target,
                                   const PulseSequence& seq, const NmrParams& params) {
  if (rho0.dim() != sys.dim() || target.dim() != sys.dim()) {
    throw DomainError("fidelity_gradient: dimension mismatch");
  }
  const AngularMomentum ops = angular_momentum(sys);
  const std::size_t n = seq.segments.size();
  std::vector<SegmentPropagator> props;
  props.reserve(n);
  for (const PulseSegment& s : seq.segments) {
    check_segment(s);
    props.emplace_back(segment_hamiltonian(sys, params, s), s.duration);
  }

  // forward[k] is rho after k segments.
  std::vector<Matrix> forward(n + 1);
  forward[0] = rho0.matrix();
  for (std::size_t k = 0; k < n; ++k) {
    forward[k + 1] = props[k].u * forward[k] * props[k].u.adjoint();
  }

  const double scale = norm_factor(rho0, target);
  const double overlap = frobenius_inner(target.matrix(), forward[n]).real();
  const double sign = overlap < 0.0 ? -1.0 : 1.0;

  FidelityGradient out;
  out.fidelity = std::min(std::abs(overlap) * scale, 1.0);
  out.d_omega.assign(n, 0.0);
  out.d_phase.assign(n, 0.0);

  // backward holds U_{k+1}^dagger ... U_n^dagger P U_n ... U_{k+1}, walked from the end.
  Matrix backward = target.matrix();
  for (std::size_t idx = n; idx-- > 0;) {
    const PulseSegment& s = seq.segments[idx];
    const Matrix dh_omega = std::cos(s.phase) * ops.x + std::sin(s.phase) * ops.y;
    const Matrix dh_phase = s.omega * (-std::sin(s.phase) * ops.x + std::cos(s.phase) * ops.y);
    const Matrix tail = forward[idx] * props[idx].u.adjoint() * backward;
    // d Tr(U rho U^dagger P) = 2 Re Tr(dU rho U^dagger P).
    out.d_omega[idx] = sign * scale * 2.0 * (props[idx].derivative(dh_omega) * tail).trace().real();
    out.d_phase[idx] = sign * scale * 2.0 * (props[idx].derivative(dh_phase) * tail).trace().real();
    backward = props[idx].u.adjoint() * backward * props[idx].u;
  }
  return out;
}

SmpResult optimize_smp(const SpinSystem& sys, const NmrParams& params, const StateVector& target, int n,
                       double delta_t, const SmpOptions& options) {
  if (n < 1 || !(delta_t > 0.0)) {
    throw DomainError("optimize_smp: need n >= 1 segments of positive duration");
  }
  if (target.dim() != sys.dim()) {
    throw DomainError("optimize_smp: target dimension does not match the spin system");
  }
  const double cap = options.amplitude_cap;
  if (!(cap > 0.0) || !std::isfinite(cap)) {
    throw InfeasibleError("optimize_smp: amplitude cap must be positive and finite");
  }
  const DensityMatrix rho0 = options.initial.value_or(zeeman_pseudo_pure(sys));
  const DensityMatrix goal = DensityMatrix::pure(target);
  if (rho0.is_physical()) {
    // The Bloch polar angle moves no faster than the RF amplitude.
    const double needed = std::abs(polar_angle(sys, goal) - polar_angle(sys, rho0));
    if (cap * n * delta_t < needed - 1e-12) {
      throw InfeasibleError("optimize_smp: amplitude cap allows a nutation of " + std::to_string(cap * n * delta_t) +
                            " rad but the target needs " + std::to_string(needed) + " rad");
    }
  }

  Problem problem{&sys, &params, &rho0, &goal, n, delta_t, cap, 0, -1.0, {}, {}};
  const std::size_t dim = static_cast<std::size_t>(2 * n);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(dim), &gsl_vector_free);
  std::unique_ptr<gsl_multimin_fdfminimizer, decltype(&gsl_multimin_fdfminimizer_free)> minimizer(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, dim), &gsl_multimin_fdfminimizer_free);
  gsl_multimin_function_fdf fn{&Problem::f, &Problem::df, &Problem::fdf, dim, &problem};

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  auto draw_start = [&]() {
    for (int k = 0; k < n; ++k) {
      gsl_vector_set(x.get(), k, std::asin(std::sqrt(std::uniform_real_distribution<double>(0.0, 1.0)(rng))));
      gsl_vector_set(x.get(), n + k, angle(rng));
    }
  };

  if (options.budget <= 0) {
    draw_start();
    problem.evaluate(x.get(), nullptr);
  }
  for (int start = 0; start < options.starts && problem.evaluations < options.budget; ++start) {
    draw_start();
    gsl_multimin_fdfminimizer_set(minimizer.get(), &fn, x.get(), 0.05, 0.1);
    for (int iter = 0; iter < 2000 && problem.evaluations < options.budget; ++iter) {
      if (gsl_multimin_fdfminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
      if (-minimizer->f >= options.target_fidelity) break;
      if (gsl_multimin_test_gradient(minimizer->gradient, 1e-10) == GSL_SUCCESS) break;
    }
    if (problem.best >= options.target_fidelity) break;
  }

  SmpResult result;
  for (int i = 0; i < 2 * n; ++i) gsl_vector_set(x.get(), i, problem.best_x[i]);
  result.sequence = problem.decode(x.get());
  result.fidelity = problem.best;
  result.sequence.fidelity = problem.best;
  result.evaluations = problem.evaluations;
  result.history = std::move(problem.history);
  return result;
}

DensityMatrix temporal_average(const SpinSystem& sys, const std::vector<PulseSequence>& variants,
                               const DensityMatrix& rho0, const NmrParams& params) {
  if (variants.empty()) {
    throw DomainError("temporal_average: need at least one variant");
  }
  Matrix sum = Matrix::Zero(sys.dim(), sys.dim());
  for (const PulseSequence& seq : variants) {
    sum += simulate_sequence(sys, rho0, seq, params).matrix();
  }
  return DensityMatrix(hermitian_part(sum / static_cast<double>(variants.size())));
}

PulseSequence readout_schedule(const PulseSequence& preparation, double nu_q_hz, const TomographyPulse& readout,
                               double readout_omega) {
  if (!(readout_omega > 0.0)) {
    throw DomainError("readout_schedule: readout amplitude must be positive");
  }
  PulseSequence out = preparation;
  out.segments.push_back({0.0, 0.0, cat_time(nu_q_hz)});
  out.segments.push_back({readout_omega, readout.phi, readout.theta / readout_omega});
  out.segments.push_back({0.0, 0.0, 1.0 / nu_q_hz});
  out.fidelity.reset();
  return out;
}

}  // namespace spincat

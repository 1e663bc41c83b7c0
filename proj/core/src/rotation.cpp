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

#include <algorithm>
#include <cmath>

#include "spincat/spin_ops.hpp"

namespace spincat {

namespace {

double factorial(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

Matrix z_rotation(const SpinSystem& sys, double angle) {
  Matrix u = Matrix::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < sys.dim(); ++k) {
    u(k, k) = std::exp(-kI * angle * sys.m(k));
  }
  return u;
}

}  // namespace

// Wigner's closed-form sum; integer arithmetic is done on doubled indices.
RealMatrix reduced_wigner_d(int two_rank, double theta) {
  if (two_rank < 0) {
    throw DomainError("reduced_wigner_d: negative rank");
  }
  const int n = two_rank + 1;
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  RealMatrix d = RealMatrix::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    const int jpm_p = two_rank - row;  // j + m'
    const int jmm_p = row;             // j - m'
    for (int col = 0; col < n; ++col) {
      const int jpm = two_rank - col;  // j + m
      const int jmm = col;             // j - m
      const int mp_minus_m = col - row;
      const double root = std::sqrt(factorial(jpm_p) * factorial(jmm_p) * factorial(jpm) * factorial(jmm));
      const int k_min = std::max(0, -mp_minus_m);
      const int k_max = std::min(jpm, jmm_p);
      double sum = 0.0;
      for (int k = k_min; k <= k_max; ++k) {
        const double denom =
            factorial(jpm - k) * factorial(k) * factorial(mp_minus_m + k) * factorial(jmm_p - k);
        const int cos_pow = two_rank - mp_minus_m - 2 * k;
        const int sin_pow = mp_minus_m + 2 * k;
        const double sign = ((mp_minus_m + k) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::pow(c, cos_pow) * std::pow(s, sin_pow) / denom;
      }
      d(row, col) = root * sum;
    }
  }
  return d;
}

Matrix rotation_operator(const SpinSystem& sys, double alpha, double beta, double gamma) {
  const AngularMomentum ops = angular_momentum(sys);
  return z_rotation(sys, alpha) * expm_hermitian(ops.y, beta) * z_rotation(sys, gamma);
}

Matrix pulse_rotation(const SpinSystem& sys, double angle, double phase) {
  const AngularMomentum ops = angular_momentum(sys);
  return expm_hermitian(std::cos(phase) * ops.x + std::sin(phase) * ops.y, angle);
}

}  // namespace spincat

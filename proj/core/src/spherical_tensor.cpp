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
#include <cstdlib>
#include <string>

#include "spincat/spin_ops.hpp"

namespace spincat {

namespace {

long double factorial(int n) {
  long double out = 1.0L;
  for (int k = 2; k <= n; ++k) {
    out *= k;
  }
  return out;
}

bool parity_ok(int two_j, int two_m) { return std::abs(two_m) <= two_j && (two_j + two_m) % 2 == 0; }

}  // namespace

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m) {
  if (two_m1 + two_m2 != two_m) return 0.0;
  if (!parity_ok(two_j1, two_m1) || !parity_ok(two_j2, two_m2) || !parity_ok(two_j, two_m)) return 0.0;
  if (two_j < std::abs(two_j1 - two_j2) || two_j > two_j1 + two_j2) return 0.0;
  if ((two_j1 + two_j2 + two_j) % 2 != 0) return 0.0;

  // Everything below is an integer once halved.
  const int a = (two_j1 + two_j2 - two_j) / 2;  // j1 + j2 - J
  const int b = (two_j1 - two_m1) / 2;          // j1 - m1
  const int c = (two_j2 + two_m2) / 2;          // j2 + m2
  const int e = (two_j - two_j2 + two_m1) / 2;  // J - j2 + m1
  const int f = (two_j - two_j1 - two_m2) / 2;  // J - j1 - m2

  const long double prefactor =
      std::sqrt(static_cast<long double>(two_j + 1) * factorial((two_j + two_j1 - two_j2) / 2) *
                factorial((two_j - two_j1 + two_j2) / 2) * factorial(a) /
                factorial((two_j1 + two_j2 + two_j) / 2 + 1)) *
      std::sqrt(factorial((two_j + two_m) / 2) * factorial((two_j - two_m) / 2) * factorial(b) *
                factorial((two_j1 + two_m1) / 2) * factorial((two_j2 - two_m2) / 2) * factorial(c));

  const int k_min = std::max({0, -e, -f});
  const int k_max = std::min({a, b, c});
  long double sum = 0.0L;
  for (int k = k_min; k <= k_max; ++k) {
    const long double term = 1.0L / (factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k) *
                                     factorial(e + k) * factorial(f + k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(prefactor * sum);
}

Matrix spherical_tensor(const SpinSystem& sys, int rank, int order) {
  if (rank < 0 || rank > sys.two_spin() || std::abs(order) > rank) {
    throw DomainError("spherical tensor (K=" + std::to_string(rank) + ", Q=" + std::to_string(order) +
                      ") out of range for 2I=" + std::to_string(sys.two_spin()));
  }
  const int d = sys.dim();
  const int two_i = sys.two_spin();
  const double norm = std::sqrt((2.0 * rank + 1.0) / (two_i + 1.0));
  Matrix t = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const int two_m = sys.two_m(col);
    const int two_mp = two_m + 2 * order;
    if (std::abs(two_mp) > two_i) continue;
    const int row = (two_i - two_mp) / 2;
    t(row, col) = norm * clebsch_gordan(two_i, two_m, 2 * rank, 2 * order, two_i, two_mp);
  }
  return t;
}

std::vector<TensorComponent> tensor_basis(const SpinSystem& sys) {
  std::vector<TensorComponent> basis;
  basis.reserve(static_cast<std::size_t>(sys.dim() * sys.dim()));
  for (int k = 0; k <= sys.two_spin(); ++k) {
    for (int q = -k; q <= k; ++q) {
      basis.push_back({k, q, spherical_tensor(sys, k, q)});
    }
  }
  return basis;
}

}  // namespace spincat

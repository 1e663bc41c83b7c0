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

#include <cmath>
#include <string>

#include "spincat/spin_ops.hpp"

namespace spincat {

namespace {

int checked_twice(double spin) {
  const double twice = 2.0 * spin;
  const double rounded = std::round(twice);
  if (!std::isfinite(spin) || std::abs(twice - rounded) > 1e-9 || rounded < 1.0) {
    throw DomainError("spin must be a positive multiple of 1/2, got " + std::to_string(spin));
  }
  return static_cast<int>(rounded);
}

}  // namespace

SpinSystem::SpinSystem(double spin) : two_spin_(checked_twice(spin)) {}

SpinSystem SpinSystem::from_twice(int two_spin) { return SpinSystem(0.5 * two_spin); }

AngularMomentum angular_momentum(const SpinSystem& sys) {
  const int d = sys.dim();
  const double casimir = sys.casimir();

  AngularMomentum out;
  out.plus = Matrix::Zero(d, d);
  out.z = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = sys.m(k);
    out.z(k, k) = m;
    // <m+1| I+ |m> sits one row above the diagonal.
    if (k > 0) {
      out.plus(k - 1, k) = std::sqrt(casimir - m * (m + 1.0));
    }
  }
  out.minus = out.plus.adjoint();
  out.x = 0.5 * (out.plus + out.minus);
  out.y = (out.plus - out.minus) / (2.0 * kI);
  out.sq = out.x * out.x + out.y * out.y + out.z * out.z;
  return out;
}

}  // namespace spincat

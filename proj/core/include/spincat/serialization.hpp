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

#ifndef SPINCAT_SERIALIZATION_HPP
#define SPINCAT_SERIALIZATION_HPP

#include <json.hpp>

#include "spincat/smp.hpp"
#include "spincat/tomography.hpp"

namespace spincat {

/// {"re": [[...]], "im": [[...]]}, row-major.
nlohmann::json matrix_to_json(const Matrix& m);
/// Inverse of matrix_to_json. Throws DomainError on ragged or missing data.
Matrix matrix_from_json(const nlohmann::json& j);

/// [{"K":.., "Q":.., "re":.., "im":..}] in tensor_index order.
nlohmann::json coefficients_to_json(const SpinSystem& sys, const Vector& coefficients);

/// Record of one reconstruction: coefficients, raw and Hermitized matrices,
/// residuals, condition number, acquisition and noise settings, and the
/// fidelity against `target` when one is supplied.
nlohmann::json reconstruction_to_json(const DesignSystem& design, const Reconstruction& rec,
                                      const NoiseSettings& noise, const DensityMatrix* target = nullptr);

/// Segments as {"omega_hz", "phase_deg", "duration_us"}, plus the total
/// duration and, when present, the target label and fidelity.
nlohmann::json pulse_sequence_to_json(const PulseSequence& seq);
PulseSequence pulse_sequence_from_json(const nlohmann::json& j);

}  // namespace spincat

#endif  // SPINCAT_SERIALIZATION_HPP

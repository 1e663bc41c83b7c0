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

#include "spincat/serialization.hpp"

namespace spincat {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row_re = json::array();
    json row_im = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row_re.push_back(m(r, c).real());
      row_im.push_back(m(r, c).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_array() ||
      j["re"].size() != j["im"].size()) {
    throw DomainError("matrix JSON needs equally sized 're' and 'im' arrays");
  }
  const auto rows = static_cast<Eigen::Index>(j["re"].size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j["re"][0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& re = j["re"][r];
    const json& im = j["im"][r];
    if (static_cast<Eigen::Index>(re.size()) != cols || static_cast<Eigen::Index>(im.size()) != cols) {
      throw DomainError("matrix JSON rows have inconsistent lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = Complex(re[c].get<double>(), im[c].get<double>());
    }
  }
  return m;
}

json coefficients_to_json(const SpinSystem& sys, const Vector& coefficients) {
  json out = json::array();
  for (int rank = 0; rank <= sys.two_spin(); ++rank) {
    for (int order = -rank; order <= rank; ++order) {
      const Complex c = coefficients(tensor_index(rank, order));
      out.push_back({{"K", rank}, {"Q", order}, {"re", c.real()}, {"im", c.imag()}});
    }
  }
  return out;
}

json reconstruction_to_json(const DesignSystem& design, const Reconstruction& rec, const NoiseSettings& noise,
                            const DensityMatrix* target) {
  json out;
  out["coefficients"] = coefficients_to_json(design.sys, rec.coefficients);
  out["rho_raw"] = matrix_to_json(rec.raw);
  out["rho"] = matrix_to_json(rec.hermitized.matrix());
  out["hermitian_residual"] = rec.hermitian_residual;
  out["solve_residual"] = rec.solve_residual;
  out["condition_number"] = rec.condition_number;
  out["rank"] = design.rank;
  out["acquisition"] = {{"mode", to_string(design.options.mode)},
                        {"nu_Q_hz", design.options.nu_q_hz},
                        {"points", design.options.n_points},
                        {"dwell_us", design.options.dwell_s * 1e6},
                        {"t2_ms", design.options.t2_s * 1e3},
                        {"cycles", design.cycles.size()}};
  out["noise"] = {{"relative_sigma", noise.relative_sigma},
                  {"nu_Q_jitter_hz", noise.nu_q_jitter_hz},
                  {"seed", noise.seed}};
  if (target != nullptr) {
    out["fidelity"] = fidelity(rec.hermitized, *target);
  }
  if (!rec.warning.empty()) {
    out["warning"] = rec.warning;
  }
  return out;
}

json pulse_sequence_to_json(const PulseSequence& seq) {
  json segments = json::array();
  for (const PulseSegment& s : seq.segments) {
    segments.push_back({{"omega_hz", s.omega / (2.0 * kPi)},
                        {"phase_deg", s.phase * 180.0 / kPi},
                        {"duration_us", s.duration * 1e6}});
  }
  json out = {{"segments", std::move(segments)}, {"total_duration_us", seq.total_duration() * 1e6}};
  if (!seq.target.empty()) out["target"] = seq.target;
  if (seq.fidelity) out["fidelity"] = *seq.fidelity;
  return out;
}

PulseSequence pulse_sequence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array()) {
    throw DomainError("pulse sequence JSON needs a 'segments' array");
  }
  PulseSequence seq;
  for (const json& s : j["segments"]) {
    seq.segments.push_back({s.at("omega_hz").get<double>() * 2.0 * kPi, s.at("phase_deg").get<double>() * kPi / 180.0,
                            s.at("duration_us").get<double>() * 1e-6});
  }
  if (j.contains("target")) seq.target = j["target"].get<std::string>();
  if (j.contains("fidelity")) seq.fidelity = j["fidelity"].get<double>();
  return seq;
}

}  // namespace spincat

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

#ifndef SPINCAT_EXPERIMENT_HPP
#define SPINCAT_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spincat/smp.hpp"
#include "spincat/tomography.hpp"
#include "spincat/wigner.hpp"

namespace spincat {

struct TomographyConfig {
  AcquisitionMode mode = AcquisitionMode::Coherence;
  double noise_relative_sigma = 0.0;
  double nu_q_jitter_hz = 0.0;
  double t2_ms = 0.0;
  int points = 4096;
  double dwell_us = 12.0;
};

/// Optional numerically designed preparation of the initial coherent state.
struct SmpConfig {
  int segments = 20;
  double dt_us = 0.5;
  double cap_khz = 100.0;
  int budget = 4000;
  int starts = 8;
};

struct ExperimentConfig {
  std::string name;
  double spin = 1.5;
  double nu_q_hz = 15220.0;
  int p = 1;
  /// Multiples of t_S at which the state is tomographed.
  std::vector<double> checkpoints;
  double theta_deg = 90.0;
  double phi_deg = 0.0;
  TomographyConfig tomography;
  GridSpec wigner;
  std::optional<SmpConfig> smp;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
};

struct ConfigError {
  /// JSON pointer to the offending value, e.g. "/tomography/mode".
  std::string path;
  std::string message;
};

/// Every schema violation in `j`. An empty result means config_from_json(j)
/// succeeds.
std::vector<ConfigError> validate_config(const nlohmann::json& j);

/// Throws ConfigInvalid listing every error when validation fails.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

class ConfigInvalid : public std::runtime_error {
 public:
  explicit ConfigInvalid(std::vector<ConfigError> errors);
  const std::vector<ConfigError>& errors() const { return errors_; }

 private:
  std::vector<ConfigError> errors_;
};

/// Unreadable files raise IoError; malformed JSON raises ConfigSyntaxError
/// carrying the parser's line and column.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConfigSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
nlohmann::json load_config_file(const std::filesystem::path& path);

std::vector<std::string> preset_names();
/// Throws DomainError for an unknown name.
nlohmann::json preset_json(const std::string& name);

/// A numerical failure tagged with the pipeline stage that raised it.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(std::string stage, const std::string& what);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct CheckpointResult {
  double multiple = 0.0;
  double time_s = 0.0;
  /// Evolved state against the closed-form target.
  double evolution_fidelity = 0.0;
  /// Reconstructed state against the closed-form target.
  double fidelity = 0.0;
  double wigner_integral = 0.0;
  double wigner_min = 0.0;
  double wigner_max = 0.0;
  double argmax_theta = 0.0;
  double argmax_phi = 0.0;
};

struct ExperimentReport {
  std::vector<CheckpointResult> checkpoints;
  std::optional<double> smp_fidelity;
  nlohmann::json json;
};

/// Prepares |zeta(theta, phi)>, evolves it under the resonant Hamiltonian to
/// each checkpoint, tomographs and reconstructs it, and maps the Wigner
/// function. Writes report.json, rho_<i>.json and wigner_<i>.csv into
/// `out_dir`; identical inputs give byte-identical files.
ExperimentReport run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

}  // namespace spincat

#endif  // SPINCAT_EXPERIMENT_HPP

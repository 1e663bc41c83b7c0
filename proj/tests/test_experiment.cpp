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

#include "spincat/experiment.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "spincat/serialization.hpp"

using namespace spincat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("spincat_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool has_error_at(const std::vector<ConfigError>& errors, const std::string& path) {
  for (const ConfigError& e : errors) {
    if (e.path == path) return true;
  }
  return false;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(SPINCAT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json minimal() {
  return nlohmann::json{{"spin", 1.5}, {"nu_Q_hz", 15220.0}, {"p", 1}, {"checkpoints", {1.0}}};
}

}  // namespace

TEST(validate_config, presets_are_valid_and_match_files) {
  ASSERT_EQ(preset_names().size(), 3u);
  for (const std::string& name : preset_names()) {
    const nlohmann::json j = preset_json(name);
    ASSERT_TRUE(validate_config(j).empty()) << name;
    const nlohmann::json file = load_config_file(fs::path(SPINCAT_PRESET_DIR) / (name + ".json"));
    ASSERT_EQ(file, j) << name;
  }
  ASSERT_THROW(preset_json("nope"), DomainError);
}

TEST(validate_config, reports_paths_and_suggestions) {
  nlohmann::json j = minimal();
  j["nu_Q_hz"] = -5.0;
  ASSERT_TRUE(has_error_at(validate_config(j), "/nu_Q_hz"));

  j = minimal();
  j["tomography"] = {{"mdoe", "fid"}};
  const auto errors = validate_config(j);
  ASSERT_TRUE(has_error_at(errors, "/tomography/mdoe"));
  ASSERT_NE(errors.front().message.find("mode"), std::string::npos);

  j = minimal();
  j.erase("spin");
  ASSERT_TRUE(has_error_at(validate_config(j), "/spin"));

  j = minimal();
  j["spin"] = 1.25;
  ASSERT_FALSE(validate_config(j).empty());

  j = minimal();
  j["tomography"] = {{"mode", "echo"}};
  ASSERT_TRUE(has_error_at(validate_config(j), "/tomography/mode"));

  ASSERT_FALSE(validate_config(nlohmann::json::array()).empty());
  ASSERT_THROW(config_from_json(nlohmann::json{{"spin", "x"}}), ConfigInvalid);
}

TEST(config, json_round_trip) {
  nlohmann::json j = minimal();
  j["tomography"] = {{"mode", "fid"}, {"noise_relative_sigma", 0.01}};
  j["seed"] = 77;
  const ExperimentConfig c = config_from_json(j);
  ASSERT_EQ(c.tomography.mode, AcquisitionMode::Fid);
  ASSERT_EQ(c.seed, 77u);
  const ExperimentConfig again = config_from_json(config_to_json(c));
  ASSERT_EQ(config_to_json(again), config_to_json(c));
}

TEST(load_config_file, syntax_and_io_errors) {
  const fs::path dir = scratch("load");
  std::ofstream(dir / "bad.json") << "{ \"spin\": 1.5,";
  ASSERT_THROW(load_config_file(dir / "bad.json"), ConfigSyntaxError);
  ASSERT_THROW(load_config_file(dir / "missing.json"), IoError);
}

TEST(run_experiment, presets_reconstruct_noise_free) {
  for (const std::string& name : preset_names()) {
    const fs::path dir = scratch(name);
    const ExperimentReport report = run_experiment(config_from_json(preset_json(name)), dir);
    ASSERT_FALSE(report.checkpoints.empty());
    for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
      const CheckpointResult& c = report.checkpoints[i];
      ASSERT_GE(c.evolution_fidelity, 1.0 - 1e-10) << name;
      ASSERT_GE(c.fidelity, 0.999) << name;
      ASSERT_NEAR(c.wigner_integral, 1.0, 1e-6) << name;
      ASSERT_TRUE(fs::exists(dir / ("rho_" + std::to_string(i) + ".json")));
      ASSERT_TRUE(fs::exists(dir / ("wigner_" + std::to_string(i) + ".csv")));
    }
    ASSERT_TRUE(fs::exists(dir / "report.json"));
    const nlohmann::json rho = nlohmann::json::parse(slurp(dir / "rho_0.json"));
    ASSERT_EQ(matrix_from_json(rho["rho"]).rows(), 4);
  }
}

TEST(run_experiment, coherent_preset_peaks_on_positive_x) {
  const ExperimentReport report = run_experiment(config_from_json(preset_json("na23-fig3")), scratch("coherent"));
  const CheckpointResult& c = report.checkpoints.front();
  ASSERT_NEAR(c.argmax_theta, 0.5 * kPi, 0.06);
  ASSERT_LT(std::min(c.argmax_phi, 2.0 * kPi - c.argmax_phi), 0.06);
}

TEST(run_experiment, outputs_are_deterministic) {
  nlohmann::json j = preset_json("na23-fig4-p1");
  j["tomography"]["noise_relative_sigma"] = 0.01;
  const ExperimentConfig config = config_from_json(j);
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  run_experiment(config, a);
  run_experiment(config, b);
  for (const char* f : {"report.json", "rho_0.json", "rho_1.json", "wigner_0.csv", "wigner_1.csv"}) {
    ASSERT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  j["seed"] = 2;
  const fs::path c = scratch("det_c");
  run_experiment(config_from_json(j), c);
  ASSERT_NE(slurp(a / "rho_0.json"), slurp(c / "rho_0.json"));
}

TEST(cli, exit_codes) {
  if (std::string(SPINCAT_CLI).empty()) GTEST_SKIP() << "CLI not built";
  const fs::path dir = scratch("cli");
  ASSERT_EQ(cli("presets list"), 0);
  ASSERT_EQ(cli("run --preset na23-fig4-p1 --out " + (dir / "out").string()), 0);
  ASSERT_TRUE(fs::exists(dir / "out" / "report.json"));
  ASSERT_EQ(cli("run --preset na23-fig4-p1 --mode fid --seed 3 --out " + (dir / "fid").string()), 0);
  ASSERT_EQ(cli("validate --config " + (fs::path(SPINCAT_PRESET_DIR) / "na23-fig3.json").string()), 0);

  nlohmann::json bad = minimal();
  bad["nu_Q_hz"] = -1.0;
  std::ofstream(dir / "bad.json") << bad.dump();
  ASSERT_EQ(cli("validate --config " + (dir / "bad.json").string()), 1);
  ASSERT_EQ(cli("run --config " + (dir / "bad.json").string()), 1);
  std::ofstream(dir / "broken.json") << "{";
  ASSERT_EQ(cli("validate --config " + (dir / "broken.json").string()), 1);
  ASSERT_EQ(cli("validate --config " + (dir / "missing.json").string()), 2);
  ASSERT_NE(cli("bogus"), 0);
}

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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spincat/experiment.hpp"
#include "spincat/serialization.hpp"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInvalidConfig = 1;
constexpr int kIoFailure = 2;
constexpr int kNumericalFailure = 3;

void print_errors(const std::string& source, const std::vector<spincat::ConfigError>& errors) {
  for (const spincat::ConfigError& e : errors) {
    std::cerr << source << ": " << e.path << ": " << e.message << "\n";
  }
}

struct RunArgs {
  std::string config;
  std::string preset;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string mode;
};

int run(const RunArgs& args) {
  nlohmann::json j;
  std::string source;
  if (!args.preset.empty()) {
    j = spincat::preset_json(args.preset);
    source = "preset " + args.preset;
  } else {
    j = spincat::load_config_file(args.config);
    source = args.config;
  }
  if (args.seed) j["seed"] = *args.seed;
  if (!args.mode.empty()) j["tomography"]["mode"] = args.mode;

  const std::vector<spincat::ConfigError> errors = spincat::validate_config(j);
  if (!errors.empty()) {
    print_errors(source, errors);
    return kInvalidConfig;
  }
  const spincat::ExperimentConfig config = spincat::config_from_json(j);
  const std::string out_dir = args.out.empty() ? config.output_dir : args.out;
  const spincat::ExperimentReport report = spincat::run_experiment(config, out_dir);

  if (report.smp_fidelity) {
    std::printf("smp preparation fidelity %.6f\n", *report.smp_fidelity);
  }
  for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
    const spincat::CheckpointResult& c = report.checkpoints[i];
    std::printf("checkpoint %zu  t = %.4g t_S (%.3f us)  fidelity %.10f  W in [%.4f, %.4f]\n", i, c.multiple,
                c.time_s * 1e6, c.fidelity, c.wigner_min, c.wigner_max);
  }
  std::printf("wrote %s/report.json\n", out_dir.c_str());
  return kOk;
}

int validate(const std::string& path) {
  const nlohmann::json j = spincat::load_config_file(path);
  const std::vector<spincat::ConfigError> errors = spincat::validate_config(j);
  if (errors.empty()) {
    std::cout << path << ": ok\n";
    return kOk;
  }
  print_errors(path, errors);
  return kInvalidConfig;
}

struct SmpArgs {
  double spin = 1.5;
  double nu_q_hz = 15220.0;
  int segments = 20;
  double dt_us = 0.5;
  double cap_khz = 100.0;
  int budget = 4000;
  std::uint64_t seed = 2024;
  std::string out;
};

int smp(const SmpArgs& args) {
  const spincat::SpinSystem sys(args.spin);
  spincat::NmrParams params;
  params.omega_q = spincat::omega_from_hz(args.nu_q_hz);
  spincat::SmpOptions options;
  options.amplitude_cap = spincat::omega_from_hz(args.cap_khz * 1e3);
  options.budget = args.budget;
  options.seed = args.seed;
  const spincat::StateVector target = spincat::coherent_state(sys, {0.5 * spincat::kPi, 0.0});
  spincat::SmpResult result = spincat::optimize_smp(sys, params, target, args.segments, args.dt_us * 1e-6, options);
  result.sequence.target = "coherent(theta=90deg, phi=0deg)";
  nlohmann::json j = spincat::pulse_sequence_to_json(result.sequence);
  j["evaluations"] = result.evaluations;
  const std::string text = j.dump(2) + "\n";
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(args.out);
    if (!(f << text)) throw spincat::IoError("cannot write " + args.out);
    std::fprintf(stderr, "fidelity %.6f after %d evaluations, wrote %s\n", result.fidelity, result.evaluations,
                 args.out.c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spincat: spin-cat state simulation, tomography and Wigner maps for quadrupolar nuclei"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment and write report.json, rho_<i>.json, wigner_<i>.csv");
  CLI::Option* config_opt = run_cmd->add_option("--config", run_args.config, "Experiment JSON file")->check(CLI::ExistingFile);
  CLI::Option* preset_opt = run_cmd->add_option("--preset", run_args.preset, "Built-in preset name");
  config_opt->excludes(preset_opt);
  run_cmd->add_option("--out", run_args.out, "Output directory (overrides output_dir)");
  run_cmd->add_option("--seed", run_args.seed, "Noise and optimizer seed (overrides seed)");
  run_cmd->add_option("--mode", run_args.mode, "Acquisition mode")->check(CLI::IsMember({"coherence", "fid"}));

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a config file against the schema");
  validate_cmd->add_option("--config", validate_path, "Experiment JSON file")->required();

  CLI::App* presets_cmd = app.add_subcommand("presets", "Built-in presets");
  presets_cmd->require_subcommand(1);
  CLI::App* list_cmd = presets_cmd->add_subcommand("list", "List preset names");
  std::string show_name;
  CLI::App* show_cmd = presets_cmd->add_subcommand("show", "Print a preset as JSON");
  show_cmd->add_option("name", show_name, "Preset name")->required();

  SmpArgs smp_args;
  CLI::App* smp_cmd = app.add_subcommand("smp", "Design a strongly modulating pulse for |zeta(pi/2, 0)>");
  smp_cmd->add_option("--spin", smp_args.spin, "Spin quantum number");
  smp_cmd->add_option("--nu-q-hz", smp_args.nu_q_hz, "Quadrupolar frequency in Hz");
  smp_cmd->add_option("--segments", smp_args.segments, "Number of segments");
  smp_cmd->add_option("--dt-us", smp_args.dt_us, "Segment duration in microseconds");
  smp_cmd->add_option("--cap-khz", smp_args.cap_khz, "Amplitude cap in kHz");
  smp_cmd->add_option("--budget", smp_args.budget, "Maximum objective evaluations");
  smp_cmd->add_option("--seed", smp_args.seed, "Optimizer seed");
  smp_cmd->add_option("--out", smp_args.out, "Write pulse JSON here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      if (run_args.config.empty() && run_args.preset.empty()) {
        std::cerr << "run: one of --config or --preset is required\n";
        return kInvalidConfig;
      }
      return run(run_args);
    }
    if (*validate_cmd) return validate(validate_path);
    if (*list_cmd) {
      for (const std::string& name : spincat::preset_names()) std::cout << name << "\n";
      return kOk;
    }
    if (*show_cmd) {
      std::cout << spincat::preset_json(show_name).dump(2) << "\n";
      return kOk;
    }
    if (*smp_cmd) return smp(smp_args);
  } catch (const spincat::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const spincat::ConfigSyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const spincat::ConfigInvalid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const spincat::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

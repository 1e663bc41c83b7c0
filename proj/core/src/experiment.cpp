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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "spincat/serialization.hpp"
#include "spincat/states.hpp"

namespace spincat {

using nlohmann::json;

namespace {

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1);
  std::vector<int> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int same = std::tolower(static_cast<unsigned char>(a[i - 1])) ==
                       std::tolower(static_cast<unsigned char>(b[j - 1]));
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (same ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

struct Field {
  std::string key;
  bool required = false;
  // Appends errors for the value at `path`.
  std::function<void(const json&, const std::string&, std::vector<ConfigError>&)> check;
};

using Checker = std::function<void(const json&, const std::string&, std::vector<ConfigError>&)>;

Checker number(std::function<bool(double)> ok, std::string requirement) {
  return [ok = std::move(ok), requirement = std::move(requirement)](const json& v, const std::string& path,
                                                                    std::vector<ConfigError>& errors) {
    if (!v.is_number()) {
      errors.push_back({path, "expected a number"});
    } else if (!ok(v.get<double>())) {
      errors.push_back({path, "must be " + requirement});
    }
  };
}

Checker integer(std::function<bool(long long)> ok, std::string requirement) {
  return [ok = std::move(ok), requirement = std::move(requirement)](const json& v, const std::string& path,
                                                                    std::vector<ConfigError>& errors) {
    if (!v.is_number_integer()) {
      errors.push_back({path, "expected an integer"});
    } else if (!ok(v.get<long long>())) {
      errors.push_back({path, "must be " + requirement});
    }
  };
}

Checker string_field() {
  return [](const json& v, const std::string& path, std::vector<ConfigError>& errors) {
    if (!v.is_string()) errors.push_back({path, "expected a string"});
  };
}

void check_object(const json& obj, const std::string& path, const std::vector<Field>& fields,
                  std::vector<ConfigError>& errors) {
  if (!obj.is_object()) {
    errors.push_back({path.empty() ? "/" : path, "expected an object"});
    return;
  }
  for (const Field& f : fields) {
    if (obj.contains(f.key)) {
      f.check(obj[f.key], path + "/" + f.key, errors);
    } else if (f.required) {
      errors.push_back({path + "/" + f.key, "required field is missing"});
    }
  }
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(fields.begin(), fields.end(), [&](const Field& f) { return f.key == key; });
    if (known) continue;
    std::string message = "unknown key '" + key + "'";
    const Field* best = nullptr;
    int best_distance = 0;
    for (const Field& f : fields) {
      const int dist = edit_distance(key, f.key);
      if (best == nullptr || dist < best_distance) {
        best = &f;
        best_distance = dist;
      }
    }
    if (best != nullptr && best_distance <= std::max<int>(2, static_cast<int>(best->key.size()) / 3)) {
      message += "; did you mean '" + best->key + "'?";
    }
    errors.push_back({path + "/" + key, message});
  }
}

Checker object(std::vector<Field> fields) {
  return [fields = std::move(fields)](const json& v, const std::string& path, std::vector<ConfigError>& errors) {
    check_object(v, path, fields, errors);
  };
}

const std::vector<Field>& schema() {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  auto non_negative = [](double x) { return std::isfinite(x) && x >= 0.0; };
  static const std::vector<Field> fields = {
      {"name", false, string_field()},
      {"spin", true,
       number([](double s) { return s > 0.0 && std::abs(2.0 * s - std::round(2.0 * s)) < 1e-12 && s <= 20.0; },
              "a positive multiple of 1/2 (at most 20)")},
      {"nu_Q_hz", true, number(positive, "positive")},
      {"p", true, integer([](long long) { return true; }, "an integer")},
      {"checkpoints", true,
       [](const json& v, const std::string& path, std::vector<ConfigError>& errors) {
         if (!v.is_array() || v.empty()) {
           errors.push_back({path, "expected a non-empty array of t_S multiples"});
           return;
         }
         for (std::size_t i = 0; i < v.size(); ++i) {
           if (!v[i].is_number() || !(v[i].get<double>() >= 0.0) || !std::isfinite(v[i].get<double>())) {
             errors.push_back({path + "/" + std::to_string(i), "must be a non-negative number"});
           }
         }
       }},
      {"initial_state", false,
       object({{"theta_deg", false, number([](double x) { return x >= 0.0 && x <= 180.0; }, "within [0, 180]")},
               {"phi_deg", false, number([](double x) { return std::isfinite(x); }, "finite")}})},
      {"tomography", false,
       object({{"mode", false,
                [](const json& v, const std::string& path, std::vector<ConfigError>& errors) {
                  if (!v.is_string() || (v != "coherence" && v != "fid")) {
                    errors.push_back({path, "must be \"coherence\" or \"fid\""});
                  }
                }},
               {"noise_relative_sigma", false, number(non_negative, "non-negative")},
               {"nu_Q_jitter_hz", false, number(non_negative, "non-negative")},
               {"t2_ms", false, number(non_negative, "non-negative (0 disables decay)")},
               {"points", false, integer([](long long n) { return n >= 2 && n <= (1 << 22); }, "within [2, 4194304]")},
               {"dwell_us", false, number(positive, "positive")}})},
      {"wigner", false,
       object({{"n_theta", false, integer([](long long n) { return n >= 8 && n <= 4096; }, "within [8, 4096]")},
               {"n_phi", false, integer([](long long n) { return n >= 8 && n <= 8192; }, "within [8, 8192]")}})},
      {"smp", false,
       object({{"segments", false, integer([](long long n) { return n >= 1 && n <= 10000; }, "within [1, 10000]")},
               {"dt_us", false, number(positive, "positive")},
               {"cap_khz", false, number(positive, "positive")},
               {"budget", false, integer([](long long n) { return n >= 0; }, "non-negative")},
               {"starts", false, integer([](long long n) { return n >= 1; }, "at least 1")}})},
      {"output_dir", false, string_field()},
      {"seed", false, integer([](long long n) { return n >= 0; }, "non-negative")},
  };
  return fields;
}

template <typename T>
T value_or(const json& obj, const char* key, T fallback) {
  return obj.contains(key) ? obj[key].get<T>() : fallback;
}

const std::map<std::string, json>& presets() {
  static const std::map<std::string, json> table = {
      {"na23-fig3", json{{"name", "na23-fig3"},
                         {"spin", 1.5},
                         {"nu_Q_hz", 15220.0},
                         {"p", 1},
                         {"checkpoints", {0.0}},
                         {"initial_state", {{"theta_deg", 90.0}, {"phi_deg", 0.0}}},
                         {"seed", 1}}},
      {"na23-fig4-p0", json{{"name", "na23-fig4-p0"},
                            {"spin", 1.5},
                            {"nu_Q_hz", 15220.0},
                            {"p", 0},
                            {"checkpoints", {1.0, 2.0}},
                            {"initial_state", {{"theta_deg", 90.0}, {"phi_deg", 0.0}}},
                            {"seed", 1}}},
      {"na23-fig4-p1", json{{"name", "na23-fig4-p1"},
                            {"spin", 1.5},
                            {"nu_Q_hz", 15220.0},
                            {"p", 1},
                            {"checkpoints", {1.0, 2.0}},
                            {"initial_state", {{"theta_deg", 90.0}, {"phi_deg", 0.0}}},
                            {"seed", 1}}},
  };
  return table;
}

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const ExperimentError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExperimentError(name, e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

}  // namespace

ConfigInvalid::ConfigInvalid(std::vector<ConfigError> errors)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "invalid configuration:";
        for (const ConfigError& e : errors) msg << "\n  " << e.path << ": " << e.message;
        return msg.str();
      }()),
      errors_(std::move(errors)) {}

ExperimentError::ExperimentError(std::string stage, const std::string& what)
    : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

std::vector<ConfigError> validate_config(const json& j) {
  std::vector<ConfigError> errors;
  check_object(j, "", schema(), errors);
  return errors;
}

ExperimentConfig config_from_json(const json& j) {
  std::vector<ConfigError> errors = validate_config(j);
  if (!errors.empty()) {
    throw ConfigInvalid(std::move(errors));
  }
  ExperimentConfig c;
  c.name = value_or<std::string>(j, "name", "");
  c.spin = j["spin"].get<double>();
  c.nu_q_hz = j["nu_Q_hz"].get<double>();
  c.p = j["p"].get<int>();
  c.checkpoints = j["checkpoints"].get<std::vector<double>>();
  if (j.contains("initial_state")) {
    c.theta_deg = value_or(j["initial_state"], "theta_deg", c.theta_deg);
    c.phi_deg = value_or(j["initial_state"], "phi_deg", c.phi_deg);
  }
  if (j.contains("tomography")) {
    const json& t = j["tomography"];
    c.tomography.mode = parse_acquisition_mode(value_or<std::string>(t, "mode", "coherence"));
    c.tomography.noise_relative_sigma = value_or(t, "noise_relative_sigma", 0.0);
    c.tomography.nu_q_jitter_hz = value_or(t, "nu_Q_jitter_hz", 0.0);
    c.tomography.t2_ms = value_or(t, "t2_ms", 0.0);
    c.tomography.points = value_or(t, "points", c.tomography.points);
    c.tomography.dwell_us = value_or(t, "dwell_us", c.tomography.dwell_us);
  }
  if (j.contains("wigner")) {
    c.wigner.n_theta = value_or(j["wigner"], "n_theta", c.wigner.n_theta);
    c.wigner.n_phi = value_or(j["wigner"], "n_phi", c.wigner.n_phi);
  }
  if (j.contains("smp")) {
    const json& s = j["smp"];
    SmpConfig smp;
    smp.segments = value_or(s, "segments", smp.segments);
    smp.dt_us = value_or(s, "dt_us", smp.dt_us);
    smp.cap_khz = value_or(s, "cap_khz", smp.cap_khz);
    smp.budget = value_or(s, "budget", smp.budget);
    smp.starts = value_or(s, "starts", smp.starts);
    c.smp = smp;
  }
  c.output_dir = value_or<std::string>(j, "output_dir", c.output_dir);
  c.seed = value_or<std::uint64_t>(j, "seed", c.seed);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j = {{"name", c.name},
            {"spin", c.spin},
            {"nu_Q_hz", c.nu_q_hz},
            {"p", c.p},
            {"checkpoints", c.checkpoints},
            {"initial_state", {{"theta_deg", c.theta_deg}, {"phi_deg", c.phi_deg}}},
            {"tomography",
             {{"mode", to_string(c.tomography.mode)},
              {"noise_relative_sigma", c.tomography.noise_relative_sigma},
              {"nu_Q_jitter_hz", c.tomography.nu_q_jitter_hz},
              {"t2_ms", c.tomography.t2_ms},
              {"points", c.tomography.points},
              {"dwell_us", c.tomography.dwell_us}}},
            {"wigner", {{"n_theta", c.wigner.n_theta}, {"n_phi", c.wigner.n_phi}}},
            {"output_dir", c.output_dir},
            {"seed", c.seed}};
  if (c.smp) {
    j["smp"] = {{"segments", c.smp->segments},
                {"dt_us", c.smp->dt_us},
                {"cap_khz", c.smp->cap_khz},
                {"budget", c.smp->budget},
                {"starts", c.smp->starts}};
  }
  return j;
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigSyntaxError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : presets()) names.push_back(name);
  return names;
}

json preset_json(const std::string& name) {
  const auto it = presets().find(name);
  if (it == presets().end()) {
    throw DomainError("unknown preset '" + name + "'");
  }
  return it->second;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  const SpinSystem sys = stage("config", [&] { return SpinSystem(config.spin); });
  const CoherentParams initial{config.theta_deg * kPi / 180.0, config.phi_deg * kPi / 180.0};
  const StateVector psi0 = stage("states", [&] { return coherent_state(sys, initial); });
  const double t_s = stage("dynamics", [&] { return cat_time(config.nu_q_hz); });

  ExperimentReport report;
  json smp_json;
  DensityMatrix rho0 = DensityMatrix::pure(psi0);
  if (config.smp) {
    const SmpConfig& s = *config.smp;
    stage("pulse-smp", [&] {
      NmrParams params;
      params.omega_q = omega_from_hz(config.nu_q_hz);
      SmpOptions options;
      options.amplitude_cap = 2.0 * kPi * s.cap_khz * 1e3;
      options.budget = s.budget;
      options.starts = s.starts;
      options.seed = config.seed;
      SmpResult result = optimize_smp(sys, params, psi0, s.segments, s.dt_us * 1e-6, options);
      result.sequence.target = "coherent";
      rho0 = simulate_sequence(sys, zeeman_pseudo_pure(sys), result.sequence, params);
      report.smp_fidelity = result.fidelity;
      smp_json = pulse_sequence_to_json(result.sequence);
      smp_json["evaluations"] = result.evaluations;
    });
  }

  const std::vector<DensityMatrix> evolved = stage("dynamics", [&] {
    return free_evolution_schedule(sys, rho0, config.p, config.nu_q_hz, config.checkpoints);
  });

  AcquisitionOptions acq;
  acq.mode = config.tomography.mode;
  acq.nu_q_hz = config.nu_q_hz;
  acq.n_points = config.tomography.points;
  acq.dwell_s = config.tomography.dwell_us * 1e-6;
  acq.t2_s = config.tomography.t2_ms * 1e-3;
  const std::vector<PhaseCycle> cycles = phase_cycles(sys);
  const DesignSystem design = stage("tomography", [&] { return build_design_matrix(sys, cycles, acq); });

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  }

  json checkpoints = json::array();
  for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
    const double multiple = config.checkpoints[i];
    const DensityMatrix target =
        DensityMatrix::pure(stage("dynamics", [&] { return analytic_state(sys, initial, config.p, multiple); }));

    NoiseSettings noise;
    noise.relative_sigma = config.tomography.noise_relative_sigma;
    noise.nu_q_jitter_hz = config.tomography.nu_q_jitter_hz;
    noise.seed = config.seed * 1000003ULL + i;
    const Reconstruction rec = stage("tomography", [&] {
      return reconstruct(design, acquire(sys, evolved[i].matrix(), cycles, acq, noise));
    });
    const WignerGrid grid = stage("wigner-map", [&] { return wigner_function(sys, rec.hermitized, config.wigner); });

    CheckpointResult r;
    r.multiple = multiple;
    r.time_s = multiple * t_s;
    r.evolution_fidelity = fidelity(evolved[i], target);
    r.fidelity = fidelity(rec.hermitized, target);
    r.wigner_integral = integrate_sphere(grid);
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    r.wigner_max = grid.values.maxCoeff(&row, &col);
    r.argmax_theta = grid.theta(row);
    r.argmax_phi = grid.phi(col);
    r.wigner_min = grid.values.minCoeff();
    report.checkpoints.push_back(r);

    const std::string rho_name = "rho_" + std::to_string(i) + ".json";
    const std::string wigner_name = "wigner_" + std::to_string(i) + ".csv";
    json record = reconstruction_to_json(design, rec, noise, &target);
    record["checkpoint"] = i;
    record["multiple"] = multiple;
    record["time_us"] = r.time_s * 1e6;
    record["rho_evolved"] = matrix_to_json(evolved[i].matrix());
    record["rho_target"] = matrix_to_json(target.matrix());
    record["evolution_fidelity"] = r.evolution_fidelity;
    write_text(out_dir / rho_name, record.dump(2) + "\n");

    std::ostringstream csv;
    write_wigner_csv(csv, sys, grid);
    write_text(out_dir / wigner_name, csv.str());

    checkpoints.push_back({{"index", i},
                           {"multiple", multiple},
                           {"time_us", r.time_s * 1e6},
                           {"fidelity", r.fidelity},
                           {"evolution_fidelity", r.evolution_fidelity},
                           {"condition_number", rec.condition_number},
                           {"wigner",
                            {{"integral", r.wigner_integral},
                             {"min", r.wigner_min},
                             {"max", r.wigner_max},
                             {"argmax_theta", r.argmax_theta},
                             {"argmax_phi", r.argmax_phi},
                             {"max_imag_residue", grid.max_imag_residue}}},
                           {"files", {{"rho", rho_name}, {"wigner", wigner_name}}}});
  }

  json& out = report.json;
  out["config"] = config_to_json(config);
  out["spin"] = sys.spin();
  out["dimension"] = sys.dim();
  out["t_S_us"] = t_s * 1e6;
  out["epsilon"] = kNa23Epsilon;
  out["design"] = {{"rows", design.a.rows()},
                   {"columns", design.a.cols()},
                   {"rank", design.rank},
                   {"condition_number", design.condition_number}};
  out["checkpoints"] = std::move(checkpoints);
  if (config.smp) {
    out["smp"] = smp_json;
  }
  write_text(out_dir / "report.json", out.dump(2) + "\n");
  return report;
}

}  // namespace spincat

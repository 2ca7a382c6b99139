// Copyright 2026 The qphonon developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qphonon/config.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "qphonon/io.hpp"

namespace qphonon {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  if (!obj.is_object()) throw std::invalid_argument("config: " + path + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw std::invalid_argument("config: unknown key '" + path + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void read_optimizer(const json& obj, const std::string& path, OptimizerSpec& spec) {
  reject_unknown(obj, {"kind", "max_iterations", "ftol", "ptol", "fd_step", "patience"}, path);
  if (obj.contains("kind")) spec.kind = optimizer_from_name(obj.at("kind").get<std::string>());
  read(obj, "max_iterations", spec.max_iterations);
  read(obj, "ftol", spec.ftol);
  read(obj, "ptol", spec.ptol);
  read(obj, "fd_step", spec.fd_step);
  read(obj, "patience", spec.patience);
  spec.validate();
}

void read_couplings3(const json& arr, const std::string& path,
                     std::map<std::array<int, 3>, double>& table) {
  if (!arr.is_array()) throw std::invalid_argument("config: " + path + " must be an array");
  for (const auto& entry : arr) {
    reject_unknown(entry, {"modes", "phi"}, path + ".");
    const auto modes = entry.at("modes").get<std::vector<int>>();
    if (modes.size() != 3) throw std::invalid_argument("config: " + path + " entries need 3 modes");
    std::array<int, 3> key{modes[0], modes[1], modes[2]};
    std::sort(key.begin(), key.end());
    table[key] = entry.at("phi").get<double>();
  }
}

void read_couplings4(const json& arr, const std::string& path,
                     std::map<std::array<int, 4>, double>& table) {
  if (!arr.is_array()) throw std::invalid_argument("config: " + path + " must be an array");
  for (const auto& entry : arr) {
    reject_unknown(entry, {"modes", "phi"}, path + ".");
    const auto modes = entry.at("modes").get<std::vector<int>>();
    if (modes.size() != 4) throw std::invalid_argument("config: " + path + " entries need 4 modes");
    std::array<int, 4> key{modes[0], modes[1], modes[2], modes[3]};
    std::sort(key.begin(), key.end());
    table[key] = entry.at("phi").get<double>();
  }
}

json couplings3_json(const std::map<std::array<int, 3>, double>& table) {
  json arr = json::array();
  for (const auto& [modes, phi] : table)
    arr.push_back({{"modes", {modes[0], modes[1], modes[2]}}, {"phi", phi}});
  return arr;
}

json couplings4_json(const std::map<std::array<int, 4>, double>& table) {
  json arr = json::array();
  for (const auto& [modes, phi] : table)
    arr.push_back({{"modes", {modes[0], modes[1], modes[2], modes[3]}}, {"phi", phi}});
  return arr;
}

}  // namespace

const char* ansatz_name(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::EfficientSu2: return "efficient-su2";
    case AnsatzKind::Custom: return "custom";
  }
  throw std::invalid_argument("ansatz_name: bad kind");
}

AnsatzKind ansatz_from_name(const std::string& name) {
  if (name == "efficient-su2") return AnsatzKind::EfficientSu2;
  if (name == "custom") return AnsatzKind::Custom;
  throw std::invalid_argument("ansatz_from_name: unknown ansatz '" + name + "'");
}

bool NoiseConfig::enabled() const {
  return preset.has_value() || depolarizing_p.has_value() || readout_p01.has_value() ||
         readout_p10.has_value() || t1_us.has_value();
}

NoiseModel NoiseConfig::build(int width) const {
  NoiseModel model;
  if (preset) model = device_preset(*preset).noise_model(width);
  if (depolarizing_p) model.depolarizing_p = *depolarizing_p;
  if (readout_p01 || readout_p10) {
    ReadoutConfusion conf{readout_p01.value_or(0.0), readout_p10.value_or(0.0)};
    model.readout.assign(static_cast<std::size_t>(width), conf);
  }
  if (t1_us) model.t1_us = *t1_us;
  if (t2_us) model.t2_us = *t2_us;
  model.validate(width);
  return model;
}

RunConfig RunConfig::defaults() {
  RunConfig config;
  config.optimizer.kind = OptimizerKind::LbfgsFd;
  config.optimizer.max_iterations = 400;
  config.noisy_optimizer.kind = OptimizerKind::Spsa;
  config.noisy_optimizer.max_iterations = 160;
  config.noise.preset = "ibm_brisbane";
  config.mitigation = MitigationPlan::all_on();
  return config;
}

MappedHamiltonian RunConfig::build_hamiltonian() const {
  auto terms = build_h3(system);
  const auto h4 = build_h4(system);
  terms.insert(terms.end(), h4.begin(), h4.end());
  const EncodingLayout lay = layout();
  // Weight is decided on the physical sum, so map twice when automatic.
  const MappedHamiltonian bare = map_hamiltonian(terms, lay, 0.0);
  const double weight = penalty_weight.value_or(default_penalty_weight(bare.physical));
  if (weight == 0.0) return bare;
  return map_hamiltonian(terms, lay, weight);
}

Circuit RunConfig::build_ansatz() const {
  const int width = layout().width();
  Circuit circuit = ansatz.kind == AnsatzKind::Custom ? build_custom_ansatz(width)
                                                      : build_efficient_su2(width, ansatz.reps);
  if (ansatz.transpile_to_ecr) circuit = transpile_cnot_to_ecr(circuit);
  return circuit;
}

std::string RunConfig::canonical_json() const {
  json j;
  j["seed"] = seed;
  j["shots"] = shots;
  j["output_dir"] = output_dir;
  j["system"] = {{"n_phonons", system.n_phonons},
                 {"frequencies", system.mode_frequencies},
                 {"coupling3", couplings3_json(system.coupling3)},
                 {"coupling4", couplings4_json(system.coupling4)},
                 {"normalizer_g", system.normalizer_g},
                 {"levels_per_phonon", levels_per_phonon}};
  if (penalty_weight) j["penalty_weight"] = *penalty_weight;
  j["ansatz"] = {{"kind", ansatz_name(ansatz.kind)},
                 {"reps", ansatz.reps},
                 {"transpile_to_ecr", ansatz.transpile_to_ecr}};
  auto optimizer_json = [](const OptimizerSpec& spec) {
    return json{{"kind", optimizer_name(spec.kind)}, {"max_iterations", spec.max_iterations},
                {"ftol", spec.ftol},                 {"ptol", spec.ptol},
                {"fd_step", spec.fd_step},           {"patience", spec.patience}};
  };
  j["optimizer"] = optimizer_json(optimizer);
  j["noisy_optimizer"] = optimizer_json(noisy_optimizer);
  json jn = json::object();
  if (noise.preset) jn["preset"] = *noise.preset;
  if (noise.depolarizing_p) jn["depolarizing_p"] = *noise.depolarizing_p;
  if (noise.readout_p01) jn["readout_p01"] = *noise.readout_p01;
  if (noise.readout_p10) jn["readout_p10"] = *noise.readout_p10;
  if (noise.t1_us) jn["t1_us"] = *noise.t1_us;
  if (noise.t2_us) jn["t2_us"] = *noise.t2_us;
  j["noise"] = jn;
  std::vector<int> scales = mitigation.zne_spec.scale_factors;
  j["mitigation"] = {{"readout", mitigation.readout},
                     {"zne", mitigation.zne},
                     {"twirling", mitigation.twirling},
                     {"dynamical_decoupling", mitigation.dynamical_decoupling},
                     {"scale_factors", scales},
                     {"extrapolator", extrapolator_name(mitigation.zne_spec.extrapolator)},
                     {"twirl_samples", mitigation.twirl_samples},
                     {"dd_suppression", mitigation.dd_suppression}};
  j["noise_sweep"] = {{"fidelities", noise_sweep.fidelities},
                      {"seeds", noise_sweep.seeds},
                      {"session_iterations", noise_sweep.session_iterations}};
  j["mitigate"] = {{"trials", mitigate.trials}};
  std::vector<std::string> optimizer_names;
  for (auto k : vqe_command.optimizers) optimizer_names.push_back(optimizer_name(k));
  j["vqe"] = {{"optimizers", optimizer_names}, {"plot", vqe_command.plot},
              {"starts", vqe_command.starts}};
  std::vector<std::string> source_names;
  for (auto s : kappa.sources) source_names.push_back(kappa_source_name(s));
  j["kappa"] = {{"temperatures", kappa.thermal.temperatures},
                {"group_velocity", kappa.thermal.group_velocity},
                {"volume", kappa.thermal.volume},
                {"anchor_temperature", kappa.thermal.anchors.temperature},
                {"anchor_cv", kappa.thermal.anchors.cv_target},
                {"anchor_kappa", kappa.thermal.anchors.kappa_target},
                {"runs_per_source", kappa.thermal.runs_per_source},
                {"sources", source_names},
                {"final_shots", kappa.final_shots}};
  return j.dump(2);
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + err.what());
  }
  RunConfig config = RunConfig::defaults();

  reject_unknown(j,
                 {"seed", "shots", "output_dir", "system", "penalty_weight", "ansatz", "optimizer",
                  "noisy_optimizer", "noise", "mitigation", "noise_sweep", "mitigate", "vqe",
                  "kappa"},
                 "");
  read(j, "seed", config.seed);
  read(j, "shots", config.shots);
  read(j, "output_dir", config.output_dir);
  if (config.shots < 1) throw std::invalid_argument("config: shots must be positive");

  if (j.contains("system")) {
    const auto& js = j.at("system");
    reject_unknown(js,
                   {"n_phonons", "levels_per_phonon", "frequencies", "coupling3", "coupling4",
                    "normalizer_g"},
                   "system.");
    PhononSystem system;
    system.n_phonons = js.at("n_phonons").get<int>();
    system.mode_frequencies = js.at("frequencies").get<std::vector<double>>();
    if (js.contains("coupling3")) read_couplings3(js.at("coupling3"), "system.coupling3", system.coupling3);
    if (js.contains("coupling4")) read_couplings4(js.at("coupling4"), "system.coupling4", system.coupling4);
    read(js, "normalizer_g", system.normalizer_g);
    system.validate();
    config.system = system;
    read(js, "levels_per_phonon", config.levels_per_phonon);
    if (config.levels_per_phonon < 2)
      throw std::invalid_argument("config: levels_per_phonon must be at least 2");
  }

  if (j.contains("penalty_weight")) {
    if (j.at("penalty_weight").is_string()) {
      if (j.at("penalty_weight").get<std::string>() != "auto")
        throw std::invalid_argument("config: penalty_weight must be a number or \"auto\"");
    } else {
      config.penalty_weight = j.at("penalty_weight").get<double>();
      if (*config.penalty_weight < 0.0)
        throw std::invalid_argument("config: penalty_weight must be nonnegative");
    }
  }

  if (j.contains("ansatz")) {
    const auto& ja = j.at("ansatz");
    reject_unknown(ja, {"kind", "reps", "transpile_to_ecr"}, "ansatz.");
    if (ja.contains("kind")) config.ansatz.kind = ansatz_from_name(ja.at("kind").get<std::string>());
    read(ja, "reps", config.ansatz.reps);
    read(ja, "transpile_to_ecr", config.ansatz.transpile_to_ecr);
    if (config.ansatz.reps < 1) throw std::invalid_argument("config: ansatz reps must be positive");
  }

  if (j.contains("optimizer")) read_optimizer(j.at("optimizer"), "optimizer.", config.optimizer);
  if (j.contains("noisy_optimizer"))
    read_optimizer(j.at("noisy_optimizer"), "noisy_optimizer.", config.noisy_optimizer);

  if (j.contains("noise")) {
    const auto& jn = j.at("noise");
    reject_unknown(jn, {"preset", "depolarizing_p", "readout_p01", "readout_p10", "t1_us", "t2_us"},
                   "noise.");
    NoiseConfig noise;
    if (jn.contains("preset")) noise.preset = jn.at("preset").get<std::string>();
    if (jn.contains("depolarizing_p")) noise.depolarizing_p = jn.at("depolarizing_p").get<double>();
    if (jn.contains("readout_p01")) noise.readout_p01 = jn.at("readout_p01").get<double>();
    if (jn.contains("readout_p10")) noise.readout_p10 = jn.at("readout_p10").get<double>();
    if (jn.contains("t1_us")) noise.t1_us = jn.at("t1_us").get<double>();
    if (jn.contains("t2_us")) noise.t2_us = jn.at("t2_us").get<double>();
    config.noise = noise;
  }

  if (j.contains("mitigation")) {
    const auto& jm = j.at("mitigation");
    reject_unknown(jm,
                   {"readout", "zne", "twirling", "dynamical_decoupling", "scale_factors",
                    "extrapolator", "twirl_samples", "dd_suppression"},
                   "mitigation.");
    read(jm, "readout", config.mitigation.readout);
    read(jm, "zne", config.mitigation.zne);
    read(jm, "twirling", config.mitigation.twirling);
    read(jm, "dynamical_decoupling", config.mitigation.dynamical_decoupling);
    if (jm.contains("scale_factors"))
      config.mitigation.zne_spec.scale_factors = jm.at("scale_factors").get<std::vector<int>>();
    if (jm.contains("extrapolator"))
      config.mitigation.zne_spec.extrapolator =
          extrapolator_from_name(jm.at("extrapolator").get<std::string>());
    read(jm, "twirl_samples", config.mitigation.twirl_samples);
    read(jm, "dd_suppression", config.mitigation.dd_suppression);
    config.mitigation.validate();
  }

  if (j.contains("noise_sweep")) {
    const auto& jn = j.at("noise_sweep");
    reject_unknown(jn, {"fidelities", "seeds", "session_iterations"}, "noise_sweep.");
    if (jn.contains("fidelities"))
      config.noise_sweep.fidelities = jn.at("fidelities").get<std::vector<double>>();
    read(jn, "seeds", config.noise_sweep.seeds);
    read(jn, "session_iterations", config.noise_sweep.session_iterations);
    if (config.noise_sweep.session_iterations < 1)
      throw std::invalid_argument("config: noise_sweep session_iterations must be positive");
    for (double f : config.noise_sweep.fidelities)
      if (!(f > 0.9) || f > 1.0)
        throw std::invalid_argument("config: noise_sweep fidelities must lie in (0.9, 1.0]");
    if (config.noise_sweep.seeds < 1)
      throw std::invalid_argument("config: noise_sweep seeds must be positive");
  }

  if (j.contains("mitigate")) {
    const auto& jm = j.at("mitigate");
    reject_unknown(jm, {"trials"}, "mitigate.");
    read(jm, "trials", config.mitigate.trials);
    if (config.mitigate.trials < 1) throw std::invalid_argument("config: mitigate trials must be positive");
  }

  if (j.contains("vqe")) {
    const auto& jv = j.at("vqe");
    reject_unknown(jv, {"optimizers", "plot", "starts"}, "vqe.");
    if (jv.contains("optimizers")) {
      config.vqe_command.optimizers.clear();
      for (const auto& name : jv.at("optimizers"))
        config.vqe_command.optimizers.push_back(optimizer_from_name(name.get<std::string>()));
      if (config.vqe_command.optimizers.empty())
        throw std::invalid_argument("config: vqe.optimizers must not be empty");
    }
    read(jv, "plot", config.vqe_command.plot);
    read(jv, "starts", config.vqe_command.starts);
    if (config.vqe_command.starts < 1)
      throw std::invalid_argument("config: vqe.starts must be positive");
  }

  if (j.contains("kappa")) {
    const auto& jk = j.at("kappa");
    reject_unknown(jk,
                   {"temperatures", "group_velocity", "volume", "anchor_temperature", "anchor_cv",
                    "anchor_kappa", "runs_per_source", "sources", "final_shots"},
                   "kappa.");
    if (jk.contains("temperatures"))
      config.kappa.thermal.temperatures = jk.at("temperatures").get<std::vector<double>>();
    read(jk, "group_velocity", config.kappa.thermal.group_velocity);
    read(jk, "volume", config.kappa.thermal.volume);
    read(jk, "anchor_temperature", config.kappa.thermal.anchors.temperature);
    read(jk, "anchor_cv", config.kappa.thermal.anchors.cv_target);
    read(jk, "anchor_kappa", config.kappa.thermal.anchors.kappa_target);
    read(jk, "runs_per_source", config.kappa.thermal.runs_per_source);
    read(jk, "final_shots", config.kappa.final_shots);
    if (jk.contains("sources")) {
      config.kappa.sources.clear();
      for (const auto& name : jk.at("sources"))
        config.kappa.sources.push_back(kappa_source_from_name(name.get<std::string>()));
      if (config.kappa.sources.empty())
        throw std::invalid_argument("config: kappa.sources must not be empty");
    }
    for (double t : config.kappa.thermal.temperatures)
      if (!(t > 0.0)) throw std::invalid_argument("config: temperatures must be positive");
    if (config.kappa.thermal.runs_per_source < 1)
      throw std::invalid_argument("config: runs_per_source must be positive");
  }

  return config;
}

RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

}  // namespace qphonon

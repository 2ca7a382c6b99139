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

#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qphonon/commands.hpp"

namespace {

struct GlobalFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
  std::optional<std::string> ansatz;
  std::optional<std::string> optimizer;
  std::optional<std::string> noise_preset;
  std::optional<std::string> source;
};

qphonon::RunConfig resolve_config(const GlobalFlags& flags) {
  qphonon::RunConfig config = flags.config_path.empty()
                                  ? qphonon::RunConfig::defaults()
                                  : qphonon::load_config(flags.config_path);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.shots) config.shots = *flags.shots;
  if (!flags.out_dir.empty()) config.output_dir = flags.out_dir;
  if (flags.ansatz) config.ansatz.kind = qphonon::ansatz_from_name(*flags.ansatz);
  if (flags.optimizer) config.optimizer.kind = qphonon::optimizer_from_name(*flags.optimizer);
  if (flags.noise_preset) config.noise.preset = *flags.noise_preset;
  if (flags.source) config.kappa.sources = {qphonon::kappa_source_from_name(*flags.source)};
  return config;
}

void add_global_flags(CLI::App* cmd, GlobalFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--out", flags.out_dir, "Output directory");
  cmd->add_option("--seed", flags.seed, "Random seed override");
  cmd->add_option("--shots", flags.shots, "Shots per energy estimate");
  cmd->add_option("--ansatz", flags.ansatz, "Ansatz kind: custom | efficient-su2");
  cmd->add_option("--optimizer", flags.optimizer,
                  "Optimizer: nelder-mead | powell | spsa | lbfgs | cobyla");
  cmd->add_option("--noise-preset", flags.noise_preset, "Noise preset name (ibm_brisbane)");
  cmd->add_option("--source", flags.source,
                  "Kappa source: exact | vqe-noiseless | vqe-unmitigated | vqe-mitigated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phonon-scattering VQE toolkit"};
  app.require_subcommand(1);

  GlobalFlags flags;
  using Command =
      std::function<qphonon::CommandOutcome(const qphonon::RunConfig&, const std::string&)>;
  struct Entry {
    const char* name;
    const char* help;
    Command run;
  };
  const Entry entries[] = {
      {"hamiltonian", "Build and dump the mapped Hamiltonian", qphonon::cmd_hamiltonian},
      {"dump-circuit", "Dump the ansatz circuit", qphonon::cmd_dump_circuit},
      {"vqe", "Noiseless convergence study over optimizers", qphonon::cmd_vqe},
      {"noise-sweep", "Depolarization sweep over ECR fidelities", qphonon::cmd_noise_sweep},
      {"mitigate", "Compare error-mitigation strategies", qphonon::cmd_mitigate},
      {"kappa", "Thermal-conductivity sweep", qphonon::cmd_kappa},
  };

  const Entry* selected = nullptr;
  for (const auto& entry : entries) {
    CLI::App* cmd = app.add_subcommand(entry.name, entry.help);
    add_global_flags(cmd, flags);
    cmd->callback([&selected, &entry]() { selected = &entry; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const qphonon::RunConfig config = resolve_config(flags);
    const auto outcome = selected->run(config, config.output_dir);
    for (const auto& file : outcome.files)
      std::cout << config.output_dir << "/" << file << "\n";
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

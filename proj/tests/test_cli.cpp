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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "qphonon/commands.hpp"
#include "qphonon/io.hpp"

using namespace qphonon;

namespace {

std::string temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("qphonon_test_" + tag);
  std::filesystem::remove_all(dir);
  return dir.string();
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("defaults parse and validate") {
  const RunConfig config = RunConfig::defaults();
  CHECK(config.system.n_phonons == 3);
  CHECK(config.levels_per_phonon == 2);
  CHECK(config.layout().width() == 6);
  const MappedHamiltonian h = config.build_hamiltonian();
  CHECK(h.pauli.is_hermitian());
  CHECK(h.penalty_weight == doctest::Approx(20.0));
  const Circuit ansatz = config.build_ansatz();
  CHECK(ansatz.count(GateKind::ECR) == 20);
  CHECK(ansatz.count(GateKind::CZ) == 1);
}

TEST_CASE("json parsing honors overrides") {
  const std::string text = R"({
    "seed": 99,
    "shots": 2048,
    "system": {
      "n_phonons": 3,
      "levels_per_phonon": 2,
      "frequencies": [1.0, 0.5, 0.5],
      "coupling3": [{"modes": [0, 1, 2], "phi": 2.5}]
    },
    "penalty_weight": 12.5,
    "ansatz": {"kind": "efficient-su2", "reps": 2, "transpile_to_ecr": false},
    "optimizer": {"kind": "powell", "max_iterations": 55},
    "noise": {"preset": "ibm_brisbane", "depolarizing_p": 0.02},
    "mitigation": {"zne": true, "scale_factors": [1, 3], "extrapolator": "linear"},
    "kappa": {"temperatures": [100.0, 200.0], "sources": ["exact"]}
  })";
  const RunConfig config = parse_config(text);
  CHECK(config.seed == 99);
  CHECK(config.shots == 2048);
  CHECK(config.system.phi3({0, 1, 2}) == doctest::Approx(2.5));
  CHECK(config.penalty_weight.value() == doctest::Approx(12.5));
  CHECK(config.ansatz.kind == AnsatzKind::EfficientSu2);
  CHECK(!config.ansatz.transpile_to_ecr);
  CHECK(config.optimizer.kind == OptimizerKind::Powell);
  CHECK(config.optimizer.max_iterations == 55);
  const NoiseModel noise = config.noise.build(6);
  CHECK(noise.depolarizing_p == doctest::Approx(0.02));  // explicit value wins
  CHECK(noise.readout.size() == 6);                      // preset readout kept
  CHECK(config.mitigation.zne_spec.extrapolator == Extrapolator::Linear);
  CHECK(config.kappa.thermal.temperatures.size() == 2);
  CHECK(config.kappa.sources.size() == 1);
}

TEST_CASE("unknown keys are rejected everywhere") {
  CHECK_THROWS_AS(parse_config(R"({"sedd": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"system": {"n_phonons": 3, "frequencies": [1,0.5,0.5], "bogus": 1}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"mitigation": {"zne": true, "scale": [1,3]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"noise_sweep": {"fidelities": [0.5]}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"shots": 0})"), std::invalid_argument);
}

TEST_CASE("hamiltonian command writes deterministic outputs") {
  RunConfig config = RunConfig::defaults();
  const std::string dir_a = temp_dir("ham_a");
  const std::string dir_b = temp_dir("ham_b");
  const auto out_a = cmd_hamiltonian(config, dir_a);
  const auto out_b = cmd_hamiltonian(config, dir_b);
  REQUIRE(out_a.files == out_b.files);
  for (const auto& name : out_a.files)
    CHECK(read_text_file(dir_a + "/" + name) == read_text_file(dir_b + "/" + name));

  const PauliSum parsed = PauliSum::from_text(read_text_file(dir_a + "/hamiltonian.txt"));
  CHECK(parsed.width() == 6);
  CHECK(parsed.simplified().is_hermitian());
  CHECK(read_text_file(dir_a + "/manifest.json").find("config_hash") != std::string::npos);
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}

TEST_CASE("zero couplings produce an empty dump") {
  RunConfig config = RunConfig::defaults();
  config.system.coupling3.clear();
  config.penalty_weight = 0.0;
  const std::string dir = temp_dir("ham_zero");
  cmd_hamiltonian(config, dir);
  CHECK(read_text_file(dir + "/hamiltonian.txt").empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("dump-circuit reports the published counts") {
  RunConfig config = RunConfig::defaults();
  config.ansatz.transpile_to_ecr = false;
  const std::string dir = temp_dir("circ");
  cmd_dump_circuit(config, dir);
  const std::string text = read_text_file(dir + "/circuit.txt");
  const Circuit parsed = Circuit::from_text(text);
  CHECK(parsed.n_parameters == 24);
  CHECK(parsed.count(GateKind::CNOT) == 20);
  CHECK(parsed.count(GateKind::CZ) == 1);
  const std::string report = read_text_file(dir + "/circuit_report.json");
  CHECK(report.find("\"cnot\": 20") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("vqe command emits history, summary and plot") {
  RunConfig config = RunConfig::defaults();
  config.vqe_command.optimizers = {OptimizerKind::LbfgsFd};
  config.optimizer.max_iterations = 200;
  const std::string dir = temp_dir("vqe");
  cmd_vqe(config, dir);
  const std::string csv = read_text_file(dir + "/convergence_lbfgs.csv");
  CHECK(csv.rfind("evaluation,energy\n", 0) == 0);
  CHECK(count_occurrences(csv, "\n") > 100);
  const std::string summary = read_text_file(dir + "/summary.json");
  CHECK(summary.find("\"lbfgs\"") != std::string::npos);
  CHECK(summary.find("reference_energy") != std::string::npos);
  const std::string svg = read_text_file(dir + "/convergence.svg");
  CHECK(count_occurrences(svg, "<polyline") == 1);

  // Same config and seed reproduce the history byte for byte.
  const std::string dir2 = temp_dir("vqe2");
  cmd_vqe(config, dir2);
  CHECK(read_text_file(dir2 + "/convergence_lbfgs.csv") == csv);
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("svg plot renders one polyline per series plus bands") {
  SvgPlot plot;
  plot.log_y = true;
  SvgSeries a;
  a.label = "a";
  a.points = {{1.0, 10.0}, {2.0, 100.0}};
  a.band = {1.0, 5.0};
  SvgSeries b;
  b.label = "b";
  b.points = {{1.0, 20.0}, {2.0, 50.0}};
  plot.series = {a, b};
  const std::string svg = plot.render();
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(count_occurrences(svg, "<path") == 1);  // one band
  CHECK(svg.find("</svg>") != std::string::npos);

  SvgBarChart chart;
  chart.labels = {"x", "y", "z"};
  chart.values = {1.0, -0.5, 2.0};
  chart.errors = {0.1, 0.1, 0.4};
  const std::string bars = chart.render();
  CHECK(count_occurrences(bars, "<rect") == 1 + 3);  // background + bars
}

TEST_CASE("config canonical json hash is stable against reordering") {
  const RunConfig a = parse_config(R"({"seed": 5, "shots": 4096})");
  const RunConfig b = parse_config(R"({"shots": 4096, "seed": 5})");
  CHECK(a.canonical_json() == b.canonical_json());
  CHECK(fnv1a_hash(a.canonical_json()) == fnv1a_hash(b.canonical_json()));
}

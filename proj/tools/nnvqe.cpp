// Copyright 2026 The nnvqe Authors
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

// nnvqe: train a neural network to act as a VQE optimizer and evaluate it on
// simulated noisy devices.

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "nnvqe/experiment.hpp"

namespace {

using nnvqe::ExperimentSpec;

struct Raw {
  std::string system = "H2_1Q";
  std::string shots = "exact";
  std::string ham_dir;
  std::string data, model;
  int cutoff = 0;
  int batch_size = 0;
  double distance = std::numeric_limits<double>::quiet_NaN();
  double noise_range_pi = 0.1;
};

void common(CLI::App* app, ExperimentSpec& s, Raw& raw) {
  app->add_option("--system", raw.system, "H2_1Q, H2_2Q, H3_3Q or HEHP_4Q")->capture_default_str();
  app->add_option("--ham-dir", raw.ham_dir, "directory of Hamiltonian JSON files (default: synthetic 1q family)");
  app->add_option("--seed", s.seed, "master seed")->capture_default_str();
  app->add_option("--shots", raw.shots, "shots per Pauli term, or 'exact'")->capture_default_str();
  app->add_option("--lambda", s.depolarizing_lambda, "global depolarization strength")->capture_default_str();
  app->add_option("--out", s.out, "output directory")->capture_default_str();
}

ExperimentSpec finish(ExperimentSpec s, const Raw& raw) {
  s.system = nnvqe::parse_system_id(raw.system);
  if (!raw.ham_dir.empty()) s.ham_dir = raw.ham_dir;
  if (raw.shots != "exact") {
    try {
      std::size_t used = 0;
      const int n = std::stoi(raw.shots, &used);
      if (used != raw.shots.size() || n < 1) throw std::invalid_argument("");
      s.shots = n;
    } catch (const std::exception&) {
      throw CLI::ValidationError("--shots", "expected a positive integer or 'exact'");
    }
  }
  if (raw.cutoff > 0) s.cutoff = raw.cutoff;
  if (raw.batch_size > 0) s.batch_size = raw.batch_size;
  if (!raw.data.empty()) s.data_path = raw.data;
  if (!raw.model.empty()) s.model_path = raw.model;
  if (!std::isnan(raw.distance)) s.distance = raw.distance;
  s.noise_range = raw.noise_range_pi * std::numbers::pi;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural-network VQE optimizer toolkit"};
  app.require_subcommand(1);
  ExperimentSpec s;
  Raw raw;
  std::string ham_file;
  std::vector<double> offsets_pi;

  auto* gen = app.add_subcommand("gen-data", "harvest optimizer traces into a training set");
  common(gen, s, raw);
  gen->add_option("--train-points", s.train_points, "training Hamiltonians")->capture_default_str();
  gen->add_option("--runs", s.runs_per_point, "optimizer runs per training Hamiltonian")->capture_default_str();
  gen->add_option("--cutoff", raw.cutoff, "harvest cutoff (default 10 for 1-2 qubits, 30 otherwise)");
  gen->add_flag("--full-traces", s.full_traces, "keep whole optimizer runs instead of the first CUTOFF steps");
  gen->add_flag("--reuse-steps", s.reuse_steps, "pair every training Hamiltonian with the steps of every run");
  gen->add_option("--offsets", offsets_pi, "offset grid magnitudes, in units of pi");
  gen->add_option("--data", raw.data, "dataset path (default OUT/dataset.jsonl)");

  auto* trn = app.add_subcommand("train", "train the network on a dataset");
  common(trn, s, raw);
  trn->add_option("--data", raw.data, "dataset path (default OUT/dataset.jsonl)");
  trn->add_option("--model", raw.model, "checkpoint path (default OUT/model.ckpt; .json for text)");
  trn->add_option("--epochs", s.epochs)->capture_default_str();
  trn->add_option("--batch-size", raw.batch_size, "default 8 (H2_1Q), 128 (HEHP_4Q), 16 otherwise");
  trn->add_option("--learning-rate", s.learning_rate)->capture_default_str();
  trn->add_option("--final-lr-fraction", s.final_lr_fraction, "cosine decay target, 1 = constant")->capture_default_str();
  trn->add_option("--test-fraction", s.test_fraction)->capture_default_str();
  trn->add_option("--min-hidden", s.min_hidden, "lower bound on hidden widths")->capture_default_str();
  trn->add_flag("!--raw-inputs", s.normalize_inputs, "skip input standardization");
  trn->add_flag("--allow-unmet", s.allow_unmet, "exit 0 even if the MSE targets are missed");

  auto* swp = app.add_subcommand("sweep", "predict ground energies along the test curve");
  common(swp, s, raw);
  swp->add_option("--model", raw.model, "checkpoint path (default OUT/model.ckpt)");
  swp->add_option("--test-points", s.test_points)->capture_default_str();
  swp->add_option("--iterations", s.iterations)->capture_default_str();
  swp->add_option("--chemical-accuracy", s.chemical_accuracy)->capture_default_str();

  auto* cmp = app.add_subcommand("compare", "network vs Nelder-Mead energy trajectories");
  common(cmp, s, raw);
  cmp->add_option("--model", raw.model, "checkpoint path (default OUT/model.ckpt)");
  cmp->add_option("--iterations", s.iterations)->capture_default_str();
  cmp->add_option("--budget", s.baseline_budget, "baseline evaluations shown")->capture_default_str();
  cmp->add_option("--distance", raw.distance, "Hamiltonian distance (default: middle of the family)");

  auto* noisy = app.add_subcommand("noisy-devices", "evaluate on devices with random rotation offsets");
  common(noisy, s, raw);
  noisy->add_option("--model", raw.model, "checkpoint path (default OUT/model.ckpt)");
  noisy->add_option("--iterations", s.iterations)->capture_default_str();
  noisy->add_option("--devices", s.devices)->capture_default_str();
  noisy->add_option("--noise-range", raw.noise_range_pi, "offset half-range, in units of pi")->capture_default_str();
  noisy->add_option("--tolerance", s.device_tol, "energy gap counted as success")->capture_default_str();
  noisy->add_option("--distance", raw.distance, "Hamiltonian distance (default: middle of the family)");

  auto* diag = app.add_subcommand("diag", "exact ground energy of a Hamiltonian file");
  diag->add_option("file", ham_file, "Hamiltonian JSON")->required();
  diag->add_option("--out", s.out, "output directory")->capture_default_str();

  auto* mit = app.add_subcommand("mitigate-check", "reference-circuit depolarization estimate");
  common(mit, s, raw);

  CLI11_PARSE(app, argc, argv);

  try {
    for (double m : offsets_pi) s.offset_magnitudes.push_back(m * std::numbers::pi);
    if (!ham_file.empty()) s.ham_file = ham_file;
    const ExperimentSpec spec = finish(s, raw);
    if (gen->parsed()) return nnvqe::cmd_gen_data(spec, std::cout);
    if (trn->parsed()) return nnvqe::cmd_train(spec, std::cout);
    if (swp->parsed()) return nnvqe::cmd_sweep(spec, std::cout);
    if (cmp->parsed()) return nnvqe::cmd_compare(spec, std::cout);
    if (noisy->parsed()) return nnvqe::cmd_noisy_devices(spec, std::cout);
    if (diag->parsed()) return nnvqe::cmd_diag(spec, std::cout);
    if (mit->parsed()) return nnvqe::cmd_mitigate_check(spec, std::cout);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

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

#pragma once

// End-to-end experiments behind the command-line subcommands. Each cmd_*
// writes its outputs under spec.out and returns a process exit code.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nnvqe/ansatz.hpp"
#include "nnvqe/dataset.hpp"
#include "nnvqe/mlp.hpp"
#include "nnvqe/pauli.hpp"

namespace nnvqe {

inline constexpr double kChemicalAccuracy = 1.6e-3;

struct ExperimentSpec {
  SystemId system = SystemId::kH2_1Q;
  /// Directory of coefficient files; empty selects the synthetic family
  /// (one-qubit only).
  std::optional<std::filesystem::path> ham_dir;
  std::uint64_t seed = 1;
  std::optional<int> shots;  ///< nullopt = exact expectations
  double depolarizing_lambda = 0.0;

  // data generation
  std::optional<int> cutoff;  ///< default per system
  bool full_traces = false;   ///< keep every evaluation instead of harvesting
  int train_points = 5;
  int runs_per_point = 1;
  /// Pair every training Hamiltonian with the steps of every trace, not
  /// only its own (expectations at fixed angles do not depend on h).
  bool reuse_steps = false;
  std::vector<double> offset_magnitudes;  ///< empty: no augmentation

  // training
  int epochs = 1000;
  std::optional<int> batch_size;  ///< default per system
  double learning_rate = 1e-2;
  double final_lr_fraction = 1e-3;
  double test_fraction = 0.01;
  int min_hidden = 16;
  bool normalize_inputs = true;
  bool allow_unmet = false;

  // evaluation
  int test_points = 51;
  int iterations = 5;
  int baseline_budget = 40;
  int devices = 30;
  double noise_range = 0.1 * 3.14159265358979323846;
  double device_tol = 1e-2;
  double chemical_accuracy = kChemicalAccuracy;
  std::optional<double> distance;  ///< Hamiltonian used by compare / noisy-devices

  std::filesystem::path out = ".";
  std::optional<std::filesystem::path> data_path;
  std::optional<std::filesystem::path> model_path;
  std::optional<std::filesystem::path> ham_file;
};

/// Files in `dir` ordered by distance (then file name).
std::vector<PauliHamiltonian> load_family(const std::filesystem::path& dir);

std::vector<PauliHamiltonian> training_hamiltonians(const ExperimentSpec& spec);
std::vector<PauliHamiltonian> test_hamiltonians(const ExperimentSpec& spec);
TermSchema family_schema(const ExperimentSpec& spec);
int default_batch_size(SystemId id);

struct GenDataResult {
  Dataset dataset;
  std::size_t base_samples = 0;
};
GenDataResult generate_dataset(const ExperimentSpec& spec);

struct TrainResult {
  MlpModel model;
  TrainHistory history;
  double train_mse = 0.0;
  double test_mse = 0.0;
  std::vector<TrainingSample> test_samples;  ///< the held-out split
};
TrainResult train_on(const ExperimentSpec& spec, const Dataset& d);

struct SweepRow {
  double distance;
  double predicted;
  double exact;
  double error;
};
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec, const MlpModel& m);

struct DeviceRow {
  std::vector<double> epsilon;
  double oracle;
  double nn_best;
  double gap;
  double baseline_best;
};
std::vector<DeviceRow> run_noisy_devices(const ExperimentSpec& spec, const MlpModel& m);

int cmd_gen_data(const ExperimentSpec& spec, std::ostream& log);
int cmd_train(const ExperimentSpec& spec, std::ostream& log);
int cmd_sweep(const ExperimentSpec& spec, std::ostream& log);
int cmd_compare(const ExperimentSpec& spec, std::ostream& log);
int cmd_noisy_devices(const ExperimentSpec& spec, std::ostream& log);
int cmd_diag(const ExperimentSpec& spec, std::ostream& log);
int cmd_mitigate_check(const ExperimentSpec& spec, std::ostream& log);

/// Fixed "%.12g" rendering used in every CSV.
std::string fmt(double x);

}  // namespace nnvqe

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

// Four-weight-layer ReLU perceptron mapping a layout vector to angle deltas.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nnvqe/dataset.hpp"
#include "nnvqe/pauli.hpp"

namespace nnvqe {

inline constexpr int kWeightLayers = 4;
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct DenseLayer {
  Eigen::MatrixXd weight;  ///< out x in
  Eigen::VectorXd bias;
};

struct MlpModel {
  std::vector<int> widths;  ///< kWeightLayers + 1 entries, input first
  std::vector<DenseLayer> layers;
  std::string system;
  TermSchema schema;
  std::uint64_t seed = 0;
  /// Test MSE recorded at save time, if known.
  std::optional<double> recorded_test_mse;
  /// Inputs are standardized as (x - input_shift) * input_scale before the
  /// first layer. Empty means identity.
  Eigen::VectorXd input_shift;
  Eigen::VectorXd input_scale;

  int input_dim() const { return widths.front(); }
  int output_dim() const { return widths.back(); }

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  std::vector<double> forward(std::span<const double> x) const;
  /// Columns are samples.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x) const;
  /// Applies the input standardization.
  Eigen::MatrixXd normalize(const Eigen::MatrixXd& x) const;
};

/// input, then hidden widths max(ceil(prev / 2), max(out, min_hidden)), then out.
std::vector<int> halving_widths(int input, int output, int min_hidden = 0);

/// Throws InvalidArgument unless widths has kWeightLayers + 1 positive entries.
void check_widths(std::span<const int> widths);

/// Weights ~ N(0, 2 / fan_in), biases 0.
MlpModel init_he(std::span<const int> widths, std::uint64_t seed);

/// Same shapes, all parameters zero.
MlpModel zero_model(std::span<const int> widths);

struct Gradients {
  std::vector<DenseLayer> layers;
  double loss = 0.0;
};

/// Gradient of the mean squared error, averaged over batch columns and
/// output components. ReLU'(0) is taken as 0.
Gradients backward(const MlpModel& m, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// Sets input_shift / input_scale to the per-feature mean and 1/std of
/// `samples`. Constant features get scale 1.
void fit_input_normalization(MlpModel& m, const std::vector<TrainingSample>& samples);

/// Mean squared error over samples and outputs.
double mse(const MlpModel& m, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);
double mse(const MlpModel& m, const std::vector<TrainingSample>& samples);

/// Packs samples column-wise.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> to_matrices(const std::vector<TrainingSample>& samples);

enum class UpdateRule { kAdam, kSgd };

struct TrainConfig {
  int epochs = 1000;
  int batch_size = 8;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  UpdateRule rule = UpdateRule::kAdam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  /// Cosine decay of the step size from learning_rate down to
  /// learning_rate * final_lr_fraction over the run. 1 disables it.
  double final_lr_fraction = 1.0;
};

struct TrainHistory {
  std::vector<double> train_mse;  ///< per epoch, after the epoch's updates
  std::vector<double> test_mse;   ///< empty when no test set was given
};

/// Minibatch training with a seeded per-epoch shuffle. Throws
/// NumericalError naming the epoch if the loss becomes non-finite.
TrainHistory train(MlpModel& m, const std::vector<TrainingSample>& train_set,
                   const std::vector<TrainingSample>& test_set, const TrainConfig& cfg);

/// Binary checkpoint unless the extension is ".json".
void save_model(const std::filesystem::path& path, const MlpModel& m);
MlpModel load_model(const std::filesystem::path& path);
std::string model_to_json(const MlpModel& m);
MlpModel model_from_json(std::string_view text);
std::string model_to_binary(const MlpModel& m);
MlpModel model_from_binary(std::string_view bytes);

/// Throws SchemaMismatch when the model was trained on a different schema.
void require_schema(const MlpModel& m, const TermSchema& schema);

}  // namespace nnvqe

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

// The trained network used as the optimizer: measure, predict a delta,
// step, and keep the lowest energy seen.

#include <optional>
#include <span>
#include <vector>

#include "nnvqe/ansatz.hpp"
#include "nnvqe/mitigation.hpp"
#include "nnvqe/mlp.hpp"
#include "nnvqe/statevector.hpp"

namespace nnvqe {

struct PredictorConfig {
  int iterations = 5;
  std::optional<DepolarizationEstimate> mitigation;
};

/// `expectations` follow h's term order. Returns the network's angle delta.
std::vector<double> predict_step(const MlpModel& m, const PauliHamiltonian& h, const TermSchema& schema,
                                 std::span<const double> angles, std::span<const double> expectations);

struct PredictorResult {
  std::vector<double> best_angles;
  double best_energy = 0.0;
  /// Measured energy per visited point; entry 0 is the starting point, so
  /// there are iterations + 1 entries.
  std::vector<double> energies;
  std::vector<std::vector<double>> angles;
};

/// Runs the loop on a fresh Device built from `device`. The Hamiltonian is
/// padded to the model schema before measuring.
PredictorResult predictor_loop(const MlpModel& m, const PauliHamiltonian& h, const AnsatzCircuit& ansatz,
                               const DeviceConfig& device, std::span<const double> initial_angles,
                               const PredictorConfig& cfg = {});

}  // namespace nnvqe

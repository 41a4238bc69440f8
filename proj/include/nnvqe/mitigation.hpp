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

// Reference-state depolarization mitigation. Stripping the rotations from an
// ansatz leaves a Clifford circuit whose Z...Z expectation is exactly +1 or -1,
// so on a depolarizing device the measured value is p times that sign. Other
// expectations are then divided by p.

#include <span>
#include <vector>

#include "nnvqe/ansatz.hpp"
#include "nnvqe/statevector.hpp"

namespace nnvqe {

struct DepolarizationEstimate {
  double p = 1.0;
  int ideal_sign = 1;
  /// Set iff p >= 1: shot noise dominates and no correction is applied.
  bool skip = true;
};

enum class ReferenceCircuit {
  kStripRotations,  ///< remove every RY/RZ gate
  kZeroAngles,      ///< run the full ansatz with all angles at 0
};

/// Measures Z^n on the reference circuit with `device` (which advances its
/// random stream). The sign comes from a noiseless simulation.
DepolarizationEstimate estimate_depolarization(const AnsatzCircuit& ansatz, Device& device,
                                               ReferenceCircuit mode = ReferenceCircuit::kStripRotations);
DepolarizationEstimate estimate_depolarization(const AnsatzCircuit& ansatz,
                                               const DeviceConfig& device,
                                               ReferenceCircuit mode = ReferenceCircuit::kStripRotations);

/// Divides every non-identity entry by p and clamps to [-1, 1]; returns the
/// input unchanged when est.skip. Throws InvalidArgument if p <= 0.
std::vector<double> mitigate(std::span<const double> expectations, const PauliHamiltonian& h,
                             const DepolarizationEstimate& est);

}  // namespace nnvqe

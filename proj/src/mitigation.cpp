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

#include "nnvqe/mitigation.hpp"

#include <algorithm>
#include <cmath>

#include "nnvqe/error.hpp"

namespace nnvqe {

DepolarizationEstimate estimate_depolarization(const AnsatzCircuit& ansatz, Device& device,
                                               ReferenceCircuit mode) {
  const auto all_z = PauliString(std::string(static_cast<std::size_t>(ansatz.num_qubits()), 'Z'));

  const AnsatzCircuit stripped = reference_clifford(ansatz);
  const double ideal =
      expectation_from_state(run_circuit(stripped.circuit, {}, NoiseModel::ideal(0)), all_z);
  if (std::abs(std::abs(ideal) - 1.0) > 1e-9) {
    throw NumericalError("reference circuit does not prepare a Z-basis eigenstate");
  }

  double measured = 0.0;
  if (mode == ReferenceCircuit::kStripRotations) {
    NoiseModel noise{{}, device.config().noise.depolarizing_lambda};
    measured = device.measure(run_circuit(stripped.circuit, {}, noise), all_z);
  } else {
    const std::vector<double> zeros(static_cast<std::size_t>(ansatz.param_count()), 0.0);
    measured = device.measure(run_circuit(ansatz.circuit, zeros, device.config().noise), all_z);
  }

  DepolarizationEstimate est;
  est.ideal_sign = ideal > 0 ? 1 : -1;
  est.p = measured * est.ideal_sign;
  est.skip = est.p >= 1.0;
  return est;
}

DepolarizationEstimate estimate_depolarization(const AnsatzCircuit& ansatz,
                                               const DeviceConfig& device, ReferenceCircuit mode) {
  Device d(device);
  return estimate_depolarization(ansatz, d, mode);
}

std::vector<double> mitigate(std::span<const double> expectations, const PauliHamiltonian& h,
                             const DepolarizationEstimate& est) {
  if (expectations.size() != h.size()) {
    throw DimensionError("expectation vector does not match the Hamiltonian");
  }
  std::vector<double> out(expectations.begin(), expectations.end());
  if (est.skip) return out;
  if (!(est.p > 0.0)) {
    throw InvalidArgument("depolarization estimate p = " + std::to_string(est.p) +
                          " cannot be inverted");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (h.terms()[i].label.is_identity()) continue;
    out[i] = std::clamp(out[i] / est.p, -1.0, 1.0);
  }
  return out;
}

}  // namespace nnvqe

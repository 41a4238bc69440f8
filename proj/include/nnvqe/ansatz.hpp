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

// The four fixed circuits: 1q hardware-efficient, 2q reduced UCC, 3q layered
// hardware-efficient and the 4q simplified UCCSD, plus the rotation-stripped
// reference circuit used for depolarization estimates.

#include <string>
#include <string_view>
#include <vector>

#include "nnvqe/statevector.hpp"

namespace nnvqe {

enum class SystemId { kH2_1Q, kH2_2Q, kH3_3Q, kHeHp_4Q };

/// "H2_1Q", "H2_2Q", "H3_3Q", "HEHP_4Q".
std::string_view system_name(SystemId id);
/// Inverse of system_name (case-insensitive). Throws InvalidArgument.
SystemId parse_system_id(std::string_view name);
int system_qubits(SystemId id);

struct AnsatzCircuit {
  SystemId system;
  Circuit circuit;

  int num_qubits() const { return circuit.num_qubits; }
  int param_count() const { return circuit.param_count; }
};

/// Layered hardware-efficient circuit: X on each `prep_x` qubit, then
/// `layers + 1` rotation blocks (RY, optionally followed by RZ, on every
/// qubit) separated by CX ladders CX(n-2 -> n-1), ..., CX(0 -> 1).
/// RY on qubit q in block b uses slot b*k*n + q, RZ uses b*k*n + n + q,
/// where k is 2 with RZ and 1 without.
Circuit hardware_efficient(int num_qubits, int layers, bool with_rz,
                           const std::vector<int>& prep_x);

/// The circuit for `id`. `hea_layers` only affects H3_3Q (2 gives 18 angles).
AnsatzCircuit build_ansatz(SystemId id, int hea_layers = 2);

/// HEHP_4Q state with the doubles slot at 4*t2 and both singles at zero:
/// cos(t2)|0101> + sin(t2)|1010>.
StateVector doubles_state_check(double t2);

/// Removes every RY/RZ gate; the result has no angle slots.
AnsatzCircuit reference_clifford(const AnsatzCircuit& ansatz);

/// One gate per line: `GATE target [control] [slot k × 1/d]`.
std::string dump_circuit(const Circuit& circuit);

}  // namespace nnvqe

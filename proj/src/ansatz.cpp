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

#include "nnvqe/ansatz.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nnvqe/error.hpp"

namespace nnvqe {
namespace {

Circuit reduced_ucc_two_qubit() {
  // HF state |10>; excitations stay in span{|01>, |10>}.
  Circuit c{2, 1, {}};
  c.gates = {Gate::ry(0, 0), Gate::x(1), Gate::cx(0, 1)};
  return c;
}

Circuit simplified_uccsd_four_qubit() {
  // Slot 0 drives the doubles amplitude, slots 1 and 2 the singles on the
  // (2,3) and (0,1) pairs. HF state |0101>.
  Circuit c{4, 3, {}};
  c.gates = {
      Gate::x(0),        Gate::h(0),        Gate::ry(1, 0, 2), Gate::x(2),
      Gate::x(3),        Gate::h(3),        Gate::cx(1, 2),    Gate::sdg(1),
      Gate::sdg(2),      Gate::cx(0, 1),    Gate::cx(3, 2),    Gate::sdg(0),
      Gate::s(1),        Gate::s(2),        Gate::sdg(3),      Gate::ry(0, 2, 4),
      Gate::ry(1, 2, 4), Gate::ry(2, 1, 4), Gate::ry(3, 1, 4), Gate::cx(0, 1),
      Gate::cx(3, 2),    Gate::h(0),        Gate::h(3),
  };
  return c;
}

}  // namespace

std::string_view system_name(SystemId id) {
  switch (id) {
    case SystemId::kH2_1Q: return "H2_1Q";
    case SystemId::kH2_2Q: return "H2_2Q";
    case SystemId::kH3_3Q: return "H3_3Q";
    case SystemId::kHeHp_4Q: return "HEHP_4Q";
  }
  return "?";
}

SystemId parse_system_id(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  for (auto id : {SystemId::kH2_1Q, SystemId::kH2_2Q, SystemId::kH3_3Q, SystemId::kHeHp_4Q}) {
    if (upper == system_name(id)) return id;
  }
  throw InvalidArgument("unknown system id \"" + std::string(name) + "\"");
}

int system_qubits(SystemId id) {
  switch (id) {
    case SystemId::kH2_1Q: return 1;
    case SystemId::kH2_2Q: return 2;
    case SystemId::kH3_3Q: return 3;
    case SystemId::kHeHp_4Q: return 4;
  }
  return 0;
}

Circuit hardware_efficient(int num_qubits, int layers, bool with_rz,
                           const std::vector<int>& prep_x) {
  if (num_qubits < 1) throw InvalidArgument("hardware-efficient ansatz needs qubits");
  if (layers < 0) throw InvalidArgument("negative layer count");
  const int per_block = (with_rz ? 2 : 1) * num_qubits;
  Circuit c{num_qubits, per_block * (layers + 1), {}};
  for (int q : prep_x) c.gates.push_back(Gate::x(q));
  for (int block = 0; block <= layers; ++block) {
    if (block > 0) {
      for (int q = num_qubits - 2; q >= 0; --q) c.gates.push_back(Gate::cx(q, q + 1));
    }
    for (int q = 0; q < num_qubits; ++q) {
      c.gates.push_back(Gate::ry(q, block * per_block + q));
      if (with_rz) c.gates.push_back(Gate::rz(q, block * per_block + num_qubits + q));
    }
  }
  validate(c);
  return c;
}

AnsatzCircuit build_ansatz(SystemId id, int hea_layers) {
  switch (id) {
    case SystemId::kH2_1Q: {
      Circuit c{1, 2, {Gate::ry(0, 0), Gate::rz(0, 1)}};
      return {id, c};
    }
    case SystemId::kH2_2Q:
      return {id, reduced_ucc_two_qubit()};
    case SystemId::kH3_3Q:
      // HF state |010>.
      return {id, hardware_efficient(3, hea_layers, true, {1})};
    case SystemId::kHeHp_4Q:
      return {id, simplified_uccsd_four_qubit()};
  }
  throw InvalidArgument("unknown system id");
}

StateVector doubles_state_check(double t2) {
  const auto a = build_ansatz(SystemId::kHeHp_4Q);
  const std::vector<double> theta = {4.0 * t2, 0.0, 0.0};
  return run_circuit(a.circuit, theta, NoiseModel::ideal(a.param_count()));
}

AnsatzCircuit reference_clifford(const AnsatzCircuit& ansatz) {
  AnsatzCircuit out{ansatz.system, {ansatz.num_qubits(), 0, {}}};
  for (const auto& g : ansatz.circuit.gates) {
    if (!g.is_rotation()) out.circuit.gates.push_back(g);
  }
  return out;
}

std::string dump_circuit(const Circuit& circuit) {
  std::ostringstream os;
  for (const auto& g : circuit.gates) {
    os << gate_name(g.kind) << ' ' << g.target;
    if (g.kind == GateKind::kCX) os << ' ' << g.control;
    if (g.slot) {
      os << " slot " << *g.slot << " × ";
      if (g.scale_divisor == 1) {
        os << '1';
      } else {
        os << "1/" << g.scale_divisor;
      }
    } else if (g.is_rotation()) {
      os << " angle " << g.constant_angle;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace nnvqe

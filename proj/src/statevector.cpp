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

#include "nnvqe/statevector.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "nnvqe/error.hpp"

namespace nnvqe {
namespace {

using Matrix2 = std::array<Complex, 4>;  // row-major

Matrix2 single_qubit_matrix(GateKind kind, double angle) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::kX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::kH: return {r, r, r, -r};
    case GateKind::kS: return {1.0, 0.0, 0.0, Complex{0.0, 1.0}};
    case GateKind::kSdg: return {1.0, 0.0, 0.0, Complex{0.0, -1.0}};
    case GateKind::kRY: {
      const double c = std::cos(angle / 2.0);
      const double s = std::sin(angle / 2.0);
      return {c, -s, s, c};
    }
    case GateKind::kRZ:
      return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    case GateKind::kCX: break;
  }
  throw InvalidArgument("not a single-qubit gate");
}

void check_qubit(const StateVector& state, int q) {
  if (q < 0 || q >= state.num_qubits()) {
    throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                          std::to_string(state.num_qubits()) + " qubits");
  }
}

}  // namespace

StateVector::StateVector(int num_qubits) : StateVector(basis(num_qubits, 0)) {}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits_ < 1 || num_qubits_ > 30) {
    throw InvalidArgument("unsupported qubit count " + std::to_string(num_qubits_));
  }
  if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
    throw DimensionError("amplitude vector of length " + std::to_string(amplitudes_.size()) +
                         " for " + std::to_string(num_qubits_) + " qubits");
  }
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw InvalidArgument("unsupported qubit count " + std::to_string(num_qubits));
  }
  std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  if (index >= amps.size()) throw InvalidArgument("basis index out of range");
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kX: return "X";
    case GateKind::kH: return "H";
    case GateKind::kS: return "S";
    case GateKind::kSdg: return "Sdg";
    case GateKind::kRY: return "RY";
    case GateKind::kRZ: return "RZ";
    case GateKind::kCX: return "CX";
  }
  return "?";
}

void validate(const Circuit& circuit) {
  const auto in_range = [&](int q) { return q >= 0 && q < circuit.num_qubits; };
  if (circuit.num_qubits < 1) throw InvalidArgument("circuit needs at least one qubit");
  if (circuit.param_count < 0) throw InvalidArgument("negative parameter count");
  for (const auto& g : circuit.gates) {
    if (!in_range(g.target)) throw InvalidArgument("gate target out of range");
    if (g.kind == GateKind::kCX) {
      if (!in_range(g.control)) throw InvalidArgument("CX control out of range");
      if (g.control == g.target) throw InvalidArgument("CX control equals target");
    }
    if (g.scale_divisor != 1 && g.scale_divisor != 2 && g.scale_divisor != 4) {
      throw InvalidArgument("unsupported angle scale 1/" + std::to_string(g.scale_divisor));
    }
    if (g.slot && (*g.slot < 0 || *g.slot >= circuit.param_count)) {
      throw InvalidArgument("angle slot " + std::to_string(*g.slot) + " out of range");
    }
    if (g.slot && !g.is_rotation()) throw InvalidArgument("slot on a fixed gate");
  }
}

void apply_gate_in_place(StateVector& state, const Gate& gate, double resolved_angle) {
  check_qubit(state, gate.target);
  const std::size_t dim = state.dimension();
  const std::size_t tbit = std::size_t{1} << gate.target;

  if (gate.kind == GateKind::kCX) {
    check_qubit(state, gate.control);
    if (gate.control == gate.target) throw InvalidArgument("CX control equals target");
    const std::size_t cbit = std::size_t{1} << gate.control;
    for (std::size_t j = 0; j < dim; ++j) {
      if ((j & cbit) && !(j & tbit)) std::swap(state[j], state[j | tbit]);
    }
    return;
  }

  const Matrix2 m = single_qubit_matrix(gate.kind, resolved_angle);
  for (std::size_t j = 0; j < dim; ++j) {
    if (j & tbit) continue;
    const Complex a0 = state[j];
    const Complex a1 = state[j | tbit];
    state[j] = m[0] * a0 + m[1] * a1;
    state[j | tbit] = m[2] * a0 + m[3] * a1;
  }
}

StateVector apply_gate(StateVector state, const Gate& gate, double resolved_angle) {
  apply_gate_in_place(state, gate, resolved_angle);
  return state;
}

double resolve_angle(const Gate& gate, std::span<const double> params,
                     std::span<const double> offsets) {
  if (!gate.slot) return gate.constant_angle;
  const auto k = static_cast<std::size_t>(*gate.slot);
  const double offset = offsets.empty() ? 0.0 : offsets[k];
  return (params[k] + offset) / static_cast<double>(gate.scale_divisor);
}

StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        const NoiseModel& noise) {
  const auto count = static_cast<std::size_t>(circuit.param_count);
  if (params.size() != count) {
    throw DimensionError("circuit takes " + std::to_string(count) + " angles, got " +
                         std::to_string(params.size()));
  }
  if (noise.rotation_offsets.size() != count) {
    throw DimensionError("noise model has " + std::to_string(noise.rotation_offsets.size()) +
                         " offsets for " + std::to_string(count) + " angles");
  }
  StateVector state(circuit.num_qubits);
  for (const auto& g : circuit.gates) {
    apply_gate_in_place(state, g, resolve_angle(g, params, noise.rotation_offsets));
  }
  return state;
}

Device::Device(DeviceConfig config) : config_(std::move(config)), rng_(config_.rng_seed) {
  if (config_.shots && *config_.shots <= 0) {
    throw InvalidArgument("shot count must be positive");
  }
  const double lambda = config_.noise.depolarizing_lambda;
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("depolarizing lambda must lie in [0, 1]");
  }
}

double Device::measure(const StateVector& state, const PauliString& p) {
  const double exact = expectation_from_state(state.amplitudes(), p);
  if (p.is_identity()) return 1.0;
  const double depolarized = (1.0 - config_.noise.depolarizing_lambda) * exact;
  if (!config_.shots) return depolarized;
  const int shots = *config_.shots;
  const double p_plus = std::clamp(0.5 * (1.0 + depolarized), 0.0, 1.0);
  long plus = 0;
  for (int s = 0; s < shots; ++s) {
    if (rng_.uniform() < p_plus) ++plus;
  }
  return static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
}

std::vector<double> Device::measure(const StateVector& state, const PauliHamiltonian& h) {
  if (state.num_qubits() != h.num_qubits()) {
    throw DimensionError("state has " + std::to_string(state.num_qubits()) +
                         " qubits, Hamiltonian has " + std::to_string(h.num_qubits()));
  }
  std::vector<double> out;
  out.reserve(h.size());
  for (const auto& t : h.terms()) out.push_back(measure(state, t.label));
  return out;
}

std::vector<double> Device::evaluate(const Circuit& circuit, std::span<const double> params,
                                     const PauliHamiltonian& h) {
  return measure(run_circuit(circuit, params, config_.noise), h);
}

std::vector<double> measure_expectations(const StateVector& state, const PauliHamiltonian& h,
                                         const DeviceConfig& device) {
  Device d(device);
  return d.measure(state, h);
}

double energy(std::span<const double> expectations, const PauliHamiltonian& h) {
  if (expectations.size() != h.size()) {
    throw DimensionError("expectation vector of length " + std::to_string(expectations.size()) +
                         " for " + std::to_string(h.size()) + " terms");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& t = h.terms()[i];
    e += t.label.is_identity() ? t.coeff : t.coeff * expectations[i];
  }
  return e;
}

double expectation_from_state(const StateVector& state, const PauliString& p) {
  return expectation_from_state(state.amplitudes(), p);
}

}  // namespace nnvqe

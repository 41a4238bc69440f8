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

// Statevector simulation of small parameterized circuits, with a coherent
// rotation-offset noise model, global depolarization and shot sampling.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nnvqe/pauli.hpp"
#include "nnvqe/rng.hpp"

namespace nnvqe {

/// 2^n complex amplitudes; index bit q is qubit q.
class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(int num_qubits);
  /// Throws DimensionError unless amplitudes.size() == 2^num_qubits.
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  static StateVector basis(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }
  double norm() const;

 private:
  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

enum class GateKind { kX, kH, kS, kSdg, kRY, kRZ, kCX };

std::string_view gate_name(GateKind kind);

struct Gate {
  GateKind kind;
  int target = 0;
  /// Control qubit for CX, -1 otherwise.
  int control = -1;
  /// Angle slot for RY/RZ. Without a slot the gate uses `constant_angle`.
  std::optional<int> slot;
  /// Resolved angle = slot value / scale_divisor; one of 1, 2, 4.
  int scale_divisor = 1;
  double constant_angle = 0.0;

  bool is_rotation() const { return kind == GateKind::kRY || kind == GateKind::kRZ; }
  bool is_parameterized() const { return is_rotation() && slot.has_value(); }

  static Gate x(int q) { return {GateKind::kX, q, -1, std::nullopt}; }
  static Gate h(int q) { return {GateKind::kH, q, -1, std::nullopt}; }
  static Gate s(int q) { return {GateKind::kS, q, -1, std::nullopt}; }
  static Gate sdg(int q) { return {GateKind::kSdg, q, -1, std::nullopt}; }
  static Gate cx(int control, int target) { return {GateKind::kCX, target, control, std::nullopt}; }
  static Gate ry(int q, int slot, int scale_divisor = 1) {
    return {GateKind::kRY, q, -1, slot, scale_divisor};
  }
  static Gate rz(int q, int slot, int scale_divisor = 1) {
    return {GateKind::kRZ, q, -1, slot, scale_divisor};
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate program acting on |0...0>.
struct Circuit {
  int num_qubits = 1;
  int param_count = 0;
  std::vector<Gate> gates;
};

/// Throws InvalidArgument on out-of-range indices, control == target,
/// unsupported scale divisors or slots >= param_count.
void validate(const Circuit& circuit);

/// Fixed over/under-rotation per angle slot plus global depolarization.
struct NoiseModel {
  /// Radians added to each angle slot before its scale divisor is applied.
  std::vector<double> rotation_offsets;
  /// Traceless expectations are scaled by (1 - lambda).
  double depolarizing_lambda = 0.0;

  static NoiseModel ideal(int param_count) {
    return {std::vector<double>(static_cast<std::size_t>(param_count), 0.0), 0.0};
  }
};

inline constexpr int kDefaultShots = 10000;

struct DeviceConfig {
  NoiseModel noise;
  /// Shots per Pauli term; std::nullopt selects exact expectations.
  std::optional<int> shots = kDefaultShots;
  std::uint64_t rng_seed = 0;

  static DeviceConfig exact(NoiseModel noise) { return {std::move(noise), std::nullopt, 0}; }
  bool is_exact() const { return !shots.has_value(); }
};

/// Applies one gate at an already-resolved angle (ignored for fixed gates).
/// RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]], RZ(t) = diag(e^{-it/2}, e^{it/2}).
StateVector apply_gate(StateVector state, const Gate& gate, double resolved_angle);
void apply_gate_in_place(StateVector& state, const Gate& gate, double resolved_angle);

/// Angle a gate sees for `params` under `offsets`: (params[k] + offsets[k]) / scale.
double resolve_angle(const Gate& gate, std::span<const double> params,
                     std::span<const double> offsets);

/// Runs `circuit` from |0...0>. Throws DimensionError when params or the
/// noise offsets do not match circuit.param_count.
StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        const NoiseModel& noise);

/// A simulated device: noise model plus an owned random stream for shots.
class Device {
 public:
  explicit Device(DeviceConfig config);

  const DeviceConfig& config() const { return config_; }

  /// Per-term estimates aligned with h.terms(); the identity entry is 1.
  std::vector<double> measure(const StateVector& state, const PauliHamiltonian& h);
  double measure(const StateVector& state, const PauliString& p);

  /// run_circuit with this device's noise, then measure.
  std::vector<double> evaluate(const Circuit& circuit, std::span<const double> params,
                               const PauliHamiltonian& h);

 private:
  DeviceConfig config_;
  Rng rng_;
};

/// One-off measurement with a fresh random stream seeded from device.rng_seed.
std::vector<double> measure_expectations(const StateVector& state, const PauliHamiltonian& h,
                                         const DeviceConfig& device);

/// sum_i coeff_i * expectations_i; the identity term always contributes its
/// coefficient. Throws DimensionError on length mismatch.
double energy(std::span<const double> expectations, const PauliHamiltonian& h);

/// Same as expectation_from_state on the amplitudes.
double expectation_from_state(const StateVector& state, const PauliString& p);

}  // namespace nnvqe

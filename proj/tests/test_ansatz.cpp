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

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <numbers>

#include "nnvqe/ansatz.hpp"
#include "nnvqe/error.hpp"
#include "nnvqe/statevector.hpp"
#include "oracles.hpp"

using namespace nnvqe;
using std::numbers::pi;

namespace {

constexpr SystemId kAll[] = {SystemId::kH2_1Q, SystemId::kH2_2Q, SystemId::kH3_3Q, SystemId::kHeHp_4Q};

// Gate programs transcribed from the circuit diagrams. CX lines read
// "CX target control"; "× 1/4" marks the quarter-angle rotations.
constexpr const char* kGolden1q =
    "RY 0 slot 0 × 1\n"
    "RZ 0 slot 1 × 1\n";

constexpr const char* kGolden2q =
    "RY 0 slot 0 × 1\n"
    "X 1\n"
    "CX 1 0\n";

constexpr const char* kGolden4q =
    "X 0\n"
    "H 0\n"
    "RY 1 slot 0 × 1/2\n"
    "X 2\n"
    "X 3\n"
    "H 3\n"
    "CX 2 1\n"
    "Sdg 1\n"
    "Sdg 2\n"
    "CX 1 0\n"
    "CX 2 3\n"
    "Sdg 0\n"
    "S 1\n"
    "S 2\n"
    "Sdg 3\n"
    "RY 0 slot 2 × 1/4\n"
    "RY 1 slot 2 × 1/4\n"
    "RY 2 slot 1 × 1/4\n"
    "RY 3 slot 1 × 1/4\n"
    "CX 1 0\n"
    "CX 2 3\n"
    "H 0\n"
    "H 3\n";

std::string golden_3q() {
  std::string out = "X 1\n";
  for (int layer = 0; layer < 3; ++layer) {
    if (layer > 0) out += "CX 2 1\nCX 1 0\n";
    for (int q = 0; q < 3; ++q) {
      out += "RY " + std::to_string(q) + " slot " + std::to_string(6 * layer + q) + " × 1\n";
      out += "RZ " + std::to_string(q) + " slot " + std::to_string(6 * layer + 3 + q) + " × 1\n";
    }
  }
  return out;
}

}  // namespace

TEST_CASE("parameter counts and qubits", "[ansatz]") {
  CHECK(build_ansatz(SystemId::kH2_1Q).param_count() == 2);
  CHECK(build_ansatz(SystemId::kH2_2Q).param_count() == 1);
  CHECK(build_ansatz(SystemId::kH3_3Q).param_count() == 18);
  CHECK(build_ansatz(SystemId::kHeHp_4Q).param_count() == 3);
  for (auto id : kAll) {
    const auto a = build_ansatz(id);
    CHECK(a.num_qubits() == system_qubits(id));
    for (const auto& g : a.circuit.gates)
      if (g.slot) CHECK(*g.slot < a.param_count());
    CHECK_NOTHROW(validate(a.circuit));
  }
}

TEST_CASE("system names round trip", "[ansatz]") {
  for (auto id : kAll) CHECK(parse_system_id(system_name(id)) == id);
  CHECK(parse_system_id("HEHP_4Q") == SystemId::kHeHp_4Q);
  CHECK_THROWS_AS(parse_system_id("LiH_6Q"), InvalidArgument);
}

TEST_CASE("golden gate programs", "[ansatz]") {
  CHECK(dump_circuit(build_ansatz(SystemId::kH2_1Q).circuit) == kGolden1q);
  CHECK(dump_circuit(build_ansatz(SystemId::kH2_2Q).circuit) == kGolden2q);
  CHECK(dump_circuit(build_ansatz(SystemId::kH3_3Q).circuit) == golden_3q());
  CHECK(dump_circuit(build_ansatz(SystemId::kHeHp_4Q).circuit) == kGolden4q);
}

TEST_CASE("Hartree-Fock states at zero angles", "[ansatz]") {
  SECTION("2q gives |10>") {
    const auto a = build_ansatz(SystemId::kH2_2Q);
    const auto s = run_circuit(a.circuit, std::vector<double>{0.0}, NoiseModel::ideal(1));
    CHECK(std::abs(std::abs(s[0b10]) - 1.0) < 1e-12);
  }
  SECTION("4q gives |0101>") {
    const auto a = build_ansatz(SystemId::kHeHp_4Q);
    const auto s = run_circuit(a.circuit, std::vector<double>(3, 0.0), NoiseModel::ideal(3));
    CHECK(std::abs(std::abs(s[0b0101]) - 1.0) < 1e-12);
  }
}

TEST_CASE("4q circuit stays in the two-electron sector", "[ansatz]") {
  const auto a = build_ansatz(SystemId::kHeHp_4Q);
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> p{rng.uniform(-pi, pi), rng.uniform(-pi, pi), rng.uniform(-pi, pi)};
    const auto s = run_circuit(a.circuit, p, NoiseModel::ideal(3));
    double weight = 0;
    for (std::size_t i = 0; i < s.dimension(); ++i)
      if (std::popcount(i) == 2) weight += std::norm(s[i]);
    CHECK(std::abs(weight - 1.0) < 1e-12);
  }
}

TEST_CASE("doubles_state_check", "[ansatz]") {
  for (double t2 : {0.0, pi / 2, 0.3, -1.1}) {
    INFO("t2 = " << t2);
    const auto s = doubles_state_check(t2);
    std::vector<Complex> want(16, 0.0);
    want[0b0101] = std::cos(t2);
    want[0b1010] = std::sin(t2);
    CHECK(std::abs(oracle::overlap(want, s.amplitudes()) - 1.0) < 1e-9);
    for (std::size_t i = 0; i < 16; ++i)
      if (i != 0b0101 && i != 0b1010) CHECK(std::abs(s[i]) < 1e-9);
    CHECK(std::abs(std::abs(s[0b0101]) - std::abs(std::cos(t2))) < 1e-9);
  }
}

TEST_CASE("reference_clifford", "[ansatz]") {
  SECTION("2q strips to X(q1), CX(0 -> 1) with ZZ = -1") {
    const auto r = reference_clifford(build_ansatz(SystemId::kH2_2Q));
    CHECK(dump_circuit(r.circuit) == "X 1\nCX 1 0\n");
    const auto s = run_circuit(r.circuit, {}, NoiseModel::ideal(0));
    CHECK(expectation_from_state(s, PauliString("ZZ")) == Catch::Approx(-1.0).margin(1e-15));
  }
  SECTION("1q strips to the empty circuit with Z = +1") {
    const auto r = reference_clifford(build_ansatz(SystemId::kH2_1Q));
    CHECK(r.circuit.gates.empty());
    CHECK(expectation_from_state(run_circuit(r.circuit, {}, NoiseModel::ideal(0)), PauliString("Z")) == 1.0);
  }
  SECTION("all systems: no rotations, idempotent, Z...Z is +-1") {
    for (auto id : kAll) {
      const auto r = reference_clifford(build_ansatz(id));
      CHECK(r.param_count() == 0);
      for (const auto& g : r.circuit.gates) CHECK_FALSE(g.is_rotation());
      CHECK(dump_circuit(reference_clifford(r).circuit) == dump_circuit(r.circuit));
      const auto s = run_circuit(r.circuit, {}, NoiseModel::ideal(0));
      const double z = expectation_from_state(s, PauliString(std::string(static_cast<std::size_t>(r.num_qubits()), 'Z')));
      CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("hardware_efficient builder", "[ansatz]") {
  const auto c = hardware_efficient(2, 1, false, {});
  CHECK(c.param_count == 4);
  CHECK_THROWS_AS(hardware_efficient(0, 1, true, {}), InvalidArgument);
  CHECK_THROWS_AS(hardware_efficient(2, -1, true, {}), InvalidArgument);
}

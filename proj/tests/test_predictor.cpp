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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mlp_oracle.hpp"
#include "nnvqe/analytic.hpp"
#include "nnvqe/error.hpp"
#include "nnvqe/experiment.hpp"
#include "nnvqe/optimizer.hpp"
#include "nnvqe/predictor.hpp"
#include "nnvqe/synthetic.hpp"

using namespace nnvqe;
using std::numbers::pi;

namespace {

const TermSchema kXyz({PauliString("X"), PauliString("Y"), PauliString("Z")});

MlpModel one_qubit_model(Rng& rng) {
  MlpModel m = oracle::random_model(halving_widths(8, 2, 16), rng);
  // Keep the random steps modest so the loop wanders but stays finite.
  m.layers.back().weight *= 0.3;
  m.schema = kXyz;
  m.system = "H2_1Q";
  return m;
}

DeviceConfig exact_device() { return DeviceConfig::exact(NoiseModel::ideal(2)); }

}  // namespace

TEST_CASE("predict_step", "[predictor]") {
  const auto h = synthetic_one_qubit(1.0);
  SECTION("zero model predicts no change") {
    auto m = zero_model(halving_widths(8, 2, 16));
    m.schema = kXyz;
    const std::vector<double> e(h.size(), 0.25);
    CHECK(predict_step(m, h, kXyz, std::vector<double>{0.1, 0.2}, e) == std::vector<double>{0.0, 0.0});
  }
  SECTION("input is coefficients, schema-ordered expectations and angles") {
    Rng rng(2);
    const auto m = one_qubit_model(rng);
    const std::vector<double> angles{0.3, -0.7};
    std::vector<double> e(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) e[i] = 0.1 * static_cast<double>(i + 1);
    std::vector<double> x;
    for (const auto& p : kXyz.labels()) x.push_back(h.terms()[*h.find(p)].coeff);
    for (const auto& p : kXyz.labels()) x.push_back(e[*h.find(p)]);
    x.insert(x.end(), angles.begin(), angles.end());
    const auto want = oracle::ld_forward(m, x).out;
    const auto got = predict_step(m, h, kXyz, angles, e);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(got[k] - static_cast<double>(want[k])) < 1e-12);
  }
  SECTION("errors") {
    Rng rng(3);
    const auto m = one_qubit_model(rng);
    const std::vector<double> e(h.size(), 0.0);
    CHECK_THROWS_AS(predict_step(m, h, TermSchema({PauliString("X"), PauliString("Z")}), std::vector<double>{0, 0}, e),
                    SchemaMismatch);
    CHECK_THROWS_AS(predict_step(m, h, kXyz, std::vector<double>{0, 0}, std::vector<double>{0.0}), DimensionError);
    CHECK_THROWS_AS(predict_step(m, h, kXyz, std::vector<double>{0, 0, 0}, e), DimensionError);
  }
}

TEST_CASE("predictor_loop", "[predictor]") {
  const auto ansatz = build_ansatz(SystemId::kH2_1Q);
  SECTION("zero model measures the start point iterations + 1 times") {
    auto m = zero_model(halving_widths(8, 2, 16));
    m.schema = kXyz;
    const auto h = synthetic_one_qubit(0.8);
    PredictorConfig cfg;
    cfg.iterations = 5;
    const std::vector<double> start{0.4, 1.0};
    const auto r = predictor_loop(m, h, ansatz, exact_device(), start, cfg);
    REQUIRE(r.energies.size() == 6);
    REQUIRE(r.angles.size() == 6);
    for (const auto& a : r.angles) CHECK(a == start);
    const auto c = one_qubit_coefficients(h);
    const double e0 = c.h0 + c.h1 * std::sin(0.4) * std::cos(1.0) + c.h3 * std::cos(0.4);
    for (double e : r.energies) CHECK(std::abs(e - e0) < 1e-12);
    CHECK(r.best_angles == start);
  }
  SECTION("returns the minimum, never worse than the start, never below the ground state") {
    Rng rng(5);
    for (int k = 0; k < 40; ++k) {
      const auto m = one_qubit_model(rng);
      const auto h = synthetic_one_qubit(rng.uniform(kSyntheticMin, kSyntheticMax));
      const auto start = random_angles(2, rng);
      PredictorConfig cfg;
      cfg.iterations = static_cast<int>(rng.below(8));
      const auto r = predictor_loop(m, h, ansatz, exact_device(), start, cfg);
      REQUIRE(r.energies.size() == static_cast<std::size_t>(cfg.iterations) + 1);
      CHECK(r.best_energy == *std::min_element(r.energies.begin(), r.energies.end()));
      CHECK(r.best_energy <= r.energies.front());
      const auto at = std::find(r.energies.begin(), r.energies.end(), r.best_energy) - r.energies.begin();
      CHECK(r.best_angles == r.angles[static_cast<std::size_t>(at)]);
      const double ground = exact_ground_energy(h);
      for (double e : r.energies) CHECK(e >= ground - 1e-12);
    }
  }
  SECTION("shot device is reproducible") {
    Rng rng(6);
    const auto m = one_qubit_model(rng);
    const auto h = synthetic_one_qubit(1.2);
    const DeviceConfig dev{NoiseModel::ideal(2), 500, 77};
    const auto a = predictor_loop(m, h, ansatz, dev, std::vector<double>{0.2, 0.3});
    const auto b = predictor_loop(m, h, ansatz, dev, std::vector<double>{0.2, 0.3});
    CHECK(a.energies == b.energies);
    CHECK(a.angles == b.angles);
  }
  SECTION("argument errors") {
    auto m = zero_model(halving_widths(8, 2, 16));
    m.schema = kXyz;
    const auto h = synthetic_one_qubit(1.0);
    PredictorConfig bad;
    bad.iterations = -1;
    CHECK_THROWS_AS(predictor_loop(m, h, ansatz, exact_device(), std::vector<double>{0, 0}, bad), InvalidArgument);
    CHECK_THROWS_AS(predictor_loop(m, h, ansatz, exact_device(), std::vector<double>{0}), DimensionError);
    auto wrong = m;
    wrong.schema = TermSchema({PauliString("XX"), PauliString("ZZ")});
    CHECK_THROWS_AS(predictor_loop(wrong, h, ansatz, exact_device(), std::vector<double>{0, 0}), Error);
  }
}

TEST_CASE("a trained model barely moves at the optimum", "[predictor]") {
  ExperimentSpec spec;
  spec.reuse_steps = true;
  const auto data = generate_dataset(spec);
  const auto trained = train_on(spec, data.dataset);
  const auto ansatz = build_ansatz(SystemId::kH2_1Q);
  for (double d : linspace(kSyntheticMin, kSyntheticMax, 5)) {
    const auto h = pad_to_schema(synthetic_one_qubit(d), kXyz);
    const auto sol = solve_one_qubit(one_qubit_coefficients(h));
    const std::vector<double> at{sol.u_opt, sol.v_opt};
    const auto e = measure_expectations(run_circuit(ansatz.circuit, at, NoiseModel::ideal(2)), h, exact_device());
    const auto delta = predict_step(trained.model, h, kXyz, at, e);
    INFO("d = " << d << " delta = (" << delta[0] << ", " << delta[1] << ")");
    CHECK(std::hypot(delta[0], delta[1]) < 0.05);
  }
}

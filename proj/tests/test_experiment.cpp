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

#include <cmath>
#include <numbers>
#include <set>

#include "nnvqe/analytic.hpp"
#include "nnvqe/error.hpp"
#include "nnvqe/experiment.hpp"
#include "nnvqe/synthetic.hpp"
#include "oracles.hpp"

using namespace nnvqe;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(NNVQE_DATA_DIR) / "hamiltonians";

double coefficient(const PauliHamiltonian& h, const char* label) {
  const auto i = h.find(PauliString(label));
  return i ? h.terms()[*i].coeff : 0.0;
}

}  // namespace

TEST_CASE("synthetic one-qubit family", "[experiment]") {
  SECTION("closed forms at d = 1") {
    const auto h = synthetic_one_qubit(1.0);
    const double r = 0.9 + 0.6 * std::exp(-1.0), phi = 0.65;
    CHECK(h.num_qubits() == 1);
    CHECK(coefficient(h, "I") == Catch::Approx(-0.6).margin(1e-15));
    CHECK(coefficient(h, "X") == Catch::Approx(r * std::sin(phi)).margin(1e-15));
    CHECK(coefficient(h, "Y") == 0.0);
    CHECK(h.find(PauliString("Y")).has_value());
    CHECK(coefficient(h, "Z") == Catch::Approx(-r * std::cos(phi)).margin(1e-15));
    CHECK(h.metadata().distance_angstrom == 1.0);
  }
  SECTION("ground energy and optimal angles follow from the forms") {
    for (double d : linspace(kSyntheticMin, kSyntheticMax, 51)) {
      const auto h = synthetic_one_qubit(d);
      const double r = 0.9 + 0.6 * std::exp(-d), phi = 0.2 + 0.45 * d;
      const double h0 = -0.6 + 0.4 * (d - 1) * (d - 1) / (1 + d * d);
      CHECK(std::abs(exact_ground_energy(h) - (h0 - r)) < 1e-12);
      CHECK(std::abs(oracle::lowest_eigenvalue(oracle::dense(h)) - (h0 - r)) < 1e-9);
      const auto sol = solve_one_qubit(one_qubit_coefficients(h));
      CHECK(std::abs(sol.u_opt + phi) < 1e-12);
      CHECK(std::abs(sol.v_opt) < 1e-15);
      // Bounded coefficients over the whole range.
      CHECK(std::abs(h0) < 1.0);
      CHECK(r < 1.5);
    }
  }
  SECTION("non-finite distance") { CHECK_THROWS_AS(synthetic_one_qubit(std::nan("")), InvalidArgument); }
}

TEST_CASE("linspace", "[experiment]") {
  CHECK(linspace(0.25, 2.75, 1) == std::vector<double>{0.25});
  CHECK(linspace(0, 1, 5) == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  const auto l = linspace(kSyntheticMin, kSyntheticMax, 51);
  CHECK(l.size() == 51);
  CHECK(l.front() == kSyntheticMin);
  CHECK(l.back() == kSyntheticMax);
  CHECK(l[25] == Catch::Approx(1.5).margin(1e-15));
  CHECK_THROWS_AS(linspace(0, 1, 0), InvalidArgument);
}

TEST_CASE("families and schemas", "[experiment]") {
  ExperimentSpec s;
  CHECK(family_schema(s) == TermSchema({PauliString("X"), PauliString("Y"), PauliString("Z")}));
  s.train_points = 3;
  const auto tr = training_hamiltonians(s);
  REQUIRE(tr.size() == 3);
  CHECK(tr[1].metadata().distance_angstrom == 1.5);

  SECTION("bundled directories are ordered by distance and spread evenly") {
    s.ham_dir = kData / "h2_1q";
    s.train_points = 5;
    std::vector<double> d;
    for (const auto& h : training_hamiltonians(s)) d.push_back(*h.metadata().distance_angstrom);
    CHECK(d == std::vector<double>{0.3, 0.9, 1.5, 2.1, 2.7});
    s.test_points = 51;
    CHECK(test_hamiltonians(s).size() == 9);
    const auto fam = load_family(kData / "h2_1q");
    for (std::size_t i = 1; i < fam.size(); ++i)
      CHECK(*fam[i - 1].metadata().distance_angstrom < *fam[i].metadata().distance_angstrom);
    s.train_points = 10;
    CHECK_THROWS_AS(training_hamiltonians(s), InvalidArgument);
  }
  SECTION("one schema per family") {
    for (const char* dir : {"h2_1q", "h2_2q", "hehp_4q"}) {
      const auto fam = load_family(kData / dir);
      const auto schema = TermSchema::from_hamiltonians(fam);
      for (const auto& h : fam) CHECK_NOTHROW(coefficient_vector(pad_to_schema(h, schema), schema));
    }
  }
  SECTION("synthetic family only serves one qubit") {
    ExperimentSpec two;
    two.system = SystemId::kH2_2Q;
    CHECK_THROWS_AS(training_hamiltonians(two), InvalidArgument);
    CHECK_THROWS_AS(family_schema(two), InvalidArgument);
  }
  SECTION("missing directory") {
    CHECK_THROWS_AS(load_family(kData / "no_such_dir"), Error);
  }
}

TEST_CASE("default batch sizes", "[experiment]") {
  CHECK(default_batch_size(SystemId::kH2_1Q) == 8);
  CHECK(default_batch_size(SystemId::kH2_2Q) == 16);
  CHECK(default_batch_size(SystemId::kH3_3Q) == 16);
  CHECK(default_batch_size(SystemId::kHeHp_4Q) == 128);
}

TEST_CASE("generate_dataset sample counts", "[experiment]") {
  ExperimentSpec s;
  s.train_points = 1;
  SECTION("one distance, cutoff 10: ten steps plus the final point") {
    const auto r = generate_dataset(s);
    CHECK(r.base_samples == 11);
    CHECK(r.dataset.samples.size() == 11);
    CHECK(r.dataset.input_dim() == 8);
    CHECK(r.dataset.output_dim() == 2);
    CHECK(r.dataset.system == "H2_1Q");
  }
  SECTION("a +-0.1 pi grid on two parameters multiplies by 1 + 4") {
    s.offset_magnitudes = {0.1 * pi};
    const auto r = generate_dataset(s);
    CHECK(r.base_samples == 11);
    CHECK(r.dataset.samples.size() == 55);
  }
  SECTION("two magnitudes give 1 + 16 copies") {
    s.offset_magnitudes = {0.05 * pi, 0.1 * pi};
    CHECK(generate_dataset(s).dataset.samples.size() == 11 * 17);
  }
  SECTION("runs and step reuse") {
    s.train_points = 5;
    s.runs_per_point = 2;
    CHECK(generate_dataset(s).dataset.samples.size() == 5 * 2 * 11);
    s.runs_per_point = 1;
    s.reuse_steps = true;
    CHECK(generate_dataset(s).dataset.samples.size() == 275);
  }
  SECTION("full traces keep every evaluation") {
    s.full_traces = true;
    const auto r = generate_dataset(s);
    CHECK(r.dataset.samples.size() > 11);
  }
  SECTION("every sample targets the analytic optimum") {
    s.train_points = 3;
    s.reuse_steps = true;
    for (const auto& t : generate_dataset(s).dataset.samples) {
      const auto sol = solve_one_qubit({0.0, t.input[0], t.input[1], t.input[2]});
      CHECK(std::abs(t.input[6] + t.target[0] - sol.u_opt) < 1e-12);
      CHECK(std::abs(t.input[7] + t.target[1] - sol.v_opt) < 1e-12);
    }
  }
  SECTION("bundled two-qubit family") {
    ExperimentSpec t;
    t.system = SystemId::kH2_2Q;
    t.ham_dir = kData / "h2_2q";
    t.train_points = 2;
    const auto r = generate_dataset(t);
    CHECK(r.dataset.samples.size() == 22);
    CHECK(r.dataset.output_dim() == 1);
  }
  SECTION("qubit-count mismatch") {
    ExperimentSpec t;
    t.system = SystemId::kH2_2Q;
    t.ham_dir = kData / "h2_1q";
    CHECK_THROWS_AS(generate_dataset(t), DimensionError);
  }
  SECTION("same seed, same data") {
    CHECK(generate_dataset(s).dataset.samples == generate_dataset(s).dataset.samples);
    ExperimentSpec other = s;
    other.seed = 2;
    CHECK_FALSE(generate_dataset(other).dataset.samples == generate_dataset(s).dataset.samples);
  }
}

TEST_CASE("small end-to-end pipeline", "[experiment]") {
  ExperimentSpec s;
  s.reuse_steps = true;
  s.test_points = 7;
  s.devices = 4;
  const auto data = generate_dataset(s);
  const auto trained = train_on(s, data.dataset);
  CHECK(trained.model.widths == std::vector<int>{8, 16, 16, 16, 2});
  CHECK(trained.model.recorded_test_mse == trained.test_mse);
  CHECK(trained.history.train_mse.size() == 1000);

  const auto rows = run_sweep(s, trained.model);
  REQUIRE(rows.size() == 7);
  for (const auto& r : rows) {
    CHECK(r.predicted >= r.exact - 1e-12);
    CHECK(r.error == Catch::Approx(r.predicted - r.exact).margin(1e-15));
  }
  const auto dev = run_noisy_devices(s, trained.model);
  REQUIRE(dev.size() == 4);
  for (const auto& r : dev) {
    CHECK(r.epsilon.size() == 2);
    for (double e : r.epsilon) CHECK(std::abs(e) <= 0.1 * pi);
    CHECK(r.gap >= -1e-9);
    CHECK(r.baseline_best >= r.oracle - 1e-9);
  }
  SECTION("train_on needs two samples") {
    Dataset tiny = data.dataset;
    tiny.samples.resize(1);
    CHECK_THROWS_AS(train_on(s, tiny), InvalidArgument);
  }
}

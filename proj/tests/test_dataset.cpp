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
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "nnvqe/analytic.hpp"
#include "nnvqe/dataset.hpp"
#include "nnvqe/error.hpp"
#include "nnvqe/optimizer.hpp"
#include "nnvqe/synthetic.hpp"
#include "oracles.hpp"

using namespace nnvqe;
using Catch::Matchers::ContainsSubstring;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

const TermSchema& xyz() {
  static const TermSchema s({PauliString("X"), PauliString("Y"), PauliString("Z")});
  return s;
}

// Builds a one-qubit trace by hand: expectations in the padded term order
// I, X, Y, Z from the closed-form formulas.
OptimizationTrace hand_trace(const PauliHamiltonian& h, const std::vector<std::pair<double, double>>& angles) {
  OptimizationTrace t;
  t.hamiltonian_ref = "hand";
  for (auto [u, v] : angles) {
    Evaluation ev;
    ev.angles = {u, v};
    ev.expectations = {1.0, std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), std::cos(u)};
    ev.energy = energy(ev.expectations, h);
    t.evaluations.push_back(ev);
  }
  t.final_angles = t.evaluations.back().angles;
  t.converged = true;
  t.loss_calls = static_cast<int>(angles.size());
  return t;
}

Dataset numbered_dataset(std::size_t n) {
  Dataset d{"H2_1Q", xyz(), 0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    d.samples.push_back({{x, 0.5 * x, -x, 0.1, 0.2, 0.3, x / 7, -x / 3}, {x / 11, 1 - x}, {"t", static_cast<int>(i), {}}});
  }
  return d;
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nnvqe_test_dataset";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("trace_to_samples", "[dataset]") {
  const auto h = pad_to_schema(oracle::one_qubit(-0.4, 0.3, 0.0, -0.8), xyz());
  const auto opt = optimal_angles(0.3, 0.0, -0.8);
  const std::vector<double> opt_v{opt.u, opt.v};

  SECTION("sample at the optimum has a zero target") {
    const auto t = hand_trace(h, {{0.1, 0.2}, {opt.u, opt.v}});
    const auto s = trace_to_samples(t, opt_v, h, xyz());
    REQUIRE(s.size() == 2);
    CHECK(s.back().target == std::vector<double>{0.0, 0.0});
  }
  SECTION("one-qubit targets agree with make_noisy_sample at zero offset") {
    Rng rng(3);
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < 20; ++k) pts.emplace_back(rng.uniform(-pi, pi), rng.uniform(-pi, pi));
    const auto s = trace_to_samples(hand_trace(h, pts), opt_v, h, xyz());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto ref = make_noisy_sample(0.3, 0.0, -0.8, pts[k].first, pts[k].second, 0.0, 0.0);
      for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(s[k].input[i] - ref.input[i]) < 1e-12);
      for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(s[k].target[i] - ref.target[i]) < 1e-12);
      CHECK(s[k].prov.eval_index == static_cast<int>(k));
      CHECK(s[k].prov.trace_id == "hand");
    }
  }
  SECTION("harvested trace of 10 steps plus final gives 11 samples") {
    OptimizerConfig cfg;
    cfg.seed = 1;
    cfg.harvest_cutoff = 10;
    const auto t = vqe_run(h, build_ansatz(SystemId::kH2_1Q), DeviceConfig::exact(NoiseModel::ideal(2)), cfg);
    CHECK(trace_to_samples(t, opt_v, h, xyz()).size() == 11);
  }
  SECTION("dimension and schema errors") {
    const auto t = hand_trace(h, {{0.1, 0.2}});
    CHECK_THROWS_AS(trace_to_samples(t, std::vector<double>{0.0}, h, xyz()), DimensionError);
    const PauliHamiltonian only_xz(1, {{PauliString("X"), 1.0}, {PauliString("Z"), 1.0}});
    CHECK_THROWS_AS(trace_to_samples(t, opt_v, only_xz, xyz()), SchemaMismatch);
  }
}

TEST_CASE("sample targets land on a minimizer", "[dataset]") {
  SECTION("two-qubit fixture against a grid oracle") {
    const auto h = load_hamiltonian(fs::path(NNVQE_DATA_DIR) / "hamiltonians/h2_2q/h2_2q_d0.90.json");
    const auto schema = TermSchema::from_hamiltonians(std::vector<PauliHamiltonian>{h});
    const auto a = build_ansatz(SystemId::kH2_2Q);
    OptimizerConfig cfg;
    cfg.seed = 8;
    cfg.convergence_tol = 1e-10;
    cfg.simplex_tol = 1e-7;
    const auto t = vqe_run(h, a, DeviceConfig::exact(NoiseModel::ideal(1)), cfg);
    const auto samples = trace_to_samples(t, t.final_angles, h, schema);
    auto loss = [&](std::span<const double> x) {
      const auto s = run_circuit(a.circuit, x, NoiseModel::ideal(1));
      return energy(measure_expectations(s, h, DeviceConfig::exact(NoiseModel{})), h);
    };
    const auto grid = grid_search_minimum(loss, 1, 256, -pi, pi);
    const std::size_t angle_at = samples[0].input.size() - 1;
    for (const auto& s : samples) {
      const std::vector<double> corrected{s.input[angle_at] + s.target[0]};
      CHECK(std::abs(loss(corrected) - grid.energy) < 1e-4);
    }
  }
}

TEST_CASE("make_offset_grid", "[dataset]") {
  const double m = 0.1 * pi;
  SECTION("one parameter") {
    const std::vector<double> mags{m};
    const auto g = make_offset_grid(1, mags);
    CHECK(g == std::vector<std::vector<double>>{{-m}, {m}});
  }
  SECTION("three parameters give 8 distinct vectors") {
    const std::vector<double> mags{m};
    const auto g = make_offset_grid(3, mags);
    CHECK(g.size() == 8);
    CHECK(std::set<std::vector<double>>(g.begin(), g.end()).size() == 8);
  }
  SECTION("two parameters, two magnitudes give 16") {
    const std::vector<double> mags{0.05 * pi, 0.1 * pi};
    const auto g = make_offset_grid(2, mags);
    CHECK(g.size() == 16);
    std::set<std::vector<double>> want;
    for (double a : {-0.05 * pi, 0.05 * pi, -0.1 * pi, 0.1 * pi})
      for (double b : {-0.05 * pi, 0.05 * pi, -0.1 * pi, 0.1 * pi}) want.insert({a, b});
    CHECK(std::set<std::vector<double>>(g.begin(), g.end()) == want);
  }
  SECTION("optional zero vector comes first") {
    const std::vector<double> mags{m};
    const auto g = make_offset_grid(2, mags, true);
    CHECK(g.size() == 5);
    CHECK(g[0] == std::vector<double>{0.0, 0.0});
  }
  SECTION("guards") {
    CHECK_THROWS_AS(make_offset_grid(2, std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(make_offset_grid(18, std::vector<double>{0.1, 0.2}), CapacityError);
    CHECK_NOTHROW(make_offset_grid(9, std::vector<double>{0.1, 0.2}));
  }
}

TEST_CASE("augment_with_offsets", "[dataset]") {
  const auto h = pad_to_schema(oracle::one_qubit(0.2, -0.5, 0.25, 0.75), xyz());
  const auto opt = optimal_angles(-0.5, 0.25, 0.75);
  const std::vector<double> opt_v{opt.u, opt.v};
  const std::vector<double> mags{0.1 * pi};
  const auto grid = make_offset_grid(2, mags);

  SECTION("one sample, 2 parameters, +-0.1 pi grid gives 1 + 4 samples") {
    const auto base = trace_to_samples(hand_trace(h, {{0.3, 0.4}}), opt_v, h, xyz());
    const auto aug = augment_with_offsets(base, grid, 2);
    REQUIRE(aug.size() == 5);
    CHECK(aug[0] == base[0]);
    for (std::size_t k = 1; k < 5; ++k) {
      CHECK(aug[k].target == base[0].target);
      for (std::size_t i = 0; i < 6; ++i) CHECK(aug[k].input[i] == base[0].input[i]);
      CHECK(aug[k].input[6] == base[0].input[6] - grid[k - 1][0]);
      CHECK(aug[k].input[7] == base[0].input[7] - grid[k - 1][1]);
      CHECK(aug[k].prov.epsilon == grid[k - 1]);
    }
  }
  SECTION("count is samples x (1 + offsets)") {
    Rng rng(2);
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < 11; ++k) pts.emplace_back(rng.uniform(-pi, pi), rng.uniform(-pi, pi));
    const auto base = trace_to_samples(hand_trace(h, pts), opt_v, h, xyz());
    const std::vector<double> two{0.05 * pi, 0.1 * pi};
    CHECK(augment_with_offsets(base, make_offset_grid(2, two), 2).size() == 11 * (1 + 16));
  }
  SECTION("shifted inputs re-simulated on their offset device reproduce the expectations") {
    const auto a = build_ansatz(SystemId::kH2_1Q);
    Rng rng(5);
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < 10; ++k) pts.emplace_back(rng.uniform(-pi, pi), rng.uniform(-pi, pi));
    const auto aug = augment_with_offsets(trace_to_samples(hand_trace(h, pts), opt_v, h, xyz()), grid, 2);
    for (const auto& s : aug) {
      const std::vector<double> eps = s.prov.epsilon.empty() ? std::vector<double>{0, 0} : s.prov.epsilon;
      const auto state = run_circuit(a.circuit, std::vector<double>{s.input[6], s.input[7]}, NoiseModel{eps, 0.0});
      for (int i = 0; i < 3; ++i) {
        const double e = expectation_from_state(state, xyz().labels()[static_cast<std::size_t>(i)]);
        CHECK(std::abs(e - s.input[3 + static_cast<std::size_t>(i)]) < 1e-12);
      }
      const std::vector<double> corrected{s.input[6] + s.target[0], s.input[7] + s.target[1]};
      const auto fixed = run_circuit(a.circuit, corrected, NoiseModel{eps, 0.0});
      const double e = energy(measure_expectations(fixed, h, DeviceConfig::exact(NoiseModel{})), h);
      CHECK(std::abs(e - solve_one_qubit(one_qubit_coefficients(h)).min_energy) < 1e-9);
    }
  }
  SECTION("with dyadic angles and offsets the result equals make_noisy_sample bit for bit") {
    const std::vector<std::vector<double>> eps{{0.0625, -0.125}, {-0.5, 0.375}};
    const auto aug =
        augment_with_offsets(trace_to_samples(hand_trace(h, {{0.75, -0.5}}), opt_v, h, xyz()), eps, 2);
    for (std::size_t k = 1; k < aug.size(); ++k) {
      const auto ref = make_noisy_sample(-0.5, 0.25, 0.75, 0.75 - eps[k - 1][0], -0.5 - eps[k - 1][1],
                                         eps[k - 1][0], eps[k - 1][1]);
      CHECK(aug[k].input == ref.input);
      CHECK(aug[k].target == ref.target);
      CHECK(aug[k].prov.epsilon == ref.prov.epsilon);
    }
  }
  SECTION("length mismatch") {
    const auto base = trace_to_samples(hand_trace(h, {{0.3, 0.4}}), opt_v, h, xyz());
    CHECK_THROWS_AS(augment_with_offsets(base, {{0.1}}, 2), DimensionError);
    CHECK_THROWS_AS(augment_with_offsets(base, {{0.1, 0.1, 0.1}}, 3), DimensionError);
  }
}

TEST_CASE("retarget_trace reuses angles for another Hamiltonian", "[dataset]") {
  const auto h1 = pad_to_schema(oracle::one_qubit(0.2, -0.5, 0.0, 0.75), xyz());
  const auto h2 = pad_to_schema(oracle::one_qubit(-1.0, 0.1, 0.0, -0.3), xyz());
  const auto t = hand_trace(h1, {{0.3, 0.4}, {1.0, -2.0}});
  const auto r = retarget_trace(t, h1, h2);
  const auto direct = hand_trace(h2, {{0.3, 0.4}, {1.0, -2.0}});
  REQUIRE(r.evaluations.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(r.evaluations[k].angles == direct.evaluations[k].angles);
    CHECK(r.evaluations[k].expectations == direct.evaluations[k].expectations);
    CHECK(std::abs(r.evaluations[k].energy - direct.evaluations[k].energy) < 1e-15);
  }
}

TEST_CASE("split", "[dataset]") {
  SECTION("200 samples at 1%") {
    const auto [train, test] = split(numbered_dataset(200), 0.01, 4);
    CHECK(test.samples.size() == 2);
    CHECK(train.samples.size() == 198);
  }
  SECTION("tiny sets keep at least one of each") {
    const auto [train, test] = split(numbered_dataset(2), 0.01, 4);
    CHECK(test.samples.size() == 1);
    CHECK(train.samples.size() == 1);
  }
  SECTION("deterministic, disjoint and exhaustive") {
    const auto d = numbered_dataset(1000);
    const auto a = split(d, 0.01, 7);
    const auto b = split(d, 0.01, 7);
    CHECK(a.first.samples == b.first.samples);
    CHECK(a.second.samples == b.second.samples);
    std::set<int> seen;
    for (const auto* part : {&a.first, &a.second})
      for (const auto& s : part->samples) CHECK(seen.insert(s.prov.eval_index).second);
    CHECK(seen.size() == 1000);
  }
  SECTION("different seeds change membership, not sizes") {
    const auto d = numbered_dataset(1000);
    const auto a = split(d, 0.01, 1);
    const auto b = split(d, 0.01, 2);
    CHECK(a.second.samples.size() == 10);
    CHECK(b.second.samples.size() == 10);
    CHECK(a.second.samples != b.second.samples);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(split(numbered_dataset(0), 0.01, 1), InvalidArgument);
    CHECK_THROWS_AS(split(numbered_dataset(1), 0.01, 1), InvalidArgument);
  }
}

TEST_CASE("dataset files", "[dataset]") {
  auto d = numbered_dataset(25);
  d.split_seed = 99;
  d.samples[3].prov.epsilon = {0.1 * pi, -0.1 * pi};
  d.samples[4].input[2] = 1.0 / 3.0;

  SECTION("save then load is element-wise identical") {
    const auto path = temp_file("roundtrip.jsonl");
    save_dataset(path, d);
    const auto back = load_dataset(path);
    CHECK(back.system == d.system);
    CHECK(back.schema == d.schema);
    CHECK(back.split_seed == 99);
    CHECK(back.samples == d.samples);
    CHECK(dataset_to_jsonl(back) == dataset_to_jsonl(d));
  }
  SECTION("header records version and layout") {
    const auto text = dataset_to_jsonl(d);
    const auto header = nlohmann::json::parse(text.substr(0, text.find('\n')));
    CHECK(header["version"] == 1);
    CHECK(header["layout"] == "h|exp|ang");
    CHECK(header["schema"] == nlohmann::json::array({"X", "Y", "Z"}));
  }
  SECTION("corrupt lines are named") {
    const auto text = dataset_to_jsonl(d);
    CHECK_THROWS_WITH(parse_dataset("{\"version\":1,\n" + text.substr(text.find('\n'))), ContainsSubstring("line 1"));
    auto lines = text;
    const auto third = lines.find('\n', lines.find('\n') + 1) + 1;
    lines.replace(third, 5, "{oops");
    CHECK_THROWS_WITH(parse_dataset(lines), ContainsSubstring("dataset line 3"));
    auto bad_version = text;
    bad_version.replace(bad_version.find("\"version\":1"), 11, "\"version\":7");
    CHECK_THROWS_WITH(parse_dataset(bad_version), ContainsSubstring("line 1"));
    CHECK_THROWS_AS(parse_dataset(""), ParseError);
  }
  SECTION("100000 samples round trip in under 5 s") {
    const auto big = numbered_dataset(100000);
    const auto path = temp_file("big.jsonl");
    const auto t0 = std::chrono::steady_clock::now();
    save_dataset(path, big);
    const auto back = load_dataset(path);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(back.samples == big.samples);
    CHECK(secs < 5.0);
  }
}

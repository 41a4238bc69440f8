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

#include "nnvqe/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nnvqe/analytic.hpp"
#include "nnvqe/mitigation.hpp"
#include "nnvqe/optimizer.hpp"
#include "nnvqe/predictor.hpp"
#include "nnvqe/synthetic.hpp"

namespace nnvqe {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Seed stream tags, one per randomized stage.
enum Stream : std::uint64_t {
  kGenOptimizer = 1,
  kGenDevice,
  kSplit,
  kInit,
  kTrain,
  kSweepStart,
  kSweepDevice,
  kNoiseDraw,
  kNoiseStart,
  kNoiseDevice,
  kCompare,
  kMitigate,
};

std::uint64_t stream_seed(const ExperimentSpec& s, Stream tag, std::uint64_t index = 0) {
  return derive_seed(derive_seed(s.seed, tag), index);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

bool synthetic(const ExperimentSpec& s) { return !s.ham_dir.has_value(); }

void require_synthetic_ok(const ExperimentSpec& s) {
  if (synthetic(s) && s.system != SystemId::kH2_1Q)
    throw InvalidArgument("the synthetic family is one-qubit only; pass --ham-dir for " +
                          std::string(system_name(s.system)));
}

double distance_of(const PauliHamiltonian& h, std::size_t fallback) {
  return h.metadata().distance_angstrom.value_or(static_cast<double>(fallback));
}

std::vector<std::size_t> spread_indices(std::size_t available, int wanted) {
  if (wanted < 1) throw InvalidArgument("point count must be >= 1");
  if (static_cast<std::size_t>(wanted) > available)
    throw InvalidArgument("requested " + std::to_string(wanted) + " points but only " +
                          std::to_string(available) + " Hamiltonians are available");
  if (wanted == 1) return {0};
  std::vector<std::size_t> idx;
  for (int i = 0; i < wanted; ++i)
    idx.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(i) * (available - 1) / (wanted - 1))));
  return idx;
}

DeviceConfig device_for(const ExperimentSpec& s, int param_count, std::vector<double> offsets,
                        std::uint64_t rng_seed) {
  if (offsets.empty()) offsets.assign(static_cast<std::size_t>(param_count), 0.0);
  return DeviceConfig{NoiseModel{std::move(offsets), s.depolarizing_lambda}, s.shots, rng_seed};
}

PauliHamiltonian pick_hamiltonian(const ExperimentSpec& s) {
  if (synthetic(s)) return synthetic_one_qubit(s.distance.value_or(0.5 * (kSyntheticMin + kSyntheticMax)));
  const auto family = load_family(*s.ham_dir);
  if (!s.distance) return family[family.size() / 2];
  std::size_t best = 0;
  for (std::size_t i = 1; i < family.size(); ++i)
    if (std::abs(distance_of(family[i], i) - *s.distance) < std::abs(distance_of(family[best], best) - *s.distance))
      best = i;
  return family[best];
}

// Exact energy on a device with fixed offsets, no depolarization or shots.
std::function<double(std::span<const double>)> exact_energy_fn(const PauliHamiltonian& h,
                                                               const AnsatzCircuit& a,
                                                               const NoiseModel& noise) {
  return [&h, &a, noise](std::span<const double> x) {
    NoiseModel n{noise.rotation_offsets, 0.0};
    const StateVector st = run_circuit(a.circuit, x, n);
    return energy(measure_expectations(st, h, DeviceConfig::exact(n)), h);
  };
}

double oracle_minimum(const std::function<double(std::span<const double>)>& f, int params, std::uint64_t seed) {
  if (params <= 3) {
    const int grid = params == 1 ? 256 : params == 2 ? 72 : 28;
    return grid_search_minimum(f, params, grid, -std::numbers::pi, std::numbers::pi).energy;
  }
  double best = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  OptimizerConfig cfg;
  cfg.simplex_tol = 1e-8;
  cfg.convergence_tol = 1e-11;
  cfg.max_evals_full = 20000;
  LossFunction loss = [&](std::span<const double> x) { return LossValue{f(x), {}}; };
  for (int k = 0; k < 8; ++k) {
    const auto start = random_angles(params, rng);
    best = std::min(best, minimize(loss, start, cfg).final_evaluation().energy);
  }
  return best;
}

}  // namespace

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int default_batch_size(SystemId id) {
  switch (id) {
    case SystemId::kH2_1Q: return 8;
    case SystemId::kHeHp_4Q: return 128;
    default: return 16;
  }
}

std::vector<PauliHamiltonian> load_family(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no .json Hamiltonians in " + dir.string());
  std::vector<std::pair<fs::path, PauliHamiltonian>> loaded;
  for (const auto& f : files) loaded.emplace_back(f, load_hamiltonian(f));
  std::stable_sort(loaded.begin(), loaded.end(), [](const auto& a, const auto& b) {
    const auto da = a.second.metadata().distance_angstrom, db = b.second.metadata().distance_angstrom;
    if (da && db) return *da < *db;
    return false;
  });
  std::vector<PauliHamiltonian> out;
  for (auto& [f, h] : loaded) out.push_back(std::move(h));
  return out;
}

std::vector<PauliHamiltonian> training_hamiltonians(const ExperimentSpec& s) {
  require_synthetic_ok(s);
  std::vector<PauliHamiltonian> out;
  if (synthetic(s)) {
    for (double d : linspace(kSyntheticMin, kSyntheticMax, s.train_points)) out.push_back(synthetic_one_qubit(d));
    return out;
  }
  const auto family = load_family(*s.ham_dir);
  for (std::size_t i : spread_indices(family.size(), s.train_points)) out.push_back(family[i]);
  return out;
}

std::vector<PauliHamiltonian> test_hamiltonians(const ExperimentSpec& s) {
  require_synthetic_ok(s);
  std::vector<PauliHamiltonian> out;
  if (synthetic(s)) {
    for (double d : linspace(kSyntheticMin, kSyntheticMax, s.test_points)) out.push_back(synthetic_one_qubit(d));
    return out;
  }
  const auto family = load_family(*s.ham_dir);
  const int n = std::min<int>(s.test_points, static_cast<int>(family.size()));
  for (std::size_t i : spread_indices(family.size(), n)) out.push_back(family[i]);
  return out;
}

TermSchema family_schema(const ExperimentSpec& s) {
  if (synthetic(s)) {
    require_synthetic_ok(s);
    return TermSchema({PauliString("X"), PauliString("Y"), PauliString("Z")});
  }
  const auto family = load_family(*s.ham_dir);
  return TermSchema::from_hamiltonians(family);
}

GenDataResult generate_dataset(const ExperimentSpec& s) {
  const AnsatzCircuit ansatz = build_ansatz(s.system);
  const auto hams = training_hamiltonians(s);
  const TermSchema schema = family_schema(s);
  if (schema.num_qubits() != ansatz.num_qubits())
    throw DimensionError("Hamiltonians act on " + std::to_string(schema.num_qubits()) + " qubits but " +
                         std::string(system_name(s.system)) + " uses " + std::to_string(ansatz.num_qubits()));
  if (s.runs_per_point < 1) throw InvalidArgument("runs per point must be >= 1");
  const int cutoff = s.cutoff.value_or(default_harvest_cutoff(s.system));

  GenDataResult res;
  res.dataset.system = std::string(system_name(s.system));
  res.dataset.schema = schema;
  std::vector<PauliHamiltonian> padded;
  std::vector<std::vector<OptimizationTrace>> traces(hams.size());
  std::vector<std::vector<double>> opts;
  for (std::size_t i = 0; i < hams.size(); ++i) {
    padded.push_back(pad_to_schema(hams[i], schema));
    for (int r = 0; r < s.runs_per_point; ++r) {
      const std::uint64_t idx = i * 1024 + static_cast<std::uint64_t>(r);
      OptimizerConfig cfg;
      cfg.seed = stream_seed(s, kGenOptimizer, idx);
      if (!s.full_traces) cfg.harvest_cutoff = cutoff;
      OptimizationTrace t = vqe_run(padded[i], ansatz,
                                    device_for(s, ansatz.param_count(), {}, stream_seed(s, kGenDevice, idx)), cfg);
      t.hamiltonian_ref += "#" + std::to_string(r);
      traces[i].push_back(std::move(t));
    }
    if (s.system == SystemId::kH2_1Q) {
      const auto sol = solve_one_qubit(one_qubit_coefficients(hams[i]));
      opts.push_back({sol.u_opt, sol.v_opt});
    } else {
      const OptimizationTrace* best = &traces[i][0];
      for (const auto& t : traces[i])
        if (t.final_evaluation().energy < best->final_evaluation().energy) best = &t;
      opts.push_back(best->final_angles);
    }
  }
  for (std::size_t j = 0; j < hams.size(); ++j) {
    for (std::size_t i = 0; i < hams.size(); ++i) {
      if (i != j && !s.reuse_steps) continue;
      for (const auto& t : traces[i]) {
        const OptimizationTrace moved = i == j ? t : retarget_trace(t, padded[i], padded[j]);
        auto samples = trace_to_samples(moved, opts[j], padded[j], schema);
        res.dataset.samples.insert(res.dataset.samples.end(), samples.begin(), samples.end());
      }
    }
  }
  res.base_samples = res.dataset.samples.size();
  if (!s.offset_magnitudes.empty()) {
    const auto grid = make_offset_grid(ansatz.param_count(), s.offset_magnitudes);
    res.dataset.samples = augment_with_offsets(res.dataset.samples, grid, ansatz.param_count());
  }
  return res;
}

TrainResult train_on(const ExperimentSpec& s, const Dataset& d) {
  if (d.samples.size() < 2) throw InvalidArgument("dataset needs at least 2 samples");
  auto [train_set, test_set] = split(d, s.test_fraction, stream_seed(s, kSplit));
  const auto widths = halving_widths(static_cast<int>(d.input_dim()), static_cast<int>(d.output_dim()), s.min_hidden);
  TrainResult r;
  r.model = init_he(widths, stream_seed(s, kInit));
  r.model.system = d.system;
  r.model.schema = d.schema;
  if (s.normalize_inputs) fit_input_normalization(r.model, train_set.samples);
  TrainConfig cfg;
  cfg.epochs = s.epochs;
  cfg.batch_size = s.batch_size.value_or(default_batch_size(s.system));
  cfg.learning_rate = s.learning_rate;
  cfg.final_lr_fraction = s.final_lr_fraction;
  cfg.seed = stream_seed(s, kTrain);
  r.history = train(r.model, train_set.samples, test_set.samples, cfg);
  r.train_mse = mse(r.model, train_set.samples);
  r.test_mse = mse(r.model, test_set.samples);
  r.model.recorded_test_mse = r.test_mse;
  r.test_samples = std::move(test_set.samples);
  return r;
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& s, const MlpModel& m) {
  const AnsatzCircuit ansatz = build_ansatz(s.system);
  const auto hams = test_hamiltonians(s);
  PredictorConfig pc;
  pc.iterations = s.iterations;
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < hams.size(); ++i) {
    Rng rng(stream_seed(s, kSweepStart, i));
    const auto start = random_angles(ansatz.param_count(), rng);
    const auto res = predictor_loop(m, hams[i], ansatz,
                                    device_for(s, ansatz.param_count(), {}, stream_seed(s, kSweepDevice, i)),
                                    start, pc);
    const double exact = exact_ground_energy(hams[i]);
    rows.push_back({distance_of(hams[i], i), res.best_energy, exact, std::abs(res.best_energy - exact)});
  }
  return rows;
}

std::vector<DeviceRow> run_noisy_devices(const ExperimentSpec& s, const MlpModel& m) {
  const AnsatzCircuit ansatz = build_ansatz(s.system);
  const PauliHamiltonian h = pad_to_schema(pick_hamiltonian(s), m.schema);
  const int P = ansatz.param_count();
  Rng erng(stream_seed(s, kNoiseDraw));
  Rng srng(stream_seed(s, kNoiseStart));
  PredictorConfig pc;
  pc.iterations = s.iterations;
  std::vector<DeviceRow> rows;
  for (int k = 0; k < s.devices; ++k) {
    std::vector<double> eps(static_cast<std::size_t>(P));
    for (double& e : eps) e = erng.uniform(-s.noise_range, s.noise_range);
    const auto start = random_angles(P, srng);
    const DeviceConfig dev = device_for(s, P, eps, stream_seed(s, kNoiseDevice, static_cast<std::uint64_t>(k)));
    const double oracle = oracle_minimum(exact_energy_fn(h, ansatz, dev.noise), P,
                                         stream_seed(s, kNoiseDraw, static_cast<std::uint64_t>(k) + 1));
    const auto res = predictor_loop(m, h, ansatz, dev, start, pc);
    OptimizerConfig oc;
    oc.max_evals_full = s.iterations + 1;
    oc.seed = s.seed;
    const auto base = vqe_run(h, ansatz, dev, oc, start);
    double base_best = std::numeric_limits<double>::infinity();
    for (const auto& ev : base.evaluations) base_best = std::min(base_best, ev.energy);
    rows.push_back({eps, oracle, res.best_energy, res.best_energy - oracle, base_best});
  }
  return rows;
}

// ---- commands ---------------------------------------------------------------

int cmd_gen_data(const ExperimentSpec& s, std::ostream& log) {
  const GenDataResult r = generate_dataset(s);
  const fs::path path = s.data_path.value_or(s.out / "dataset.jsonl");
  write_text(path, dataset_to_jsonl(r.dataset));
  json man = {{"system", r.dataset.system},
              {"source", synthetic(s) ? std::string(kSyntheticMolecule) : s.ham_dir->generic_string()},
              {"train_points", s.train_points},
              {"runs_per_point", s.runs_per_point},
              {"cutoff", s.full_traces ? json(nullptr) : json(s.cutoff.value_or(default_harvest_cutoff(s.system)))},
              {"reuse_steps", s.reuse_steps},
              {"offset_magnitudes", s.offset_magnitudes},
              {"seed", s.seed},
              {"schema", r.dataset.schema.label_text()},
              {"samples_before_augmentation", r.base_samples},
              {"samples", r.dataset.samples.size()},
              {"input_dim", r.dataset.input_dim()},
              {"output_dim", r.dataset.output_dim()}};
  write_text(s.out / "gen_manifest.json", man.dump(2) + "\n");
  log << "samples before augmentation: " << r.base_samples << "\n"
      << "samples: " << r.dataset.samples.size() << "\n";
  return 0;
}

int cmd_train(const ExperimentSpec& s, std::ostream& log) {
  const Dataset d = load_dataset(s.data_path.value_or(s.out / "dataset.jsonl"));
  if (d.system != system_name(s.system))
    throw SchemaMismatch("dataset is for " + d.system + ", not " + std::string(system_name(s.system)));
  const TrainResult r = train_on(s, d);
  save_model(s.model_path.value_or(s.out / "model.ckpt"), r.model);
  std::ostringstream csv;
  csv << "epoch,train_mse_rad2,test_mse_rad2\n";
  for (std::size_t e = 0; e < r.history.train_mse.size(); ++e)
    csv << e + 1 << "," << fmt(r.history.train_mse[e]) << ","
        << (e < r.history.test_mse.size() ? fmt(r.history.test_mse[e]) : "") << "\n";
  write_text(s.out / "train_history.csv", csv.str());
  const bool ok = r.train_mse < 1e-4 && r.test_mse < 1e-3;
  json met = {{"widths", r.model.widths},       {"train_samples", d.samples.size()},
              {"train_mse", r.train_mse},       {"test_mse", r.test_mse},
              {"train_target", 1e-4},           {"test_target", 1e-3},
              {"targets_met", ok}};
  write_text(s.out / "train_metrics.json", met.dump(2) + "\n");
  log << "train MSE " << fmt(r.train_mse) << ", test MSE " << fmt(r.test_mse) << "\n";
  if (!ok) {
    log << (s.allow_unmet ? "warning" : "error") << ": MSE targets (train < 1e-4, test < 1e-3) not met\n";
    return s.allow_unmet ? 0 : 2;
  }
  return 0;
}

int cmd_sweep(const ExperimentSpec& s, std::ostream& log) {
  const MlpModel m = load_model(s.model_path.value_or(s.out / "model.ckpt"));
  require_schema(m, family_schema(s));
  const auto rows = run_sweep(s, m);
  std::ostringstream csv;
  csv << "distance_angstrom,predicted_energy_hartree,exact_energy_hartree,abs_error_hartree,within_chemical_accuracy\n";
  double sum = 0.0;
  int within = 0;
  bool variational = true;
  for (const auto& r : rows) {
    const bool in = r.error <= s.chemical_accuracy;
    within += in;
    sum += r.error;
    if (!s.shots && r.predicted < r.exact - 1e-9) variational = false;
    csv << fmt(r.distance) << "," << fmt(r.predicted) << "," << fmt(r.exact) << "," << fmt(r.error) << ","
        << (in ? 1 : 0) << "\n";
  }
  write_text(s.out / "sweep.csv", csv.str());
  const double mean = rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
  json summ = {{"points", rows.size()},
               {"mean_abs_error_hartree", mean},
               {"within_chemical_accuracy", within},
               {"chemical_accuracy_hartree", s.chemical_accuracy},
               {"mean_within_chemical_accuracy", mean <= s.chemical_accuracy}};
  write_text(s.out / "sweep_summary.json", summ.dump(2) + "\n");
  log << "mean |E_pred - E_exact| = " << fmt(mean) << " Ha over " << rows.size() << " points ("
      << within << " within " << fmt(s.chemical_accuracy) << ")\n";
  if (!variational) {
    log << "error: predicted energy below the exact ground energy on an exact device\n";
    return 3;
  }
  return 0;
}

int cmd_compare(const ExperimentSpec& s, std::ostream& log) {
  const MlpModel m = load_model(s.model_path.value_or(s.out / "model.ckpt"));
  const AnsatzCircuit ansatz = build_ansatz(s.system);
  const PauliHamiltonian h = pad_to_schema(pick_hamiltonian(s), m.schema);
  Rng rng(stream_seed(s, kCompare));
  const auto start = random_angles(ansatz.param_count(), rng);
  const DeviceConfig dev = device_for(s, ansatz.param_count(), {}, stream_seed(s, kCompare, 1));
  PredictorConfig pc;
  pc.iterations = s.iterations;
  const auto nn = predictor_loop(m, h, ansatz, dev, start, pc);
  OptimizerConfig oc;
  oc.seed = s.seed;
  const auto full = vqe_run(h, ansatz, dev, oc, start);
  const double exact = exact_ground_energy(h);

  std::ostringstream csv;
  csv << "method,iteration,energy_hartree,best_so_far_hartree,exact_hartree\n";
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nn.energies.size(); ++i) {
    best = std::min(best, nn.energies[i]);
    csv << "neural," << i << "," << fmt(nn.energies[i]) << "," << fmt(best) << "," << fmt(exact) << "\n";
  }
  best = std::numeric_limits<double>::infinity();
  const int shown = std::min<int>(s.baseline_budget, full.loss_calls);
  for (int i = 0; i < shown; ++i) {
    const double e = full.evaluations[static_cast<std::size_t>(i)].energy;
    best = std::min(best, e);
    csv << "nelder_mead," << i << "," << fmt(e) << "," << fmt(best) << "," << fmt(exact) << "\n";
  }
  write_text(s.out / "compare.csv", csv.str());
  json summ = {{"hamiltonian", hamiltonian_ref(h)},
               {"neural_best_hartree", nn.best_energy},
               {"baseline_evaluations_to_converge", full.loss_calls},
               {"baseline_converged", full.converged},
               {"baseline_final_hartree", full.final_evaluation().energy},
               {"exact_hartree", exact}};
  write_text(s.out / "compare_summary.json", summ.dump(2) + "\n");
  log << "neural best " << fmt(nn.best_energy) << " Ha after " << s.iterations << " iterations; baseline "
      << fmt(full.final_evaluation().energy) << " Ha after " << full.loss_calls << " evaluations\n";
  return 0;
}

int cmd_noisy_devices(const ExperimentSpec& s, std::ostream& log) {
  const MlpModel m = load_model(s.model_path.value_or(s.out / "model.ckpt"));
  const auto rows = run_noisy_devices(s, m);
  std::ostringstream csv;
  csv << "device";
  const std::size_t P = rows.empty() ? 0 : rows[0].epsilon.size();
  for (std::size_t k = 0; k < P; ++k) csv << ",epsilon_" << k << "_rad";
  csv << ",oracle_energy_hartree,neural_best_hartree,gap_hartree,within_tol,baseline_best_hartree\n";
  int within = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const bool in = r.gap <= s.device_tol;
    within += in;
    csv << i;
    for (double e : r.epsilon) csv << "," << fmt(e);
    csv << "," << fmt(r.oracle) << "," << fmt(r.nn_best) << "," << fmt(r.gap) << "," << (in ? 1 : 0) << ","
        << fmt(r.baseline_best) << "\n";
  }
  write_text(s.out / "noisy_devices.csv", csv.str());
  json summ = {{"devices", rows.size()}, {"tolerance_hartree", s.device_tol}, {"within_tolerance", within},
               {"noise_range_rad", s.noise_range}};
  write_text(s.out / "noisy_devices_summary.json", summ.dump(2) + "\n");
  log << within << "/" << rows.size() << " devices within " << fmt(s.device_tol) << " Ha of the oracle\n";
  return 0;
}

int cmd_diag(const ExperimentSpec& s, std::ostream& log) {
  if (!s.ham_file) throw InvalidArgument("diag needs a Hamiltonian file");
  const PauliHamiltonian h = load_hamiltonian(*s.ham_file);
  const double e = exact_ground_energy(h);
  json out = {{"hamiltonian", hamiltonian_ref(h)}, {"num_qubits", h.num_qubits()}, {"ground_energy_hartree", e}};
  write_text(s.out / "diag.json", out.dump(2) + "\n");
  log << fmt(e) << "\n";
  return 0;
}

int cmd_mitigate_check(const ExperimentSpec& s, std::ostream& log) {
  const AnsatzCircuit ansatz = build_ansatz(s.system);
  const int n = ansatz.num_qubits();
  PauliHamiltonian h = [&] {
    if (s.ham_dir) return load_family(*s.ham_dir).front();
    if (s.system == SystemId::kH2_1Q) return synthetic_one_qubit(1.0);
    // Demo operator: every single-qubit X and Z plus neighbouring ZZ.
    std::vector<PauliTerm> terms;
    for (int q = 0; q < n; ++q) {
      for (char c : {'X', 'Z'}) {
        std::string l(static_cast<std::size_t>(n), 'I');
        l[static_cast<std::size_t>(n - 1 - q)] = c;
        terms.push_back({PauliString(l), 0.5});
      }
      if (q + 1 < n) {
        std::string l(static_cast<std::size_t>(n), 'I');
        l[static_cast<std::size_t>(n - 1 - q)] = 'Z';
        l[static_cast<std::size_t>(n - 2 - q)] = 'Z';
        terms.push_back({PauliString(l), 0.25});
      }
    }
    return PauliHamiltonian(n, std::move(terms), {"demo", std::nullopt});
  }();
  if (h.num_qubits() != n) throw DimensionError("Hamiltonian and ansatz qubit counts differ");
  Rng rng(stream_seed(s, kMitigate));
  const auto angles = random_angles(ansatz.param_count(), rng);
  const DeviceConfig dev = device_for(s, ansatz.param_count(), {}, stream_seed(s, kMitigate, 1));
  Device device(dev);
  const DepolarizationEstimate est = estimate_depolarization(ansatz, device);
  const auto measured = device.evaluate(ansatz.circuit, angles, h);
  const auto mitigated = mitigate(measured, h, est);
  const auto exact = measure_expectations(run_circuit(ansatz.circuit, angles, NoiseModel::ideal(ansatz.param_count())),
                                          h, DeviceConfig::exact(NoiseModel::ideal(ansatz.param_count())));
  std::ostringstream csv;
  csv << "term,exact,measured,mitigated\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    csv << h.terms()[i].label.label() << "," << fmt(exact[i]) << "," << fmt(measured[i]) << "," << fmt(mitigated[i])
        << "\n";
    worst = std::max(worst, std::abs(mitigated[i] - exact[i]));
  }
  write_text(s.out / "mitigate_check.csv", csv.str());
  json summ = {{"system", system_name(s.system)},
               {"lambda", s.depolarizing_lambda},
               {"shots", s.shots ? json(*s.shots) : json("exact")},
               {"p", est.p},
               {"ideal_sign", est.ideal_sign},
               {"skip", est.skip},
               {"max_abs_error_mitigated", worst},
               {"energy_exact_hartree", energy(exact, h)},
               {"energy_measured_hartree", energy(measured, h)},
               {"energy_mitigated_hartree", energy(mitigated, h)}};
  write_text(s.out / "mitigate_check.json", summ.dump(2) + "\n");
  log << "p = " << fmt(est.p) << (est.skip ? " (skip)" : "") << ", max |mitigated - exact| = " << fmt(worst) << "\n";
  if (!s.shots && s.depolarizing_lambda < 1.0 && worst > 1e-9) {
    log << "error: exact-mode mitigation did not invert the depolarization\n";
    return 3;
  }
  return 0;
}

}  // namespace nnvqe

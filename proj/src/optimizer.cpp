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

#include "nnvqe/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace nnvqe {

using nlohmann::json;

int default_harvest_cutoff(SystemId id) {
  switch (id) {
    case SystemId::kH2_1Q:
    case SystemId::kH2_2Q:
      return 10;
    case SystemId::kH3_3Q:
    case SystemId::kHeHp_4Q:
      return 30;
  }
  return 10;
}

OptimizationTrace OptimizationTrace::harvested(int cutoff) const {
  if (cutoff < 0) throw InvalidArgument("harvest cutoff must be non-negative");
  if (evaluations.empty()) return *this;
  OptimizationTrace out = *this;
  const std::size_t body = evaluations.size() - 1;
  const std::size_t keep = std::min(body, static_cast<std::size_t>(cutoff));
  out.evaluations.assign(evaluations.begin(), evaluations.begin() + keep);
  out.evaluations.push_back(evaluations.back());
  return out;
}

namespace {

struct Coefficients {
  double reflect, expand, contract, shrink;
};

Coefficients coefficients_for(std::size_t n) {
  if (n < 2) return {1.0, 2.0, 0.5, 0.5};
  const double d = static_cast<double>(n);
  return {1.0, 1.0 + 2.0 / d, 0.75 - 1.0 / (2.0 * d), 1.0 - 1.0 / d};
}

std::vector<double> affine(const std::vector<double>& c, const std::vector<double>& x, double t) {
  // c + t (x - c)
  std::vector<double> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = c[k] + t * (x[k] - c[k]);
  return out;
}

}  // namespace

OptimizationTrace minimize(const LossFunction& loss, std::span<const double> initial,
                           const OptimizerConfig& cfg) {
  const std::size_t n = initial.size();
  if (n == 0) throw InvalidArgument("minimize: empty parameter vector");
  if (cfg.max_evals_full < 1) throw InvalidArgument("minimize: max_evals_full must be >= 1");

  OptimizationTrace trace;
  trace.seed = cfg.seed;

  auto has_budget = [&] { return static_cast<int>(trace.evaluations.size()) < cfg.max_evals_full; };
  // Returns the index of the new record in trace.evaluations.
  auto evaluate = [&](const std::vector<double>& x) -> std::size_t {
    LossValue r = loss(x);
    trace.evaluations.push_back({x, std::move(r.expectations), r.energy});
    if (!std::isfinite(r.energy)) {
      trace.loss_calls = static_cast<int>(trace.evaluations.size());
      std::ostringstream msg;
      msg << "loss returned a non-finite value at evaluation " << trace.evaluations.size() - 1;
      throw OptimizationAborted(msg.str(), trace);
    }
    return trace.evaluations.size() - 1;
  };

  std::vector<std::vector<double>> pts;
  std::vector<std::size_t> rec;  // vertex -> evaluation record
  auto f = [&](std::size_t i) { return trace.evaluations[rec[i]].energy; };

  pts.emplace_back(initial.begin(), initial.end());
  rec.push_back(evaluate(pts[0]));
  for (std::size_t i = 0; i < n && has_budget(); ++i) {
    std::vector<double> x(initial.begin(), initial.end());
    x[i] += cfg.initial_step;
    pts.push_back(x);
    rec.push_back(evaluate(x));
  }

  const Coefficients co = coefficients_for(n);
  bool converged = false;

  auto sort_simplex = [&] {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return f(a) < f(b); });
    std::vector<std::vector<double>> p2;
    std::vector<std::size_t> r2;
    for (std::size_t i : order) {
      p2.push_back(std::move(pts[i]));
      r2.push_back(rec[i]);
    }
    pts = std::move(p2);
    rec = std::move(r2);
  };

  if (pts.size() == n + 1) {
    for (;;) {
      sort_simplex();
      double diam = 0.0, spread = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 0; k < n; ++k) diam = std::max(diam, std::abs(pts[i][k] - pts[0][k]));
        spread = std::max(spread, std::abs(f(i) - f(0)));
      }
      if (diam < cfg.simplex_tol && spread < cfg.convergence_tol) {
        converged = true;
        break;
      }
      if (!has_budget()) break;

      std::vector<double> c(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) c[k] += pts[i][k] / static_cast<double>(n);

      auto xr = affine(c, pts[n], -co.reflect);
      const std::size_t rr = evaluate(xr);
      const double fr = trace.evaluations[rr].energy;

      if (fr < f(0)) {
        if (has_budget()) {
          auto xe = affine(c, xr, co.expand);
          const std::size_t re = evaluate(xe);
          if (trace.evaluations[re].energy < fr) {
            pts[n] = std::move(xe);
            rec[n] = re;
            continue;
          }
        }
        pts[n] = std::move(xr);
        rec[n] = rr;
        continue;
      }
      if (fr < f(n - 1)) {
        pts[n] = std::move(xr);
        rec[n] = rr;
        continue;
      }
      if (!has_budget()) break;
      const bool outside = fr < f(n);
      auto xc = outside ? affine(c, xr, co.contract) : affine(c, pts[n], co.contract);
      const std::size_t rc = evaluate(xc);
      const double fc = trace.evaluations[rc].energy;
      if (outside ? fc <= fr : fc < f(n)) {
        pts[n] = std::move(xc);
        rec[n] = rc;
        continue;
      }
      for (std::size_t i = 1; i <= n && has_budget(); ++i) {
        pts[i] = affine(pts[0], pts[i], co.shrink);
        rec[i] = evaluate(pts[i]);
      }
    }
  } else {
    sort_simplex();
  }

  trace.loss_calls = static_cast<int>(trace.evaluations.size());
  trace.converged = converged;
  trace.final_angles = pts[0];
  trace.evaluations.push_back(trace.evaluations[rec[0]]);
  if (cfg.harvest_cutoff) return trace.harvested(*cfg.harvest_cutoff);
  return trace;
}

std::vector<double> random_angles(int count, Rng& rng) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& a : out) a = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return out;
}

std::string hamiltonian_ref(const PauliHamiltonian& h) {
  std::ostringstream os;
  os << (h.metadata().molecule.empty() ? "unnamed" : h.metadata().molecule);
  if (h.metadata().distance_angstrom) os << "@" << *h.metadata().distance_angstrom;
  return os.str();
}

OptimizationTrace vqe_run(const PauliHamiltonian& h, const AnsatzCircuit& ansatz,
                          const DeviceConfig& device, const OptimizerConfig& cfg,
                          std::optional<std::vector<double>> initial,
                          std::optional<DepolarizationEstimate> mitigation) {
  if (h.num_qubits() != ansatz.num_qubits())
    throw DimensionError("Hamiltonian and ansatz qubit counts differ");
  std::vector<double> start;
  if (initial) {
    start = std::move(*initial);
  } else {
    Rng rng(derive_seed(cfg.seed, 0));
    start = random_angles(ansatz.param_count(), rng);
  }
  if (static_cast<int>(start.size()) != ansatz.param_count())
    throw DimensionError("initial angle count does not match the ansatz");

  Device dev(device);
  LossFunction loss = [&](std::span<const double> x) {
    std::vector<double> e = dev.evaluate(ansatz.circuit, x, h);
    if (mitigation) e = mitigate(e, h, *mitigation);
    const double en = energy(e, h);
    return LossValue{en, std::move(e)};
  };
  OptimizationTrace trace = minimize(loss, start, cfg);
  trace.hamiltonian_ref = hamiltonian_ref(h);
  trace.noise = device.noise;
  return trace;
}

std::string trace_to_jsonl(const OptimizationTrace& trace) {
  std::ostringstream os;
  json head;
  head["type"] = "trace";
  head["hamiltonian"] = trace.hamiltonian_ref;
  head["noise"] = {{"rotation_offsets", trace.noise.rotation_offsets},
                   {"depolarizing_lambda", trace.noise.depolarizing_lambda}};
  head["seed"] = trace.seed;
  head["converged"] = trace.converged;
  head["loss_calls"] = trace.loss_calls;
  head["final_angles"] = trace.final_angles;
  os << head.dump() << "\n";
  for (std::size_t i = 0; i < trace.evaluations.size(); ++i) {
    const Evaluation& ev = trace.evaluations[i];
    json line = {{"angles", ev.angles}, {"expectations", ev.expectations}, {"energy", ev.energy}};
    if (i + 1 == trace.evaluations.size()) line["final"] = true;
    os << line.dump() << "\n";
  }
  return os.str();
}

void write_trace(const std::filesystem::path& path, const OptimizationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << trace_to_jsonl(trace);
}

OptimizationTrace parse_trace(std::string_view text) {
  OptimizationTrace trace;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  bool saw_header = false, saw_final = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + why);
    };
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(e.what());
    }
    try {
      if (!saw_header) {
        if (j.value("type", "") != "trace") fail("missing trace header");
        trace.hamiltonian_ref = j.at("hamiltonian").get<std::string>();
        trace.noise.rotation_offsets = j.at("noise").at("rotation_offsets").get<std::vector<double>>();
        trace.noise.depolarizing_lambda = j.at("noise").at("depolarizing_lambda").get<double>();
        trace.seed = j.at("seed").get<std::uint64_t>();
        trace.converged = j.at("converged").get<bool>();
        trace.loss_calls = j.at("loss_calls").get<int>();
        trace.final_angles = j.at("final_angles").get<std::vector<double>>();
        saw_header = true;
        continue;
      }
      if (saw_final) fail("evaluation after the final entry");
      Evaluation ev{j.at("angles").get<std::vector<double>>(),
                    j.at("expectations").get<std::vector<double>>(), j.at("energy").get<double>()};
      trace.evaluations.push_back(std::move(ev));
      saw_final = j.value("final", false);
    } catch (const json::exception& e) {
      fail(e.what());
    }
  }
  if (!saw_header) throw ParseError("trace: empty input");
  if (!saw_final) throw ParseError("trace: no final entry");
  return trace;
}

GridSearchResult grid_search_minimum(const std::function<double(std::span<const double>)>& fn,
                                     int dims, int points_per_dim, double lo, double hi) {
  if (dims < 1 || points_per_dim < 1) throw InvalidArgument("grid_search_minimum: empty grid");
  const double step = (hi - lo) / points_per_dim;
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  std::vector<double> x(static_cast<std::size_t>(dims)), best;
  double best_f = std::numeric_limits<double>::infinity();
  for (;;) {
    for (int d = 0; d < dims; ++d) x[d] = lo + step * idx[d];
    const double v = fn(x);
    if (v < best_f) {
      best_f = v;
      best = x;
    }
    int d = dims - 1;
    while (d >= 0 && ++idx[d] == points_per_dim) idx[d--] = 0;
    if (d < 0) break;
  }
  OptimizerConfig polish;
  polish.initial_step = step;
  polish.simplex_tol = 1e-9;
  polish.convergence_tol = 1e-13;
  polish.max_evals_full = 4000;
  LossFunction loss = [&](std::span<const double> p) { return LossValue{fn(p), {}}; };
  OptimizationTrace t = minimize(loss, best, polish);
  const Evaluation& fin = t.final_evaluation();
  if (fin.energy < best_f) return {fin.angles, fin.energy};
  return {best, best_f};
}

}  // namespace nnvqe

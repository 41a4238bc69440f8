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

#include "nnvqe/dataset.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace nnvqe {

using nlohmann::json;

std::vector<double> assemble_input(std::span<const double> coeffs, std::span<const double> expectations,
                                   std::span<const double> angles) {
  std::vector<double> in;
  in.reserve(coeffs.size() + expectations.size() + angles.size());
  in.insert(in.end(), coeffs.begin(), coeffs.end());
  in.insert(in.end(), expectations.begin(), expectations.end());
  in.insert(in.end(), angles.begin(), angles.end());
  return in;
}

std::size_t Dataset::input_dim() const { return samples.empty() ? 0 : samples.front().input.size(); }
std::size_t Dataset::output_dim() const { return samples.empty() ? 0 : samples.front().target.size(); }

std::vector<TrainingSample> trace_to_samples(const OptimizationTrace& trace,
                                             std::span<const double> optimal_angles,
                                             const PauliHamiltonian& h, const TermSchema& schema) {
  const std::vector<double> coeffs = coefficient_vector(h, schema);
  // Position of each schema label among h's terms (the trace's expectation order).
  std::vector<std::size_t> pos;
  for (const PauliString& p : schema.labels()) {
    auto i = h.find(p);
    if (!i) throw SchemaMismatch("trace has no expectation for \"" + p.label() + "\"");
    pos.push_back(*i);
  }
  std::vector<TrainingSample> out;
  out.reserve(trace.evaluations.size());
  for (std::size_t k = 0; k < trace.evaluations.size(); ++k) {
    const Evaluation& ev = trace.evaluations[k];
    if (ev.angles.size() != optimal_angles.size())
      throw DimensionError("evaluation " + std::to_string(k) + " has " +
                           std::to_string(ev.angles.size()) + " angles, expected " +
                           std::to_string(optimal_angles.size()));
    if (ev.expectations.size() != h.size())
      throw DimensionError("evaluation " + std::to_string(k) + " expectation count mismatch");
    std::vector<double> exps;
    exps.reserve(pos.size());
    for (std::size_t i : pos) exps.push_back(ev.expectations[i]);
    TrainingSample s;
    s.input = assemble_input(coeffs, exps, ev.angles);
    s.target.resize(optimal_angles.size());
    for (std::size_t j = 0; j < optimal_angles.size(); ++j) s.target[j] = optimal_angles[j] - ev.angles[j];
    s.prov = {trace.hamiltonian_ref, static_cast<int>(k), {}};
    for (double x : s.input)
      if (!std::isfinite(x)) throw NumericalError("non-finite sample input");
    out.push_back(std::move(s));
  }
  return out;
}

OptimizationTrace retarget_trace(const OptimizationTrace& trace, const PauliHamiltonian& from,
                                 const PauliHamiltonian& to) {
  std::vector<std::optional<std::size_t>> src;
  for (const PauliTerm& t : to.terms()) {
    if (t.label.is_identity()) {
      src.emplace_back();
      continue;
    }
    auto i = from.find(t.label);
    if (!i) throw SchemaMismatch("trace has no expectation for \"" + t.label.label() + "\"");
    src.emplace_back(*i);
  }
  OptimizationTrace out = trace;
  out.hamiltonian_ref = trace.hamiltonian_ref + "->" + hamiltonian_ref(to);
  for (Evaluation& ev : out.evaluations) {
    if (ev.expectations.size() != from.size()) throw DimensionError("trace expectation count mismatch");
    std::vector<double> e;
    for (const auto& k : src) e.push_back(k ? ev.expectations[*k] : 1.0);
    ev.energy = energy(e, to);
    ev.expectations = std::move(e);
  }
  return out;
}

std::vector<TrainingSample> augment_with_offsets(const std::vector<TrainingSample>& samples,
                                                 const std::vector<std::vector<double>>& epsilon_vectors,
                                                 int param_count) {
  const auto pc = static_cast<std::size_t>(param_count);
  for (const auto& eps : epsilon_vectors)
    if (eps.size() != pc) throw DimensionError("offset vector length differs from parameter count");
  std::vector<TrainingSample> out;
  out.reserve(samples.size() * (1 + epsilon_vectors.size()));
  for (const TrainingSample& s : samples) {
    if (s.input.size() < pc || s.target.size() != pc)
      throw DimensionError("sample does not carry " + std::to_string(pc) + " angles");
    out.push_back(s);
    const std::size_t a0 = s.input.size() - pc;
    for (const auto& eps : epsilon_vectors) {
      TrainingSample t = s;
      for (std::size_t j = 0; j < pc; ++j) t.input[a0 + j] -= eps[j];
      t.prov.epsilon = eps;
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<std::vector<double>> make_offset_grid(int param_count, std::span<const double> magnitudes,
                                                  bool include_zero) {
  if (magnitudes.empty()) throw InvalidArgument("make_offset_grid: no magnitudes");
  if (param_count < 1) throw InvalidArgument("make_offset_grid: param_count must be >= 1");
  std::vector<double> values;
  for (double m : magnitudes) {
    values.push_back(-m);
    values.push_back(m);
  }
  const double total = std::pow(static_cast<double>(values.size()), param_count);
  if (total > 1e6)
    throw CapacityError("offset grid of " + std::to_string(static_cast<long long>(total)) +
                        " vectors exceeds the 1e6 guard");
  std::vector<std::vector<double>> out;
  if (include_zero) out.emplace_back(static_cast<std::size_t>(param_count), 0.0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(param_count), 0);
  for (;;) {
    std::vector<double> v(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) v[k] = values[idx[k]];
    out.push_back(std::move(v));
    int k = param_count - 1;
    while (k >= 0 && ++idx[k] == values.size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  return idx;
}

std::pair<Dataset, Dataset> split(const Dataset& d, double test_fraction, std::uint64_t seed) {
  const std::size_t n = d.samples.size();
  if (n == 0) throw InvalidArgument("split: empty dataset");
  if (n < 2) throw InvalidArgument("split: need at least 2 samples");
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) throw InvalidArgument("split: fraction must be in [0, 1)");
  std::size_t n_test = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(test_fraction * n)));
  n_test = std::min(n_test, n - 1);
  Rng rng(seed);
  const auto idx = shuffled_indices(n, rng);
  Dataset train{d.system, d.schema, seed, {}}, test{d.system, d.schema, seed, {}};
  for (std::size_t i = 0; i < n; ++i) (i < n_test ? test : train).samples.push_back(d.samples[idx[i]]);
  return {std::move(train), std::move(test)};
}

std::string dataset_to_jsonl(const Dataset& d) {
  std::ostringstream os;
  json head = {{"version", kDatasetVersion},
               {"system", d.system},
               {"schema", d.schema.label_text()},
               {"layout", kLayout},
               {"split_seed", d.split_seed}};
  os << head.dump() << "\n";
  for (const TrainingSample& s : d.samples) {
    json prov = {{"trace", s.prov.trace_id}, {"eval", s.prov.eval_index}, {"eps", s.prov.epsilon}};
    os << json{{"in", s.input}, {"out", s.target}, {"prov", prov}}.dump() << "\n";
  }
  return os.str();
}

Dataset parse_dataset(std::string_view text) {
  Dataset d;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("dataset line " + std::to_string(lineno) + ": " + why);
    };
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(std::string("malformed JSON (") + e.what() + ")");
    }
    try {
      if (!header) {
        if (!j.is_object() || !j.contains("version")) fail("missing header");
        if (j.at("version").get<int>() != kDatasetVersion)
          fail("unsupported version " + j.at("version").dump());
        if (j.at("layout").get<std::string>() != kLayout) fail("unsupported layout " + j.at("layout").dump());
        d.system = j.at("system").get<std::string>();
        std::vector<PauliString> labels;
        for (const auto& l : j.at("schema")) labels.emplace_back(l.get<std::string>());
        d.schema = TermSchema(std::move(labels));
        d.split_seed = j.value("split_seed", std::uint64_t{0});
        header = true;
        continue;
      }
      TrainingSample s;
      s.input = j.at("in").get<std::vector<double>>();
      s.target = j.at("out").get<std::vector<double>>();
      if (j.contains("prov")) {
        const json& p = j.at("prov");
        s.prov.trace_id = p.value("trace", "");
        s.prov.eval_index = p.value("eval", 0);
        s.prov.epsilon = p.value("eps", std::vector<double>{});
      }
      if (!d.samples.empty() && (s.input.size() != d.input_dim() || s.target.size() != d.output_dim()))
        fail("sample dimensions differ from earlier samples");
      d.samples.push_back(std::move(s));
    } catch (const json::exception& e) {
      fail(e.what());
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
  }
  if (!header) throw ParseError("dataset: empty input");
  return d;
}

void save_dataset(const std::filesystem::path& path, const Dataset& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dataset_to_jsonl(d);
  if (!out) throw Error("write failed for " + path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

}  // namespace nnvqe

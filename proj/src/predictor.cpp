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

#include "nnvqe/predictor.hpp"

#include <limits>

#include "nnvqe/dataset.hpp"

namespace nnvqe {

std::vector<double> predict_step(const MlpModel& m, const PauliHamiltonian& h, const TermSchema& schema,
                                 std::span<const double> angles, std::span<const double> expectations) {
  require_schema(m, schema);
  if (expectations.size() != h.size()) throw DimensionError("expectation count differs from term count");
  std::vector<double> exps;
  exps.reserve(schema.size());
  for (const PauliString& p : schema.labels()) {
    auto i = h.find(p);
    if (!i) throw SchemaMismatch("no expectation for schema label \"" + p.label() + "\"");
    exps.push_back(expectations[*i]);
  }
  const std::vector<double> in = assemble_input(coefficient_vector(h, schema), exps, angles);
  if (static_cast<int>(in.size()) != m.input_dim())
    throw DimensionError("assembled input has " + std::to_string(in.size()) + " entries, model expects " +
                         std::to_string(m.input_dim()));
  if (static_cast<std::size_t>(m.output_dim()) != angles.size())
    throw DimensionError("model output width differs from the angle count");
  return m.forward(in);
}

PredictorResult predictor_loop(const MlpModel& m, const PauliHamiltonian& h, const AnsatzCircuit& ansatz,
                               const DeviceConfig& device, std::span<const double> initial_angles,
                               const PredictorConfig& cfg) {
  if (cfg.iterations < 0) throw InvalidArgument("iterations must be >= 0");
  if (static_cast<int>(initial_angles.size()) != ansatz.param_count())
    throw DimensionError("initial angle count does not match the ansatz");
  const PauliHamiltonian hp = pad_to_schema(h, m.schema);
  Device dev(device);
  PredictorResult r;
  r.best_energy = std::numeric_limits<double>::infinity();
  std::vector<double> angles(initial_angles.begin(), initial_angles.end());
  for (int it = 0; it <= cfg.iterations; ++it) {
    std::vector<double> e = dev.evaluate(ansatz.circuit, angles, hp);
    if (cfg.mitigation) e = mitigate(e, hp, *cfg.mitigation);
    const double en = energy(e, hp);
    r.energies.push_back(en);
    r.angles.push_back(angles);
    if (en < r.best_energy) {
      r.best_energy = en;
      r.best_angles = angles;
    }
    if (it == cfg.iterations) break;
    const std::vector<double> delta = predict_step(m, hp, m.schema, angles, e);
    for (std::size_t k = 0; k < angles.size(); ++k) angles[k] += delta[k];
  }
  return r;
}

}  // namespace nnvqe

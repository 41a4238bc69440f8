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

// Derivative-free baseline VQE. Every loss evaluation is recorded; the
// resulting trace is both the comparison baseline and the raw material for
// the training set.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nnvqe/ansatz.hpp"
#include "nnvqe/error.hpp"
#include "nnvqe/mitigation.hpp"
#include "nnvqe/pauli.hpp"
#include "nnvqe/rng.hpp"
#include "nnvqe/statevector.hpp"

namespace nnvqe {

struct OptimizerConfig {
  /// When set, the returned trace keeps only the first `harvest_cutoff`
  /// evaluations plus the converged final point. The run itself still goes
  /// to convergence (or max_evals_full).
  std::optional<int> harvest_cutoff;
  /// Energy spread across the simplex, Hartree.
  double convergence_tol = 1e-4;
  /// Simplex diameter (max coordinate distance to the best vertex), radians.
  double simplex_tol = 1e-4;
  int max_evals_full = 1000;
  double initial_step = 0.5;
  std::uint64_t seed = 0;
};

/// 10 for H2_1Q and H2_2Q, 30 for H3_3Q and HEHP_4Q.
int default_harvest_cutoff(SystemId id);

struct Evaluation {
  std::vector<double> angles;
  std::vector<double> expectations;
  double energy = 0.0;
};

struct OptimizationTrace {
  /// Loss evaluations in call order; the last entry repeats the final point.
  std::vector<Evaluation> evaluations;
  std::vector<double> final_angles;
  bool converged = false;
  /// Number of loss calls made, before any harvest truncation.
  int loss_calls = 0;
  std::string hamiltonian_ref;
  NoiseModel noise;
  std::uint64_t seed = 0;

  const Evaluation& final_evaluation() const { return evaluations.back(); }
  /// First `cutoff` pre-final evaluations followed by the final entry.
  OptimizationTrace harvested(int cutoff) const;
};

struct LossValue {
  double energy;
  std::vector<double> expectations;
};

using LossFunction = std::function<LossValue(std::span<const double>)>;

/// Thrown when the loss returns a non-finite energy. Carries the trace up to
/// and including the offending evaluation.
class OptimizationAborted : public NumericalError {
 public:
  OptimizationAborted(const std::string& what, OptimizationTrace partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const OptimizationTrace& partial_trace() const { return partial_; }

 private:
  OptimizationTrace partial_;
};

/// Nelder-Mead simplex. Uses the dimension-adaptive coefficients
/// (reflection 1, expansion 1 + 2/n, contraction 0.75 - 1/(2n),
/// shrink 1 - 1/n) for n >= 2 and the classic (1, 2, 1/2, 1/2) for n = 1.
/// The initial simplex steps `initial_step` along each axis; ties are broken
/// by the lower vertex index. Stops when both tolerances hold or the
/// evaluation budget is spent.
OptimizationTrace minimize(const LossFunction& loss, std::span<const double> initial,
                           const OptimizerConfig& cfg);

/// Uniform draws in [-pi, pi).
std::vector<double> random_angles(int count, Rng& rng);

/// Minimizes the measured energy of `ansatz` on a simulated device. With no
/// `initial` the start is drawn from random_angles seeded by cfg.seed. When
/// `mitigation` is given, measured expectations are corrected before use.
OptimizationTrace vqe_run(const PauliHamiltonian& h, const AnsatzCircuit& ansatz,
                          const DeviceConfig& device, const OptimizerConfig& cfg,
                          std::optional<std::vector<double>> initial = std::nullopt,
                          std::optional<DepolarizationEstimate> mitigation = std::nullopt);

/// "molecule@distance" label for trace headers.
std::string hamiltonian_ref(const PauliHamiltonian& h);

/// JSON-lines trace file: a header line, one line per evaluation, and the
/// last line flagged "final": true.
void write_trace(const std::filesystem::path& path, const OptimizationTrace& trace);
std::string trace_to_jsonl(const OptimizationTrace& trace);
OptimizationTrace parse_trace(std::string_view text);

struct GridSearchResult {
  std::vector<double> angles;
  double energy;
};

/// Exhaustive grid over [lo, hi)^dims followed by a tight simplex polish of
/// the best grid point. Intended for 1-3 angle systems.
GridSearchResult grid_search_minimum(const std::function<double(std::span<const double>)>& f,
                                     int dims, int points_per_dim, double lo, double hi);

}  // namespace nnvqe

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

// Training samples, noise-offset augmentation, splitting and the JSON-lines
// dataset file.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "nnvqe/optimizer.hpp"
#include "nnvqe/pauli.hpp"

namespace nnvqe {

/// Network input layout tag: coefficients, then expectations, then angles.
inline constexpr const char* kLayout = "h|exp|ang";
inline constexpr int kDatasetVersion = 1;

struct Provenance {
  std::string trace_id;
  int eval_index = 0;
  std::vector<double> epsilon;  ///< offset applied by augmentation, empty if none

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TrainingSample {
  std::vector<double> input;   ///< coeffs ++ expectations ++ angles
  std::vector<double> target;  ///< optimal angles - input angles
  Provenance prov;

  friend bool operator==(const TrainingSample&, const TrainingSample&) = default;
};

/// Concatenates the input vector in the dataset layout.
std::vector<double> assemble_input(std::span<const double> coeffs, std::span<const double> expectations,
                                   std::span<const double> angles);

struct Dataset {
  std::string system;
  TermSchema schema;
  std::uint64_t split_seed = 0;
  std::vector<TrainingSample> samples;

  std::size_t input_dim() const;
  std::size_t output_dim() const;
};

/// One sample per evaluation, final step included. Expectations are taken in
/// schema order; every schema label must have been measured (h may carry
/// extra labels, e.g. the identity).
std::vector<TrainingSample> trace_to_samples(const OptimizationTrace& trace,
                                             std::span<const double> optimal_angles,
                                             const PauliHamiltonian& h, const TermSchema& schema);

/// Copy of `trace` with expectations reordered from `from`'s term order to
/// `to`'s, energies recomputed with `to`'s coefficients. Every non-identity
/// label of `to` must be a term of `from`.
OptimizationTrace retarget_trace(const OptimizationTrace& trace, const PauliHamiltonian& from,
                                 const PauliHamiltonian& to);

/// For each sample and each eps: angles shifted by -eps, everything else kept.
/// Output order is sample-major: original, then one copy per eps.
std::vector<TrainingSample> augment_with_offsets(const std::vector<TrainingSample>& samples,
                                                 const std::vector<std::vector<double>>& epsilon_vectors,
                                                 int param_count);

/// Cartesian product of {-m1, +m1, -m2, +m2, ...} over parameters, first
/// parameter varying slowest. Rejects grids with more than 1e6 vectors.
std::vector<std::vector<double>> make_offset_grid(int param_count, std::span<const double> magnitudes,
                                                  bool include_zero = false);

/// Deterministic shuffle then cut; test size max(1, round(fraction * N)).
std::pair<Dataset, Dataset> split(const Dataset& d, double test_fraction, std::uint64_t seed);

/// Seeded Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng);

std::string dataset_to_jsonl(const Dataset& d);
Dataset parse_dataset(std::string_view text);
void save_dataset(const std::filesystem::path& path, const Dataset& d);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace nnvqe

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

#include <cstdint>
#include <random>

namespace nnvqe {

/// Mixes a 64-bit value with the SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent seed for sub-task `index` of a run seeded by `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded random source with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so the
/// transforms below are written out explicitly:
///   - uniform():  top 53 bits of one engine draw, scaled by 2^-53, in [0, 1).
///   - normal():   Box-Muller on two uniform() draws, both outputs used.
///   - below(n):   rejection sampling on the masked low bits.
/// The engine is seeded with splitmix64(seed).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double uniform();
  double uniform(double lo, double hi);
  double normal();
  /// Uniform integer in [0, n). `n` must be positive.
  std::uint64_t below(std::uint64_t n);

  /// New generator for an independent sub-stream.
  Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace nnvqe

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

// Self-contained one-qubit Hamiltonian family used when no coefficient
// directory is given. The coefficients are smooth in a distance-like
// parameter d in [0.25, 2.75] and carry no physical meaning:
//
//   r(d)   = 0.9 + 0.6 exp(-d)
//   phi(d) = 0.2 + 0.45 d
//   h0(d)  = -0.6 + 0.4 (d - 1)^2 / (1 + d^2)
//   h1     =  r sin(phi),  h2 = 0,  h3 = -r cos(phi)
//
// so the exact minimum is h0 - r and the optimal angles are (-phi, 0).
// The Y term is kept with a zero coefficient so the schema is [X, Y, Z].

#include <vector>

#include "nnvqe/error.hpp"
#include "nnvqe/pauli.hpp"

namespace nnvqe {

inline constexpr double kSyntheticMin = 0.25;
inline constexpr double kSyntheticMax = 2.75;
inline constexpr const char* kSyntheticMolecule = "synthetic-1q";

PauliHamiltonian synthetic_one_qubit(double d);

/// n equally spaced points on [lo, hi]; {lo} when n == 1.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace nnvqe

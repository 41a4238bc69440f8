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

#include "nnvqe/synthetic.hpp"

#include <cmath>

namespace nnvqe {

PauliHamiltonian synthetic_one_qubit(double d) {
  if (!std::isfinite(d)) throw InvalidArgument("synthetic distance must be finite");
  const double r = 0.9 + 0.6 * std::exp(-d);
  const double phi = 0.2 + 0.45 * d;
  const double h0 = -0.6 + 0.4 * (d - 1.0) * (d - 1.0) / (1.0 + d * d);
  std::vector<PauliTerm> terms{{PauliString("I"), h0},
                               {PauliString("X"), r * std::sin(phi)},
                               {PauliString("Y"), 0.0},
                               {PauliString("Z"), -r * std::cos(phi)}};
  return PauliHamiltonian(1, std::move(terms), {kSyntheticMolecule, d});
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw InvalidArgument("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace nnvqe

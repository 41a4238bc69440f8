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

#include "nnvqe/analytic.hpp"

#include <cmath>
#include <numbers>

namespace nnvqe {

OneQubitCoefficients one_qubit_coefficients(const PauliHamiltonian& h) {
  if (h.num_qubits() != 1) throw DimensionError("expected a one-qubit Hamiltonian");
  OneQubitCoefficients c;
  for (const PauliTerm& t : h.terms()) {
    switch (t.label.label()[0]) {
      case 'I': c.h0 = t.coeff; break;
      case 'X': c.h1 = t.coeff; break;
      case 'Y': c.h2 = t.coeff; break;
      case 'Z': c.h3 = t.coeff; break;
    }
  }
  return c;
}

AnglePair optimal_angles(double h1, double h2, double h3) {
  const double a = std::hypot(h1, h2);
  if (a == 0.0) {
    if (h3 == 0.0) throw InvalidArgument("degenerate one-qubit Hamiltonian (h1 = h2 = h3 = 0)");
    return {h3 > 0.0 ? std::numbers::pi : 0.0, 0.0};
  }
  const double r = std::hypot(a, h3);
  return {-2.0 * std::atan((h3 + r) / a), std::atan2(h2, h1)};
}

OneQubitSolution solve_one_qubit(const OneQubitCoefficients& c) {
  const AnglePair ang = optimal_angles(c.h1, c.h2, c.h3);
  const double a = std::hypot(c.h1, c.h2);
  return {ang.u, ang.v, c.h0 - std::hypot(a, c.h3), a, std::atan2(c.h2, c.h1)};
}

std::array<double, 3> expectations_at(double u, double v) {
  const double s = std::sin(u);
  return {s * std::cos(v), s * std::sin(v), std::cos(u)};
}

double one_qubit_energy(const OneQubitCoefficients& c, double u, double v) {
  const auto e = expectations_at(u, v);
  return c.h0 + c.h1 * e[0] + c.h2 * e[1] + c.h3 * e[2];
}

TrainingSample make_noisy_sample(double h1, double h2, double h3, double u, double v, double u_err,
                                 double v_err) {
  const AnglePair opt = optimal_angles(h1, h2, h3);
  const double pu = u + u_err;
  const double pv = v + v_err;
  const auto e = expectations_at(pu, pv);
  TrainingSample s;
  s.input = {h1, h2, h3, e[0], e[1], e[2], u, v};
  s.target = {opt.u - pu, opt.v - pv};
  s.prov.epsilon = {u_err, v_err};
  return s;
}

}  // namespace nnvqe

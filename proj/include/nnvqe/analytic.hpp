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

// Closed-form solution of the one-qubit ansatz RZ(v) RY(u) |0>.
//   <X> = sin u cos v,  <Y> = sin u sin v,  <Z> = cos u
// and for H = h0 I + h1 X + h2 Y + h3 Z the minimum is h0 - |h|.

#include <array>

#include "nnvqe/dataset.hpp"
#include "nnvqe/pauli.hpp"

namespace nnvqe {

struct OneQubitCoefficients {
  double h0 = 0, h1 = 0, h2 = 0, h3 = 0;
};

/// Reads I, X, Y, Z coefficients (absent terms are 0).
OneQubitCoefficients one_qubit_coefficients(const PauliHamiltonian& h);

struct OneQubitSolution {
  double u_opt;
  double v_opt;
  double min_energy;
  double a;  ///< |h1 + i h2|
  double b;  ///< arg(h1 + i h2)
};

struct AnglePair {
  double u;
  double v;
};

/// Minimizing angles. With a = |h1 + i h2| > 0:
///   u = -2 atan((h3 + r) / a),  v = atan2(h2, h1),  r = sqrt(a^2 + h3^2).
/// With a = 0, u = pi for h3 > 0 and 0 for h3 < 0, v = 0.
/// Throws InvalidArgument when h1 = h2 = h3 = 0.
AnglePair optimal_angles(double h1, double h2, double h3);

OneQubitSolution solve_one_qubit(const OneQubitCoefficients& c);

std::array<double, 3> expectations_at(double u, double v);

double one_qubit_energy(const OneQubitCoefficients& c, double u, double v);

/// Sample seen on a device that adds (u_err, v_err) to the requested (u, v).
/// Input (h1, h2, h3, <X>, <Y>, <Z>, u, v), target (u_opt - u - u_err, v_opt - v - v_err).
TrainingSample make_noisy_sample(double h1, double h2, double h3, double u, double v, double u_err,
                                 double v_err);

}  // namespace nnvqe

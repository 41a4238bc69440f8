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

// Pauli-string Hamiltonians and the exact-diagonalization oracle.
//
// Qubit ordering is little-endian everywhere in the toolkit: qubit 0 is the
// rightmost character of a label and the least-significant bit of an
// amplitude index. "ZI" on two qubits is Z on qubit 1.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace nnvqe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Largest register accepted by to_dense_matrix.
inline constexpr int kMaxDenseQubits = 12;

class PauliString {
 public:
  /// Throws InvalidArgument unless `label` is non-empty text over I, X, Y, Z.
  explicit PauliString(std::string label);

  const std::string& label() const { return label_; }
  int num_qubits() const { return static_cast<int>(label_.size()); }
  char on_qubit(int qubit) const { return label_[label_.size() - 1 - qubit]; }
  bool is_identity() const;

  /// Qubits flipped by the string (X or Y factors).
  std::uint64_t x_mask() const { return x_mask_; }
  /// Qubits picking up a sign on |1> (Z or Y factors).
  std::uint64_t z_mask() const { return z_mask_; }
  int y_count() const { return y_count_; }

  static PauliString identity(int num_qubits);

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.label_ == b.label_;
  }
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.label_ <=> b.label_;
  }

 private:
  std::string label_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
};

struct PauliTerm {
  PauliString label;
  double coeff;
};

struct HamiltonianMetadata {
  std::string molecule;
  std::optional<double> distance_angstrom;
};

/// Real-weighted sum of Pauli strings, kept in lexicographic label order.
class PauliHamiltonian {
 public:
  /// Sorts `terms` by label. Throws InvalidArgument on duplicate labels,
  /// labels of the wrong length, or non-finite coefficients.
  PauliHamiltonian(int num_qubits, std::vector<PauliTerm> terms,
                   HamiltonianMetadata metadata = {});

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const HamiltonianMetadata& metadata() const { return metadata_; }

  std::optional<std::size_t> find(const PauliString& label) const;
  /// Coefficient of the all-I term, 0 when absent.
  double identity_coefficient() const;
  std::vector<PauliString> labels() const;

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
  HamiltonianMetadata metadata_;
};

/// Fixed coefficient layout for the network input of one system family.
/// The identity string is never part of a schema.
class TermSchema {
 public:
  TermSchema() = default;
  /// Keeps the given order. Throws InvalidArgument on identity, duplicate or
  /// mixed-length labels.
  explicit TermSchema(std::vector<PauliString> labels);

  /// Sorted union of the non-identity labels of a Hamiltonian family.
  static TermSchema from_hamiltonians(std::span<const PauliHamiltonian> family);

  const std::vector<PauliString>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  int num_qubits() const;
  std::vector<std::string> label_text() const;

  friend bool operator==(const TermSchema&, const TermSchema&) = default;

 private:
  std::vector<PauliString> labels_;
};

/// Parses the JSON coefficient-file format:
///   {"num_qubits": n, "terms": [[label, coeff], ...],
///    "metadata": {"molecule": text, "distance_angstrom": number|null}}
/// Throws ParseError naming the offending term on duplicate labels, length
/// mismatches, non-numeric (e.g. complex) or non-finite coefficients.
PauliHamiltonian parse_hamiltonian(std::string_view text);
PauliHamiltonian load_hamiltonian(const std::filesystem::path& path);
/// Serializes in the same format parse_hamiltonian reads.
std::string hamiltonian_to_json(const PauliHamiltonian& h);

/// Dense 2^n x 2^n matrix. Throws CapacityError above kMaxDenseQubits.
ComplexMatrix to_dense_matrix(const PauliHamiltonian& h);
ComplexMatrix to_dense_matrix(const PauliString& p);

/// Lowest eigenvalue of the dense matrix.
double exact_ground_energy(const PauliHamiltonian& h);

/// <psi|P|psi> for a normalized amplitude vector of length 2^n.
/// Throws DimensionError when the lengths disagree. Identity returns 1.
double expectation_from_state(std::span<const Complex> amplitudes, const PauliString& p);

/// Coefficients of `h` in schema order (0 where absent; identity dropped).
/// Throws SchemaMismatch if `h` has a non-identity term outside the schema.
std::vector<double> coefficient_vector(const PauliHamiltonian& h, const TermSchema& schema);

/// Copy of `h` with every schema label present (missing ones at coefficient 0),
/// so that measuring `h` yields an expectation for each schema entry.
PauliHamiltonian pad_to_schema(const PauliHamiltonian& h, const TermSchema& schema);

}  // namespace nnvqe

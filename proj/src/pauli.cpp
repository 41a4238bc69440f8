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

#include "nnvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "nnvqe/error.hpp"

namespace nnvqe {
namespace {

using nlohmann::json;

// i^k for k mod 4.
Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::size_t dimension_for(int num_qubits) {
  if (num_qubits > kMaxDenseQubits) {
    throw CapacityError("dense matrix requested for " + std::to_string(num_qubits) +
                        " qubits; limit is " + std::to_string(kMaxDenseQubits));
  }
  return std::size_t{1} << num_qubits;
}

// Adds coeff * P into `m`.
void accumulate(ComplexMatrix& m, const PauliString& p, double coeff) {
  const auto dim = static_cast<std::uint64_t>(m.rows());
  const Complex base = coeff * i_power(p.y_count());
  for (std::uint64_t col = 0; col < dim; ++col) {
    const double sign = (std::popcount(col & p.z_mask()) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(col ^ p.x_mask()), static_cast<Eigen::Index>(col)) +=
        sign * base;
  }
}

}  // namespace

PauliString::PauliString(std::string label) : label_(std::move(label)) {
  if (label_.empty()) throw InvalidArgument("empty Pauli label");
  if (label_.size() > 63) throw InvalidArgument("Pauli label longer than 63 qubits");
  const int n = num_qubits();
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (on_qubit(q)) {
      case 'I': break;
      case 'X': x_mask_ |= bit; break;
      case 'Y':
        x_mask_ |= bit;
        z_mask_ |= bit;
        ++y_count_;
        break;
      case 'Z': z_mask_ |= bit; break;
      default:
        throw InvalidArgument("invalid Pauli label \"" + label_ + "\"");
    }
  }
}

bool PauliString::is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }

PauliString PauliString::identity(int num_qubits) {
  return PauliString(std::string(static_cast<std::size_t>(num_qubits), 'I'));
}

PauliHamiltonian::PauliHamiltonian(int num_qubits, std::vector<PauliTerm> terms,
                                   HamiltonianMetadata metadata)
    : num_qubits_(num_qubits), terms_(std::move(terms)), metadata_(std::move(metadata)) {
  if (num_qubits_ < 1) throw InvalidArgument("Hamiltonian needs at least one qubit");
  for (const auto& t : terms_) {
    if (t.label.num_qubits() != num_qubits_) {
      throw InvalidArgument("term \"" + t.label.label() + "\" has length " +
                            std::to_string(t.label.num_qubits()) + ", expected " +
                            std::to_string(num_qubits_));
    }
    if (!std::isfinite(t.coeff)) {
      throw InvalidArgument("term \"" + t.label.label() + "\" has a non-finite coefficient");
    }
  }
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const PauliTerm& a, const PauliTerm& b) { return a.label < b.label; });
  const auto dup = std::adjacent_find(
      terms_.begin(), terms_.end(),
      [](const PauliTerm& a, const PauliTerm& b) { return a.label == b.label; });
  if (dup != terms_.end()) {
    throw InvalidArgument("duplicate term \"" + dup->label.label() + "\"");
  }
}

std::optional<std::size_t> PauliHamiltonian::find(const PauliString& label) const {
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), label,
      [](const PauliTerm& t, const PauliString& l) { return t.label < l; });
  if (it == terms_.end() || !(it->label == label)) return std::nullopt;
  return static_cast<std::size_t>(it - terms_.begin());
}

double PauliHamiltonian::identity_coefficient() const {
  const auto idx = find(PauliString::identity(num_qubits_));
  return idx ? terms_[*idx].coeff : 0.0;
}

std::vector<PauliString> PauliHamiltonian::labels() const {
  std::vector<PauliString> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.label);
  return out;
}

TermSchema::TermSchema(std::vector<PauliString> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].is_identity()) {
      throw InvalidArgument("identity label in term schema");
    }
    if (labels_[i].num_qubits() != labels_.front().num_qubits()) {
      throw InvalidArgument("mixed label lengths in term schema");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[j] == labels_[i]) {
        throw InvalidArgument("duplicate label \"" + labels_[i].label() + "\" in term schema");
      }
    }
  }
}

TermSchema TermSchema::from_hamiltonians(std::span<const PauliHamiltonian> family) {
  std::vector<PauliString> all;
  for (const auto& h : family) {
    if (!family.empty() && h.num_qubits() != family.front().num_qubits()) {
      throw InvalidArgument("Hamiltonian family mixes qubit counts");
    }
    for (const auto& t : h.terms()) {
      if (!t.label.is_identity()) all.push_back(t.label);
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return TermSchema(std::move(all));
}

int TermSchema::num_qubits() const {
  return labels_.empty() ? 0 : labels_.front().num_qubits();
}

std::vector<std::string> TermSchema::label_text() const {
  std::vector<std::string> out;
  out.reserve(labels_.size());
  for (const auto& l : labels_) out.push_back(l.label());
  return out;
}

PauliHamiltonian parse_hamiltonian(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed Hamiltonian JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("Hamiltonian JSON must be an object");
  if (!doc.contains("num_qubits") || !doc["num_qubits"].is_number_integer()) {
    throw ParseError("missing integer field \"num_qubits\"");
  }
  const int n = doc["num_qubits"].get<int>();
  if (n < 1) throw ParseError("\"num_qubits\" must be positive");
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw ParseError("missing array field \"terms\"");
  }

  std::vector<PauliTerm> terms;
  std::size_t index = 0;
  for (const auto& entry : doc["terms"]) {
    const std::string where = "term " + std::to_string(index++);
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string()) {
      throw ParseError(where + ": expected [label, coefficient]");
    }
    const auto label = entry[0].get<std::string>();
    const std::string named = where + " \"" + label + "\"";
    if (!entry[1].is_number()) {
      throw ParseError(named + ": coefficient must be a real number");
    }
    const double coeff = entry[1].get<double>();
    if (!std::isfinite(coeff)) throw ParseError(named + ": non-finite coefficient");
    if (static_cast<int>(label.size()) != n) {
      throw ParseError(named + ": label length " + std::to_string(label.size()) +
                       " does not match num_qubits " + std::to_string(n));
    }
    try {
      terms.push_back({PauliString(label), coeff});
    } catch (const InvalidArgument& e) {
      throw ParseError(named + ": " + e.what());
    }
  }

  HamiltonianMetadata meta;
  if (doc.contains("metadata") && doc["metadata"].is_object()) {
    const auto& m = doc["metadata"];
    if (m.contains("molecule") && m["molecule"].is_string()) {
      meta.molecule = m["molecule"].get<std::string>();
    }
    if (m.contains("distance_angstrom") && m["distance_angstrom"].is_number()) {
      meta.distance_angstrom = m["distance_angstrom"].get<double>();
    }
  }

  try {
    return PauliHamiltonian(n, std::move(terms), std::move(meta));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

PauliHamiltonian load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open Hamiltonian file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_hamiltonian(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string hamiltonian_to_json(const PauliHamiltonian& h) {
  json doc;
  doc["num_qubits"] = h.num_qubits();
  doc["terms"] = json::array();
  for (const auto& t : h.terms()) doc["terms"].push_back({t.label.label(), t.coeff});
  json meta;
  meta["molecule"] = h.metadata().molecule;
  if (h.metadata().distance_angstrom) {
    meta["distance_angstrom"] = *h.metadata().distance_angstrom;
  } else {
    meta["distance_angstrom"] = nullptr;
  }
  doc["metadata"] = meta;
  return doc.dump(1) + "\n";
}

ComplexMatrix to_dense_matrix(const PauliHamiltonian& h) {
  const auto dim = static_cast<Eigen::Index>(dimension_for(h.num_qubits()));
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& t : h.terms()) accumulate(m, t.label, t.coeff);
  return m;
}

ComplexMatrix to_dense_matrix(const PauliString& p) {
  const auto dim = static_cast<Eigen::Index>(dimension_for(p.num_qubits()));
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  accumulate(m, p, 1.0);
  return m;
}

double exact_ground_energy(const PauliHamiltonian& h) {
  const ComplexMatrix m = to_dense_matrix(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed to converge");
  }
  return solver.eigenvalues().minCoeff();
}

double expectation_from_state(std::span<const Complex> amplitudes, const PauliString& p) {
  const std::uint64_t dim = std::uint64_t{1} << p.num_qubits();
  if (amplitudes.size() != dim) {
    throw DimensionError("state of length " + std::to_string(amplitudes.size()) +
                         " measured with " + std::to_string(p.num_qubits()) +
                         "-qubit label \"" + p.label() + "\"");
  }
  if (p.is_identity()) return 1.0;
  Complex acc{0.0, 0.0};
  for (std::uint64_t j = 0; j < dim; ++j) {
    const double sign = (std::popcount(j & p.z_mask()) & 1) ? -1.0 : 1.0;
    acc += std::conj(amplitudes[j ^ p.x_mask()]) * (sign * amplitudes[j]);
  }
  return (acc * i_power(p.y_count())).real();
}

std::vector<double> coefficient_vector(const PauliHamiltonian& h, const TermSchema& schema) {
  std::vector<double> out(schema.size(), 0.0);
  for (const auto& t : h.terms()) {
    if (t.label.is_identity()) continue;
    const auto& labels = schema.labels();
    const auto it = std::find(labels.begin(), labels.end(), t.label);
    if (it == labels.end()) {
      throw SchemaMismatch("term \"" + t.label.label() + "\" is not in the term schema");
    }
    out[static_cast<std::size_t>(it - labels.begin())] = t.coeff;
  }
  return out;
}

PauliHamiltonian pad_to_schema(const PauliHamiltonian& h, const TermSchema& schema) {
  if (schema.size() > 0 && schema.num_qubits() != h.num_qubits()) {
    throw SchemaMismatch("schema is for " + std::to_string(schema.num_qubits()) +
                         " qubits, Hamiltonian has " + std::to_string(h.num_qubits()));
  }
  coefficient_vector(h, schema);  // coverage check
  std::vector<PauliTerm> terms = h.terms();
  for (const auto& label : schema.labels()) {
    if (!h.find(label)) terms.push_back({label, 0.0});
  }
  return PauliHamiltonian(h.num_qubits(), std::move(terms), h.metadata());
}

}  // namespace nnvqe

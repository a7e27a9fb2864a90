// Copyright 2026 The cosmopair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cosmopair {

/// Real-weighted tensor product of Pauli letters; position j acts on qubit j.
struct PauliString {
  std::string letters;
  double coeff = 1.0;

  PauliString() = default;
  PauliString(std::string l, double c) : letters(std::move(l)), coeff(c) {
    for (char ch : letters) {
      if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') {
        throw std::invalid_argument("PauliString: invalid letter '" + std::string(1, ch) + "'");
      }
    }
  }

  int n_qubits() const { return static_cast<int>(letters.size()); }

  bool is_identity() const { return letters.find_first_not_of('I') == std::string::npos; }

  int count(char letter) const {
    int n = 0;
    for (char ch : letters) n += (ch == letter);
    return n;
  }

  std::vector<int> support() const {
    std::vector<int> qs;
    for (int q = 0; q < n_qubits(); ++q) {
      if (letters[q] != 'I') qs.push_back(q);
    }
    return qs;
  }
};

struct PauliSum {
  std::vector<PauliString> terms;
};

inline constexpr int kMaxDenseQubits = 12;

inline Eigen::Matrix2cd pauli_letter_matrix(char letter) {
  using c = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, c(0, -1), c(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli_letter_matrix: invalid letter");
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Dense expansion with qubit 0 as the leftmost Kronecker factor. Verification
/// use only, capped at kMaxDenseQubits.
inline Eigen::MatrixXcd pauli_to_matrix(const PauliString& p, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("pauli_to_matrix: n_qubits out of dense range");
  }
  if (p.n_qubits() != n_qubits) {
    throw std::invalid_argument("pauli_to_matrix: string length does not match n_qubits");
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char ch : p.letters) m = kron(m, pauli_letter_matrix(ch));
  return p.coeff * m;
}

inline Eigen::MatrixXcd pauli_to_matrix(const PauliSum& sum, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("pauli_to_matrix: n_qubits out of dense range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : sum.terms) m += pauli_to_matrix(t, n_qubits);
  return m;
}

// Four-qubit embedding. Each mode uses two qubits: |01> is empty, |10> holds
// one quantum. Qubits (0,1) carry +k, qubits (2,3) carry -k.

/// Z_q = N_+ + N_-, expanded in Pauli strings.
inline PauliSum z_q_operator() {
  return {{{"IIII", 0.5},
           {"ZIII", -0.25},
           {"IZII", 0.25},
           {"IIZI", -0.25},
           {"IIIZ", 0.25},
           {"ZZII", -0.25},
           {"IIZZ", -0.25}}};
}

/// A_q = |1010><0101| + h.c., expanded in Pauli strings. The eight terms
/// mutually commute.
inline PauliSum a_q_operator() {
  constexpr double e = 1.0 / 8.0;
  return {{{"XXXX", e},
           {"XXYY", e},
           {"XYXY", -e},
           {"XYYX", e},
           {"YXXY", e},
           {"YXYX", -e},
           {"YYXX", e},
           {"YYYY", e}}};
}

namespace embedding {

// Projector/transition-operator construction of the same operators, built
// from kets rather than Pauli strings.

inline Eigen::MatrixXcd two_qubit_outer(int bra_bits, int ket_bits) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(ket_bits, bra_bits) = 1.0;
  return m;
}

inline Eigen::MatrixXcd on_mode(const Eigen::MatrixXcd& op, int mode) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
  return mode == 0 ? kron(op, id) : kron(id, op);
}

/// |10><10| on the given mode pair.
inline Eigen::MatrixXcd occupation_projector(int mode) {
  return on_mode(two_qubit_outer(0b10, 0b10), mode);
}

/// |10><01| on the given mode pair.
inline Eigen::MatrixXcd transition_operator(int mode) {
  return on_mode(two_qubit_outer(0b01, 0b10), mode);
}

inline Eigen::MatrixXcd number_operator() {
  return occupation_projector(0) + occupation_projector(1);
}

inline Eigen::MatrixXcd pair_operator() {
  const Eigen::MatrixXcd cc = transition_operator(0) * transition_operator(1);
  return cc + cc.adjoint();
}

}  // namespace embedding

/// Computational-basis indices of (|0101>, |1001>, |0110>, |1010>).
inline constexpr int kPhysicalIndices[4] = {0b0101, 0b1001, 0b0110, 0b1010};

inline Eigen::Matrix4cd restrict_to_physical(const Eigen::MatrixXcd& m) {
  Eigen::Matrix4cd r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r(i, j) = m(kPhysicalIndices[i], kPhysicalIndices[j]);
  }
  return r;
}

}  // namespace cosmopair

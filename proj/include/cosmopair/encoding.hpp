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

#include <span>
#include <stdexcept>

#include "cosmopair/circuit.hpp"
#include "cosmopair/pauli.hpp"
#include "cosmopair/schedule.hpp"

namespace cosmopair {

inline constexpr int kEncodedQubits = 4;

/// exp(-i angle P) for a non-identity Pauli string P. The string's own
/// coefficient is ignored; callers fold it into `angle`.
///
/// Layout: basis change into Z (H for X, SDG then H for Y), a CNOT chain
/// accumulating parity onto the highest active qubit, RZ(2 angle) there, then
/// the mirror image.
inline Circuit synthesize_pauli_rotation(const PauliString& p, double angle) {
  if (p.is_identity()) {
    throw std::invalid_argument("synthesize_pauli_rotation: identity string is a global phase");
  }
  Circuit c(p.n_qubits());
  const std::vector<int> support = p.support();

  for (int q : support) {
    if (p.letters[q] == 'X') {
      c.add(Gate::h(q));
    } else if (p.letters[q] == 'Y') {
      c.add(Gate::sdg(q)).add(Gate::h(q));
    }
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i) {
    c.add(Gate::cnot(support[i], support[i + 1]));
  }
  c.add(Gate::rz(support.back(), 2.0 * angle));
  for (std::size_t i = support.size() - 1; i > 0; --i) {
    c.add(Gate::cnot(support[i - 1], support[i]));
  }
  for (int q : support) {
    if (p.letters[q] == 'X') {
      c.add(Gate::h(q));
    } else if (p.letters[q] == 'Y') {
      c.add(Gate::h(q)).add(Gate::s(q));
    }
  }
  return c;
}

/// Appends exp(-i angle * sum_j c_j P_j) for mutually commuting terms,
/// dropping identity terms.
inline void append_commuting_exponential(Circuit& c, const PauliSum& op, double angle) {
  for (const auto& term : op.terms) {
    if (term.is_identity()) continue;
    c.append(synthesize_pauli_rotation(term, angle * term.coeff));
  }
}

/// One Strang block: Z_q half step, A_q full step, Z_q half step. A
/// radiation step (zero pair angle) emits no A_q rotations.
inline Circuit synthesize_step(const StepCoeffs& step, const PauliSum& z_op,
                               const PauliSum& a_op) {
  const StrangAngles th = strang_angles(step);
  Circuit c(kEncodedQubits);
  append_commuting_exponential(c, z_op, th.z_half);
  if (th.a != 0.0) append_commuting_exponential(c, a_op, th.a);
  append_commuting_exponential(c, z_op, th.z_half);
  return c;
}

inline Circuit synthesize_step(const StepCoeffs& step) {
  return synthesize_step(step, z_q_operator(), a_q_operator());
}

/// X on qubits 1 and 3 turns |0000> into the encoded vacuum |0101>.
inline Circuit vacuum_preparation() {
  Circuit c(kEncodedQubits);
  c.add(Gate::x(1)).add(Gate::x(3));
  return c;
}

inline Circuit build_full_circuit(std::span<const StepCoeffs> steps, const PauliSum& z_op,
                                  const PauliSum& a_op) {
  Circuit c = vacuum_preparation();
  for (const auto& s : steps) c.append(synthesize_step(s, z_op, a_op));
  return c;
}

inline Circuit build_full_circuit(std::span<const StepCoeffs> steps) {
  return build_full_circuit(steps, z_q_operator(), a_q_operator());
}

inline Circuit build_full_circuit(const CoeffSchedule& schedule) {
  return build_full_circuit(schedule.steps());
}

}  // namespace cosmopair

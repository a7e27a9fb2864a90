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

// Small dense statevector simulator. Qubit 0 is the most significant bit of
// the amplitude index, so index 0b0101 prints as the ket |0101>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cosmopair/circuit.hpp"
#include "cosmopair/rng.hpp"

namespace cosmopair {

inline std::string bitstring(std::size_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((index >> (n_qubits - 1 - q)) & 1u) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

inline std::size_t bit_index(std::string_view bits) {
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit_index: not a bitstring");
    idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  }
  return idx;
}

class StateVector {
 public:
  using amp = std::complex<double>;

  explicit StateVector(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > Circuit::kMaxQubits) {
      throw std::invalid_argument("StateVector: n_qubits must be in [1, 20]");
    }
    amps_.assign(std::size_t{1} << n_qubits, amp{0.0, 0.0});
    amps_[0] = 1.0;
  }

  static StateVector basis(int n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) throw std::out_of_range("StateVector::basis: index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<amp>& amplitudes() const { return amps_; }
  amp operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  void apply(const Gate& g) {
    check(g.q0);
    switch (g.kind) {
      case GateKind::X:
        for_pairs(g.q0, [](amp& a0, amp& a1) { std::swap(a0, a1); });
        break;
      case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        for_pairs(g.q0, [r](amp& a0, amp& a1) {
          const amp t = a0;
          a0 = r * (t + a1);
          a1 = r * (t - a1);
        });
        break;
      }
      case GateKind::S:
        for_pairs(g.q0, [](amp&, amp& a1) { a1 *= amp{0.0, 1.0}; });
        break;
      case GateKind::Sdg:
        for_pairs(g.q0, [](amp&, amp& a1) { a1 *= amp{0.0, -1.0}; });
        break;
      case GateKind::RZ: {
        const amp m0 = std::polar(1.0, -g.angle / 2.0);
        const amp m1 = std::polar(1.0, g.angle / 2.0);
        for_pairs(g.q0, [m0, m1](amp& a0, amp& a1) {
          a0 *= m0;
          a1 *= m1;
        });
        break;
      }
      case GateKind::RX: {
        const double c = std::cos(g.angle / 2.0);
        const amp mis{0.0, -std::sin(g.angle / 2.0)};
        for_pairs(g.q0, [c, mis](amp& a0, amp& a1) {
          const amp t = a0;
          a0 = c * t + mis * a1;
          a1 = mis * t + c * a1;
        });
        break;
      }
      case GateKind::CNOT: {
        check(g.q1);
        if (g.q0 == g.q1) throw std::invalid_argument("CNOT: control equals target");
        const std::size_t cm = mask(g.q0);
        const std::size_t tm = mask(g.q1);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
          if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
        }
        break;
      }
    }
  }

  /// Single-qubit Pauli by letter ('X', 'Y' or 'Z'); used for noise injection.
  void apply_pauli(int q, char letter) {
    check(q);
    switch (letter) {
      case 'I': break;
      case 'X': apply(Gate::x(q)); break;
      case 'Y':
        for_pairs(q, [](amp& a0, amp& a1) {
          const amp t = a0;
          a0 = amp{0.0, -1.0} * a1;
          a1 = amp{0.0, 1.0} * t;
        });
        break;
      case 'Z':
        for_pairs(q, [](amp&, amp& a1) { a1 = -a1; });
        break;
      default: throw std::invalid_argument("apply_pauli: invalid letter");
    }
  }

 private:
  std::size_t mask(int q) const { return std::size_t{1} << (n_ - 1 - q); }

  void check(int q) const {
    if (q < 0 || q >= n_) throw std::out_of_range("StateVector: qubit index out of range");
  }

  template <class F>
  void for_pairs(int q, F&& f) {
    const std::size_t m = mask(q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (!(i & m)) f(amps_[i], amps_[i | m]);
    }
  }

  int n_;
  std::vector<amp> amps_;
};

inline StateVector apply_gate(StateVector state, const Gate& g) {
  state.apply(g);
  return state;
}

inline void run_circuit_on(StateVector& state, const Circuit& circuit) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("run_circuit: qubit count mismatch");
  }
  for (const auto& g : circuit.gates()) state.apply(g);
}

/// Runs from |0...0>.
inline StateVector run_circuit(const Circuit& circuit) {
  StateVector s(circuit.n_qubits());
  run_circuit_on(s, circuit);
  return s;
}

/// Probability vector over all 2^n outcomes, indexed like the amplitudes.
struct Distribution {
  int n_qubits = 0;
  std::vector<double> p;

  double operator[](std::size_t i) const { return p[i]; }
  double at(std::string_view bits) const {
    if (static_cast<int>(bits.size()) != n_qubits) {
      throw std::invalid_argument("Distribution::at: bitstring length mismatch");
    }
    return p[bit_index(bits)];
  }
  double total() const { return std::accumulate(p.begin(), p.end(), 0.0); }

  /// Nonzero entries keyed by bitstring.
  std::map<std::string, double> to_map() const {
    std::map<std::string, double> m;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != 0.0) m.emplace(bitstring(i, n_qubits), p[i]);
    }
    return m;
  }

  static Distribution from_map(const std::map<std::string, double>& m, int n_qubits) {
    Distribution d{n_qubits, std::vector<double>(std::size_t{1} << n_qubits, 0.0)};
    for (const auto& [bits, v] : m) {
      if (static_cast<int>(bits.size()) != n_qubits) {
        throw std::invalid_argument("Distribution: bitstring length mismatch");
      }
      d.p[bit_index(bits)] = v;
    }
    return d;
  }
};

inline Distribution probabilities(const StateVector& state) {
  Distribution d{state.n_qubits(), std::vector<double>(state.dim())};
  for (std::size_t i = 0; i < state.dim(); ++i) d.p[i] = std::norm(state[i]);
  return d;
}

struct CountsTable {
  int n_qubits = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t count(const std::string& bits) const {
    const auto it = counts.find(bits);
    return it == counts.end() ? 0 : it->second;
  }

  double frequency(const std::string& bits) const {
    return static_cast<double>(count(bits)) / static_cast<double>(shots);
  }

  /// CSV `bitstring,count`, lexicographic.
  std::string to_csv() const {
    std::string s = "bitstring,count\n";
    for (const auto& [bits, c] : counts) s += bits + ',' + std::to_string(c) + '\n';
    return s;
  }

  bool operator==(const CountsTable&) const = default;
};

inline constexpr double kProbabilityFloor = 1e-15;
inline constexpr double kNegativeTolerance = 1e-12;

/// Cumulative sampling table over basis indices. Entries below
/// kProbabilityFloor are zeroed and the rest renormalized.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(const Distribution& d) : n_qubits_(d.n_qubits) {
    if (d.p.empty()) throw std::invalid_argument("sample_counts: empty distribution");
    cumulative_.resize(d.p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < d.p.size(); ++i) {
      double v = d.p[i];
      if (v < -kNegativeTolerance) {
        throw std::invalid_argument("sample_counts: negative probability " + std::to_string(v));
      }
      if (v < kProbabilityFloor) v = 0.0;
      acc += v;
      cumulative_[i] = acc;
      if (v > 0.0) last_nonzero_ = i;
    }
    if (!(acc > 0.0)) throw std::invalid_argument("sample_counts: distribution has no mass");
    if (std::abs(acc - 1.0) > 1e-9) {
      throw std::invalid_argument("sample_counts: probabilities sum to " + std::to_string(acc));
    }
    total_ = acc;
  }

  int n_qubits() const { return n_qubits_; }

  std::size_t draw(double u) const {
    const double target = u * total_;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(idx, last_nonzero_);
  }

 private:
  int n_qubits_;
  std::vector<double> cumulative_;
  double total_ = 1.0;
  std::size_t last_nonzero_ = 0;
};

inline CountsTable tally(const std::vector<std::uint64_t>& hist, int n_qubits, std::uint64_t shots,
                         std::uint64_t seed) {
  CountsTable t{n_qubits, shots, seed, {}};
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] != 0) t.counts.emplace(bitstring(i, n_qubits), hist[i]);
  }
  return t;
}

/// Multinomial draw: shot s takes the first uniform of stream (seed, s, 0)
/// and inverts the cumulative distribution in lexicographic order.
inline CountsTable sample_counts(const Distribution& probs, std::uint64_t shots,
                                 std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
  const OutcomeSampler sampler(probs);
  std::vector<std::uint64_t> hist(probs.p.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    auto rng = SplitMix64::stream(seed, s, 0);
    ++hist[sampler.draw(rng.uniform())];
  }
  return tally(hist, probs.n_qubits, shots, seed);
}

inline constexpr const char* kVacuumBits = "0101";
inline constexpr const char* kPlusBits = "1001";
inline constexpr const char* kMinusBits = "0110";
inline constexpr const char* kPairBits = "1010";

struct Observables {
  double n_plus = 0.0;
  double n_minus = 0.0;
  double p_pair = 0.0;
  double leakage = 0.0;
  double stderr_pair = 0.0;
};

/// Observables from (quasi-)probabilities of the four physical strings.
inline Observables observables_from_physical(double p_vac, double p_plus, double p_minus,
                                             double p_pair, double shots = 0.0) {
  Observables o;
  o.n_plus = p_plus + p_pair;
  o.n_minus = p_minus + p_pair;
  o.p_pair = p_pair;
  o.leakage = 1.0 - (p_vac + p_plus + p_minus + p_pair);
  if (shots > 0.0) o.stderr_pair = std::sqrt(std::max(p_pair * (1.0 - p_pair), 0.0) / shots);
  return o;
}

inline Observables observables_from_counts(const CountsTable& c) {
  if (c.n_qubits != 4) throw std::invalid_argument("observables_from_counts: need 4 qubits");
  return observables_from_physical(c.frequency(kVacuumBits), c.frequency(kPlusBits),
                                   c.frequency(kMinusBits), c.frequency(kPairBits),
                                   static_cast<double>(c.shots));
}

inline Observables observables_from_distribution(const Distribution& d) {
  if (d.n_qubits != 4) throw std::invalid_argument("observables_from_distribution: need 4 qubits");
  return observables_from_physical(d.at(kVacuumBits), d.at(kPlusBits), d.at(kMinusBits),
                                   d.at(kPairBits));
}

}  // namespace cosmopair

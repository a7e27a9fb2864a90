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

// Synthetic hardware noise (stochastic Pauli gate errors plus independent
// per-qubit readout confusion) and the two mitigation schemes run against
// it: readout correction restricted to observed bitstrings, and zero-noise
// extrapolation by scaling the Pauli error rates.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cosmopair/circuit.hpp"
#include "cosmopair/rng.hpp"
#include "cosmopair/statevector.hpp"

namespace cosmopair {

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column-stochastic 2x2 assignment matrix, m[observed][true].
struct Confusion {
  std::array<std::array<double, 2>, 2> m{{{1.0, 0.0}, {0.0, 1.0}}};

  static Confusion symmetric(double flip) { return {{{{1.0 - flip, flip}, {flip, 1.0 - flip}}}}; }

  bool operator==(const Confusion&) const = default;
};

inline constexpr double kCalibratedTwoQubitRate = 2.80e-3;
inline constexpr double kCalibratedReadoutFlip = 1.49e-2;

struct NoiseModel {
  std::vector<Confusion> readout;
  double p1 = 0.0;  // per single-qubit gate
  double p2 = 0.0;  // per CNOT

  int n_qubits() const { return static_cast<int>(readout.size()); }

  static NoiseModel ideal(int n_qubits) {
    return {std::vector<Confusion>(static_cast<std::size_t>(n_qubits)), 0.0, 0.0};
  }

  /// Median calibration magnitudes: p2 = 2.80e-3, symmetric readout flip
  /// 1.49e-2, and p1 = p2 / 10.
  static NoiseModel calibrated(int n_qubits) {
    return {std::vector<Confusion>(static_cast<std::size_t>(n_qubits),
                                   Confusion::symmetric(kCalibratedReadoutFlip)),
            kCalibratedTwoQubitRate / 10.0, kCalibratedTwoQubitRate};
  }

  void validate() const {
    const auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!prob(p1) || !prob(p2)) throw std::invalid_argument("NoiseModel: rates must lie in [0, 1]");
    for (const auto& c : readout) {
      for (int t = 0; t < 2; ++t) {
        if (!prob(c.m[0][t]) || !prob(c.m[1][t]) || std::abs(c.m[0][t] + c.m[1][t] - 1.0) > 1e-12) {
          throw std::invalid_argument("NoiseModel: confusion columns must be distributions");
        }
      }
    }
  }

  /// Pauli rates multiplied by `factor`; readout is left alone.
  NoiseModel scaled(double factor) const {
    NoiseModel m = *this;
    m.p1 *= factor;
    m.p2 *= factor;
    m.validate();
    return m;
  }

  nlohmann::json to_json() const {
    nlohmann::json ro = nlohmann::json::array();
    for (const auto& c : readout) ro.push_back({{c.m[0][0], c.m[0][1]}, {c.m[1][0], c.m[1][1]}});
    return {{"readout", ro}, {"p1", p1}, {"p2", p2}};
  }

  /// {"readout": [[[c00, c01], [c10, c11]], ...], "p1": .., "p2": ..}
  static NoiseModel from_json(const nlohmann::json& j) {
    NoiseModel m;
    for (const auto& q : j.at("readout")) {
      Confusion c;
      for (int o = 0; o < 2; ++o) {
        for (int t = 0; t < 2; ++t) c.m[o][t] = q.at(o).at(t).get<double>();
      }
      m.readout.push_back(c);
    }
    m.p1 = j.at("p1").get<double>();
    m.p2 = j.at("p2").get<double>();
    m.validate();
    return m;
  }
};

inline void check_model_width(const NoiseModel& model, int n_qubits, const char* who) {
  if (model.n_qubits() != n_qubits) {
    throw std::invalid_argument(std::string(who) + ": noise model covers " +
                                std::to_string(model.n_qubits()) + " qubits, need " +
                                std::to_string(n_qubits));
  }
}

/// (C_0 (x) ... (x) C_{n-1}) p, applied one qubit axis at a time.
inline Distribution apply_readout_noise(const Distribution& probs, const NoiseModel& model) {
  check_model_width(model, probs.n_qubits, "apply_readout_noise");
  Distribution out = probs;
  const int n = probs.n_qubits;
  for (int q = 0; q < n; ++q) {
    const auto& c = model.readout[static_cast<std::size_t>(q)].m;
    const std::size_t mask = std::size_t{1} << (n - 1 - q);
    for (std::size_t i = 0; i < out.p.size(); ++i) {
      if (i & mask) continue;
      const double t0 = out.p[i];
      const double t1 = out.p[i | mask];
      out.p[i] = c[0][0] * t0 + c[0][1] * t1;
      out.p[i | mask] = c[1][0] * t0 + c[1][1] * t1;
    }
  }
  return out;
}

namespace detail {

inline constexpr char kPauliLetters[4] = {'I', 'X', 'Y', 'Z'};

struct PauliEvent {
  std::size_t gate;
  char first;
  char second;
};

inline std::size_t flip_readout(std::size_t index, const NoiseModel& model, SplitMix64& rng) {
  const int n = model.n_qubits();
  for (int q = 0; q < n; ++q) {
    const std::size_t mask = std::size_t{1} << (n - 1 - q);
    const int truth = (index & mask) ? 1 : 0;
    const double p_zero = model.readout[static_cast<std::size_t>(q)].m[0][truth];
    const bool observed_one = !(rng.uniform() < p_zero);
    index = observed_one ? (index | mask) : (index & ~mask);
  }
  return index;
}

}  // namespace detail

/// Monte-Carlo trajectories, one per shot. After every gate a uniformly
/// random non-identity Pauli on the gate's operands is injected with
/// probability p1 (single-qubit gates) or p2 (CNOT). Shot s draws its error
/// pattern from stream (seed, s, 1) and its outcome plus readout flips from
/// stream (seed, s, 0), so the result does not depend on `threads` and a
/// zero-noise model reproduces sample_counts exactly.
inline CountsTable run_noisy_circuit(const Circuit& circuit, const NoiseModel& model,
                                     std::uint64_t shots, std::uint64_t seed,
                                     unsigned threads = 1) {
  if (shots < 1) throw std::invalid_argument("run_noisy_circuit: shots must be >= 1");
  model.validate();
  const int n = circuit.n_qubits();
  check_model_width(model, n, "run_noisy_circuit");

  const OutcomeSampler ideal(probabilities(run_circuit(circuit)));
  const auto& gates = circuit.gates();

  const auto run_shot = [&](std::uint64_t s, std::vector<std::uint64_t>& hist,
                            std::vector<detail::PauliEvent>& events) {
    events.clear();
    if (model.p1 > 0.0 || model.p2 > 0.0) {
      auto noise = SplitMix64::stream(seed, s, 1);
      for (std::size_t i = 0; i < gates.size(); ++i) {
        const bool two = is_two_qubit(gates[i].kind);
        const double rate = two ? model.p2 : model.p1;
        if (rate <= 0.0 || !(noise.uniform() < rate)) continue;
        if (two) {
          const auto code = 1 + noise.below(15);
          events.push_back({i, detail::kPauliLetters[code / 4], detail::kPauliLetters[code % 4]});
        } else {
          events.push_back({i, detail::kPauliLetters[1 + noise.below(3)], 'I'});
        }
      }
    }
    auto meas = SplitMix64::stream(seed, s, 0);
    std::size_t outcome;
    if (events.empty()) {
      outcome = ideal.draw(meas.uniform());
    } else {
      StateVector sv(n);
      auto ev = events.begin();
      for (std::size_t i = 0; i < gates.size(); ++i) {
        sv.apply(gates[i]);
        for (; ev != events.end() && ev->gate == i; ++ev) {
          sv.apply_pauli(gates[i].q0, ev->first);
          if (is_two_qubit(gates[i].kind)) sv.apply_pauli(gates[i].q1, ev->second);
        }
      }
      outcome = OutcomeSampler(probabilities(sv)).draw(meas.uniform());
    }
    ++hist[detail::flip_readout(outcome, model, meas)];
  };

  const std::size_t dim = std::size_t{1} << n;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(shots, 64))));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(dim, 0));
  const auto work = [&](unsigned t) {
    std::vector<detail::PauliEvent> events;
    const std::uint64_t lo = shots * t / threads;
    const std::uint64_t hi = shots * (t + 1) / threads;
    for (std::uint64_t s = lo; s < hi; ++s) run_shot(s, partial[t], events);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  std::vector<std::uint64_t> hist(dim, 0);
  for (const auto& h : partial) {
    for (std::size_t i = 0; i < dim; ++i) hist[i] += h[i];
  }
  return tally(hist, n, shots, seed);
}

struct MitigationResult {
  int n_qubits = 0;
  std::map<std::string, double> quasi;    // unclipped, may hold small negatives
  std::map<std::string, double> clipped;  // negatives zeroed, renormalized
  double condition_number = 1.0;
  bool ill_conditioned = false;
};

inline constexpr double kIllConditioned = 1e8;

namespace detail {

inline MitigationResult mitigate_on_support(const std::vector<std::size_t>& support,
                                            const std::vector<double>& freq,
                                            const NoiseModel& model, int n) {
  const auto k = static_cast<Eigen::Index>(support.size());
  if (k == 0) throw std::invalid_argument("mitigate_readout: no observed bitstrings");
  Eigen::MatrixXd a(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      double v = 1.0;
      for (int q = 0; q < n; ++q) {
        const int shift = n - 1 - q;
        const auto obs = (support[static_cast<std::size_t>(r)] >> shift) & 1u;
        const auto tru = (support[static_cast<std::size_t>(c)] >> shift) & 1u;
        v *= model.readout[static_cast<std::size_t>(q)].m[obs][tru];
      }
      a(r, c) = v;
    }
  }
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(freq.data(), k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(k - 1);
  if (!(smin > 1e-14 * smax)) {
    throw SingularSystemError(
        "mitigate_readout: restricted confusion matrix is singular; take more shots or "
        "observe a fuller support");
  }
  const Eigen::VectorXd x = svd.solve(b);

  MitigationResult out;
  out.n_qubits = n;
  out.condition_number = smax / smin;
  out.ill_conditioned = out.condition_number > kIllConditioned;
  double positive = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) positive += std::max(x(i), 0.0);
  for (Eigen::Index i = 0; i < k; ++i) {
    const std::string bits = bitstring(support[static_cast<std::size_t>(i)], n);
    out.quasi.emplace(bits, x(i));
    out.clipped.emplace(bits, positive > 0.0 ? std::max(x(i), 0.0) / positive : 0.0);
  }
  return out;
}

}  // namespace detail

/// Solves the tensor-product confusion system restricted to the observed
/// bitstrings for quasi-probabilities.
inline MitigationResult mitigate_readout(const CountsTable& counts, const NoiseModel& model) {
  check_model_width(model, counts.n_qubits, "mitigate_readout");
  std::vector<std::size_t> support;
  std::vector<double> freq;
  for (const auto& [bits, c] : counts.counts) {
    if (c == 0) continue;
    support.push_back(bit_index(bits));
    freq.push_back(static_cast<double>(c) / static_cast<double>(counts.shots));
  }
  return detail::mitigate_on_support(support, freq, model, counts.n_qubits);
}

/// Same correction applied to an exact (infinite-shot) noisy distribution.
inline MitigationResult mitigate_readout(const Distribution& noisy, const NoiseModel& model) {
  check_model_width(model, noisy.n_qubits, "mitigate_readout");
  std::vector<std::size_t> support;
  std::vector<double> freq;
  for (std::size_t i = 0; i < noisy.p.size(); ++i) {
    if (noisy.p[i] <= kProbabilityFloor) continue;
    support.push_back(i);
    freq.push_back(noisy.p[i]);
  }
  return detail::mitigate_on_support(support, freq, model, noisy.n_qubits);
}

inline Observables observables_from_quasi(const std::map<std::string, double>& q,
                                          double shots = 0.0) {
  const auto get = [&q](const char* bits) {
    const auto it = q.find(bits);
    return it == q.end() ? 0.0 : it->second;
  };
  return observables_from_physical(get(kVacuumBits), get(kPlusBits), get(kMinusBits),
                                   get(kPairBits), shots);
}

enum class ZneObservable { PairProbability, Leakage };

inline std::string to_string(ZneObservable o) {
  return o == ZneObservable::PairProbability ? "p_pair" : "leakage";
}

struct LinearFit {
  double intercept;
  double slope;
  double intercept_stderr;
};

/// Weighted least squares of value against factor (weights 1 / stderr^2);
/// the intercept is the zero-noise estimate and its error comes from the
/// parameter covariance (X^T W X)^-1.
inline LinearFit linear_extrapolate(std::span<const double> factors, std::span<const double> values,
                                    std::span<const double> stderrs) {
  const std::size_t n = factors.size();
  if (n < 2 || values.size() != n || stderrs.size() != n) {
    throw std::invalid_argument("linear_extrapolate: need >= 2 matching points");
  }
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(stderrs[i] > 0.0)) throw std::invalid_argument("linear_extrapolate: stderr must be > 0");
    const double w = 1.0 / (stderrs[i] * stderrs[i]);
    sw += w;
    sx += w * factors[i];
    sy += w * values[i];
    sxx += w * factors[i] * factors[i];
    sxy += w * factors[i] * values[i];
  }
  const double det = sw * sxx - sx * sx;
  if (!(det > 0.0)) throw std::invalid_argument("linear_extrapolate: degenerate factors");
  const double slope = (sw * sxy - sx * sy) / det;
  const double intercept = (sxx * sy - sx * sxy) / det;
  return {intercept, slope, std::sqrt(sxx / det)};
}

struct ZNEResult {
  ZneObservable observable = ZneObservable::PairProbability;
  std::vector<double> noise_factors;
  std::vector<double> values;
  std::vector<double> stderrs;
  double extrapolated = 0.0;
  double extrapolated_stderr = 0.0;

  nlohmann::json to_json() const {
    return {{"observable", to_string(observable)},
            {"noise_factors", noise_factors},
            {"values", values},
            {"stderrs", stderrs},
            {"extrapolated", extrapolated},
            {"extrapolated_stderr", extrapolated_stderr}};
  }

  bool operator==(const ZNEResult&) const = default;
};

inline const std::vector<double>& default_zne_factors() {
  static const std::vector<double> f{1.0, 1.5, 2.0};
  return f;
}

/// Binomial standard error; an empty or saturated estimate is treated as
/// half a count so the point keeps a finite weight.
inline double binomial_stderr(double p, std::uint64_t shots) {
  const double n = static_cast<double>(shots);
  const double floor = 0.5 / n;
  const double q = std::clamp(p, floor, 1.0 - floor);
  return std::sqrt(q * (1.0 - q) / n);
}

/// Zero-noise extrapolation on raw counts. Factor k runs with seed
/// derive_seed(seed, k).
inline ZNEResult zne_estimate(const Circuit& circuit, const NoiseModel& model,
                              ZneObservable observable, std::span<const double> factors,
                              std::uint64_t shots, std::uint64_t seed, unsigned threads = 1) {
  if (factors.size() < 2) throw std::invalid_argument("zne_estimate: need at least 2 factors");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!(factors[i] >= 1.0)) throw std::invalid_argument("zne_estimate: factors must be >= 1");
    if (i > 0 && !(factors[i] > factors[i - 1])) {
      throw std::invalid_argument("zne_estimate: factors must be strictly increasing");
    }
  }
  ZNEResult r;
  r.observable = observable;
  r.noise_factors.assign(factors.begin(), factors.end());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const CountsTable c =
        run_noisy_circuit(circuit, model.scaled(factors[k]), shots, derive_seed(seed, k), threads);
    const Observables o = observables_from_counts(c);
    const double v = observable == ZneObservable::PairProbability ? o.p_pair : o.leakage;
    r.values.push_back(v);
    r.stderrs.push_back(binomial_stderr(v, shots));
  }
  const LinearFit fit = linear_extrapolate(r.noise_factors, r.values, r.stderrs);
  r.extrapolated = fit.intercept;
  r.extrapolated_stderr = fit.intercept_stderr;
  return r;
}

}  // namespace cosmopair

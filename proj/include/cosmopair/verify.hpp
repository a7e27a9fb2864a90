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

// Fast self-check used by `cosmopair verify`.

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cosmopair/background.hpp"
#include "cosmopair/encoding.hpp"
#include "cosmopair/pauli.hpp"
#include "cosmopair/schedule.hpp"
#include "cosmopair/statevector.hpp"
#include "cosmopair/subspace_engine.hpp"

namespace cosmopair {

/// Dense unitary of a circuit, column j = circuit applied to basis state j.
inline Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    StateVector s = StateVector::basis(c.n_qubits(), static_cast<std::size_t>(j));
    run_circuit_on(s, c);
    for (Eigen::Index i = 0; i < dim; ++i) u(i, j) = s[static_cast<std::size_t>(i)];
  }
  return u;
}

/// max |a - e^{i phi} b| with phi fixed by the largest entry of b.
inline double distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  const std::complex<double> ratio = a(r, c) / b(r, c);
  const std::complex<double> phase = ratio / std::abs(ratio);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

inline double max_commutator_norm(const PauliSum& op, int n_qubits) {
  double worst = 0.0;
  for (std::size_t i = 0; i < op.terms.size(); ++i) {
    const Eigen::MatrixXcd pi = pauli_to_matrix(op.terms[i], n_qubits);
    for (std::size_t j = i + 1; j < op.terms.size(); ++j) {
      const Eigen::MatrixXcd pj = pauli_to_matrix(op.terms[j], n_qubits);
      worst = std::max(worst, (pi * pj - pj * pi).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

struct VerifyFixture {
  PauliSum z_q = z_q_operator();
  PauliSum a_q = a_q_operator();
};

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline CheckResult bounded(std::string name, double value, double limit) {
  return {std::move(name), value <= limit, sci(value) + " <= " + sci(limit)};
}

}  // namespace detail

inline std::vector<CheckResult> run_verification(const VerifyFixture& f = {}) {
  std::vector<CheckResult> out;
  const Eigen::MatrixXcd zq = pauli_to_matrix(f.z_q, kEncodedQubits);
  const Eigen::MatrixXcd aq = pauli_to_matrix(f.a_q, kEncodedQubits);

  out.push_back(detail::bounded(
      "z_q restricted to physical basis",
      (restrict_to_physical(zq) - z_phys().cast<std::complex<double>>()).cwiseAbs().maxCoeff(),
      1e-14));
  out.push_back(detail::bounded("z_q equals N+ + N-",
                                (zq - embedding::number_operator()).cwiseAbs().maxCoeff(), 1e-14));
  out.push_back(detail::bounded(
      "a_q restricted to physical basis",
      (restrict_to_physical(aq) - a_phys().cast<std::complex<double>>()).cwiseAbs().maxCoeff(),
      1e-14));
  out.push_back(detail::bounded("a_q equals C+C- + h.c.",
                                (aq - embedding::pair_operator()).cwiseAbs().maxCoeff(), 1e-14));
  out.push_back(detail::bounded("a_q terms commute", max_commutator_norm(f.a_q, kEncodedQubits),
                                1e-14));

  {
    const auto sched = build_schedule(ModeParams::with_defaults(2.0, 7));
    double worst = 0.0;
    for (const auto& step : sched.steps()) {
      const Eigen::MatrixXcd u = circuit_unitary(synthesize_step(step, f.z_q, f.a_q));
      worst = std::max(worst,
                       distance_up_to_phase(restrict_to_physical(u), strang_step_unitary(step)));
    }
    out.push_back(detail::bounded("step circuit matches 4x4 Strang step", worst, 1e-10));
  }

  {
    const double x = 2.0;
    double rel = 1.0;
    try {
      const BogoliubovPair ode = bogoliubov_ode_oracle(x, kDefaultYInitial, 1e-10);
      rel = std::abs(std::norm(ode.beta) / n_k_analytic(x) - 1.0);
    } catch (const std::exception&) {
      rel = INFINITY;
    }
    out.push_back(detail::bounded("ODE oracle |beta|^2 at x=2", rel, 1e-6));
  }

  {
    const auto sched = build_schedule(ModeParams::with_defaults(2.0, 10));
    const auto matrix = evolve(sched).final_state.populations();
    const Distribution d =
        probabilities(run_circuit(build_full_circuit(sched.steps(), f.z_q, f.a_q)));
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      worst = std::max(worst, std::abs(d.p[kPhysicalIndices[i]] - matrix[i]));
    }
    out.push_back(detail::bounded("engine equivalence at x=2, N=10", worst, 1e-10));
  }
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& r) {
  for (const auto& c : r) {
    if (!c.passed) return false;
  }
  return true;
}

inline std::string format_report(const std::vector<CheckResult>& r) {
  std::string s;
  char buf[256];
  for (const auto& c : r) {
    std::snprintf(buf, sizeof buf, "%-4s  %-40s  %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                  c.detail.c_str());
    s += buf;
  }
  s += all_passed(r) ? "all checks passed\n" : "verification FAILED\n";
  return s;
}

}  // namespace cosmopair

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

// Sudden de Sitter -> radiation background in dimensionless units (k = H = 1,
// y = k*eta, transition at y_e = -x), with the closed-form Bogoliubov
// benchmark and an independent numerical oracle for it.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace cosmopair {

using cplx = std::complex<double>;

/// Thrown when the adaptive integrator cannot meet the requested tolerance.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when Bogoliubov coefficients extracted at two radiation-era probe
/// points disagree.
class ExtractionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultYInitial = -80.0;
inline constexpr double kDefaultYFinalOffset = 2.0;

/// Problem definition for one comoving mode.
///
/// `x` is |k * eta_e|; the evolution window is [y_i, y_f] split into
/// `n_steps` uniform slices. The transition point -x must lie strictly inside
/// the window.
struct ModeParams {
  double x = 2.0;
  double y_i = kDefaultYInitial;
  double y_f = -2.0 + kDefaultYFinalOffset;
  int n_steps = 1;

  /// Default window: start at y = -80, stop two units after the transition.
  static ModeParams with_defaults(double x, int n_steps) {
    ModeParams p{x, kDefaultYInitial, -x + kDefaultYFinalOffset, n_steps};
    p.validate();
    return p;
  }

  double y_transition() const { return -x; }

  void validate() const {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("ModeParams: x must be positive, got " + std::to_string(x));
    }
    if (!(y_i < -x && -x < y_f)) {
      throw std::invalid_argument("ModeParams: need y_i < -x < y_f (y_i=" + std::to_string(y_i) +
                                  ", x=" + std::to_string(x) + ", y_f=" + std::to_string(y_f) + ")");
    }
    if (n_steps < 1) {
      throw std::invalid_argument("ModeParams: n_steps must be >= 1");
    }
  }
};

struct BogoliubovPair {
  cplx alpha;
  cplx beta;

  double normalization() const { return std::norm(alpha) - std::norm(beta); }
};

/// Scale factor a(y) for H = 1. Both branches and their first derivatives
/// agree at y = -x.
inline double scale_factor(double y, double x) {
  if (y <= -x) {
    // y <= -x < 0, so the de Sitter branch never divides by zero here.
    return -1.0 / y;
  }
  if (y >= 2.0 * x) {
    throw std::domain_error("scale_factor: radiation branch vanishes for y >= 2x");
  }
  return (2.0 + y / x) / x;
}

/// omega_k^2 / k^2. The matching point itself takes the radiation value.
inline double omega_squared(double y, double x) {
  if (y < -x) {
    return 1.0 - 2.0 / (y * y);
  }
  return 1.0;
}

inline BogoliubovPair bogoliubov_analytic(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("bogoliubov_analytic: x must be positive");
  }
  const double x2 = x * x;
  const cplx alpha{1.0 - 1.0 / (2.0 * x2), 1.0 / x};
  const cplx beta = std::polar(1.0 / (2.0 * x2), 2.0 * x);
  return {alpha, beta};
}

/// Late-time particle number 1/(4x^4).
inline double n_k_analytic(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("n_k_analytic: x must be positive");
  }
  const double x2 = x * x;
  return 1.0 / (4.0 * x2 * x2);
}

/// Probability of two or more pairs in a two-mode squeezed state of mean
/// occupation n_k. This is what the single-excitation encoding discards.
inline double multi_pair_probability(double n_k) {
  if (!(n_k >= 0.0)) {
    throw std::invalid_argument("multi_pair_probability: n_k must be nonnegative");
  }
  const double r = n_k / (1.0 + n_k);
  return r * r;
}

namespace detail {

// (Re v, Im v, Re v', Im v')
using ModeState = std::array<double, 4>;

inline ModeState bunch_davies_mode(double y) {
  // v = (1 - i/y) e^{-iy} / sqrt(2)
  // v' = (i/y^2 - i - 1/y) e^{-iy} / sqrt(2)
  const cplx phase = std::polar(1.0 / std::sqrt(2.0), -y);
  const cplx v = cplx{1.0, -1.0 / y} * phase;
  const cplx dv = cplx{-1.0 / y, 1.0 / (y * y) - 1.0} * phase;
  return {v.real(), v.imag(), dv.real(), dv.imag()};
}

inline BogoliubovPair project_onto_plane_waves(const ModeState& s, double y) {
  const cplx v{s[0], s[1]};
  const cplx dv{s[2], s[3]};
  const cplx i{0.0, 1.0};
  const double r = 1.0 / std::sqrt(2.0);
  return {(v + i * dv) * std::polar(r, y), (v - i * dv) * std::polar(r, -y)};
}

template <class System>
void integrate_segment(System&& system, ModeState& state, double from, double to, double tol) {
  namespace odeint = boost::numeric::odeint;
  using Stepper = odeint::runge_kutta_fehlberg78<ModeState>;
  auto stepper = odeint::make_controlled<Stepper>(tol, tol);
  const double h0 = std::min(0.1, (to - from) / 16.0);
  try {
    odeint::integrate_adaptive(stepper, system, state, from, to, h0);
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("bogoliubov_ode_oracle: ") + e.what());
  }
  for (double c : state) {
    if (!std::isfinite(c)) {
      throw IntegrationError("bogoliubov_ode_oracle: non-finite state");
    }
  }
}

}  // namespace detail

/// Integrates v'' + omega^2(y) v = 0 from the Bunch-Davies initial data at
/// y_i through the kink at y = -x (the integration is split there), then
/// projects onto radiation-era plane waves at y_e + 0.5 and y_e + 1.5.
/// Both probes must agree on |beta|^2 to 10 * tol relative.
inline BogoliubovPair bogoliubov_ode_oracle(double x, double y_i, double tol) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("bogoliubov_ode_oracle: x must be positive");
  }
  if (!(y_i <= -10.0 * x)) {
    throw std::invalid_argument("bogoliubov_ode_oracle: y_i must satisfy y_i <= -10x");
  }
  if (!(tol >= 1e-12 && tol <= 1e-6)) {
    throw std::invalid_argument("bogoliubov_ode_oracle: tol must lie in [1e-12, 1e-6]");
  }

  const auto de_sitter = [](const detail::ModeState& s, detail::ModeState& ds, double y) {
    const double w2 = 1.0 - 2.0 / (y * y);
    ds = {s[2], s[3], -w2 * s[0], -w2 * s[1]};
  };
  const auto radiation = [](const detail::ModeState& s, detail::ModeState& ds, double) {
    ds = {s[2], s[3], -s[0], -s[1]};
  };

  const double y_e = -x;
  const double probe1 = y_e + 0.5;
  const double probe2 = y_e + 1.5;

  detail::ModeState state = detail::bunch_davies_mode(y_i);
  detail::integrate_segment(de_sitter, state, y_i, y_e, tol);
  detail::integrate_segment(radiation, state, y_e, probe1, tol);
  const BogoliubovPair first = detail::project_onto_plane_waves(state, probe1);
  detail::integrate_segment(radiation, state, probe1, probe2, tol);
  const BogoliubovPair second = detail::project_onto_plane_waves(state, probe2);

  const double b1 = std::norm(first.beta);
  const double b2 = std::norm(second.beta);
  if (std::abs(b1 - b2) > 10.0 * tol * std::max(b1, b2)) {
    throw ExtractionMismatch("bogoliubov_ode_oracle: |beta|^2 drifts between probes (" +
                             std::to_string(b1) + " vs " + std::to_string(b2) + ")");
  }
  return second;
}

}  // namespace cosmopair

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

// Exact 4x4 matrix-Trotter evolution on the physical subspace, basis order
// (|0101>, |1001>, |0110>, |1010>) = (vac, +k only, -k only, pair).

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "cosmopair/schedule.hpp"

namespace cosmopair {

inline constexpr int kPhysVac = 0;
inline constexpr int kPhysPlus = 1;
inline constexpr int kPhysMinus = 2;
inline constexpr int kPhysPair = 3;

struct PhysState {
  Eigen::Vector4cd amplitudes = Eigen::Vector4cd::Zero();

  static PhysState vacuum() {
    PhysState s;
    s.amplitudes(kPhysVac) = 1.0;
    return s;
  }

  std::array<double, 4> populations() const {
    return {std::norm(amplitudes(0)), std::norm(amplitudes(1)), std::norm(amplitudes(2)),
            std::norm(amplitudes(3))};
  }

  double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Number operator on the physical subspace: total occupations (0, 1, 1, 2).
inline Eigen::Matrix4d z_phys() {
  return Eigen::Vector4d(0.0, 1.0, 1.0, 2.0).asDiagonal();
}

/// Pair generator: couples vac and pair, leaves single-particle states alone.
inline Eigen::Matrix4d a_phys() {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a(kPhysVac, kPhysPair) = 1.0;
  a(kPhysPair, kPhysVac) = 1.0;
  return a;
}

/// exp(-i th_zh Z) exp(-i th_a A) exp(-i th_zh Z). A^2 is a projector, so the
/// middle factor is an exact cos/sin rotation on the (vac, pair) block.
inline Eigen::Matrix4cd strang_step_unitary(const StepCoeffs& step) {
  const StrangAngles th = strang_angles(step);
  const Eigen::Vector4d occ(0.0, 1.0, 1.0, 2.0);
  Eigen::Vector4cd half;
  for (int i = 0; i < 4; ++i) {
    half(i) = std::polar(1.0, -th.z_half * occ(i));
  }
  Eigen::Matrix4cd pair_rot = Eigen::Matrix4cd::Identity();
  const double c = std::cos(th.a);
  const cplx mis{0.0, -std::sin(th.a)};
  pair_rot(kPhysVac, kPhysVac) = c;
  pair_rot(kPhysPair, kPhysPair) = c;
  pair_rot(kPhysVac, kPhysPair) = mis;
  pair_rot(kPhysPair, kPhysVac) = mis;
  return half.asDiagonal() * pair_rot * half.asDiagonal();
}

struct TrajectoryRow {
  double y;
  double p_vac;
  double p_plus;
  double p_minus;
  double p_pair;
};

using Trajectory = std::vector<TrajectoryRow>;

struct EvolutionResult {
  PhysState final_state;
  Trajectory trajectory;
};

inline TrajectoryRow make_row(double y, const PhysState& s) {
  const auto p = s.populations();
  return {y, p[kPhysVac], p[kPhysPlus], p[kPhysMinus], p[kPhysPair]};
}

/// Applies the step unitaries in schedule order (step 0 first). The
/// trajectory holds the initial state plus one row after every full step.
inline EvolutionResult evolve(const CoeffSchedule& schedule,
                              const PhysState& initial = PhysState::vacuum()) {
  EvolutionResult out{initial, {}};
  out.trajectory.reserve(schedule.size() + 1);
  out.trajectory.push_back(make_row(schedule.params().y_i, initial));
  for (std::size_t n = 0; n < schedule.size(); ++n) {
    out.final_state.amplitudes = strang_step_unitary(schedule[n]) * out.final_state.amplitudes;
    out.trajectory.push_back(make_row(schedule.boundary(n + 1), out.final_state));
  }
  return out;
}

struct ParticleNumbers {
  double n_plus;
  double n_minus;
  double p_pair;
};

inline ParticleNumbers particle_number(const PhysState& s) {
  const auto p = s.populations();
  return {p[kPhysPlus] + p[kPhysPair], p[kPhysMinus] + p[kPhysPair], p[kPhysPair]};
}

}  // namespace cosmopair

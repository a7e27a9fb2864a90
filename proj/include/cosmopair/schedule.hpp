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
#include <string_view>
#include <utility>
#include <vector>

#include "cosmopair/background.hpp"

namespace cosmopair {

enum class Branch { DeSitter, Radiation };

inline std::string_view to_string(Branch b) {
  return b == Branch::DeSitter ? "DeSitter" : "Radiation";
}

/// Dimensionless Hamiltonian coefficients (c_Z / k, c_A / k) at y. The
/// half-open rule y >= -x selects the radiation branch.
struct HamiltonianCoeffs {
  double cz;
  double ca;
  Branch branch;
};

inline HamiltonianCoeffs hamiltonian_coeffs(double y, double x) {
  if (y < -x) {
    const double ca = -1.0 / (y * y);
    return {1.0 + ca, ca, Branch::DeSitter};
  }
  return {1.0, 0.0, Branch::Radiation};
}

struct StepCoeffs {
  int index = 0;
  double y_mid = 0.0;
  double dy = 0.0;
  double cz = 1.0;
  double ca = 0.0;
  Branch branch = Branch::Radiation;
};

/// Arguments of exp(-i z_half Z) exp(-i a A) exp(-i z_half Z).
struct StrangAngles {
  double z_half;
  double a;
};

inline StrangAngles strang_angles(const StepCoeffs& step) {
  return {step.cz * step.dy / 2.0, step.ca * step.dy};
}

/// Immutable midpoint-rule schedule over a uniform grid.
class CoeffSchedule {
 public:
  CoeffSchedule(ModeParams params, std::vector<StepCoeffs> steps)
      : params_(params), steps_(std::move(steps)) {}

  const ModeParams& params() const { return params_; }
  std::span<const StepCoeffs> steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const StepCoeffs& operator[](std::size_t i) const { return steps_[i]; }

  double dy() const { return (params_.y_f - params_.y_i) / static_cast<double>(steps_.size()); }

  /// Grid point y_n = y_i + n dy, n = 0..size().
  double boundary(std::size_t n) const {
    return params_.y_i + static_cast<double>(n) * dy();
  }

 private:
  ModeParams params_;
  std::vector<StepCoeffs> steps_;
};

inline CoeffSchedule build_schedule(const ModeParams& params) {
  if (params.n_steps == 0) {
    throw std::invalid_argument("build_schedule: n_steps must be >= 1");
  }
  params.validate();
  const auto n = static_cast<std::size_t>(params.n_steps);
  const double dy = (params.y_f - params.y_i) / static_cast<double>(n);
  std::vector<StepCoeffs> steps;
  steps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y_mid = params.y_i + (static_cast<double>(i) + 0.5) * dy;
    const HamiltonianCoeffs c = hamiltonian_coeffs(y_mid, params.x);
    steps.push_back({static_cast<int>(i), y_mid, dy, c.cz, c.ca, c.branch});
  }
  return CoeffSchedule(params, std::move(steps));
}

}  // namespace cosmopair

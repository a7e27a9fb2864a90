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

#include "cosmopair/background.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace cosmopair;

TEST(ScaleFactor, MatchingPointAndBranches) {
  EXPECT_DOUBLE_EQ(scale_factor(-2.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(scale_factor(-4.0, 2.0), 0.25);
  EXPECT_DOUBLE_EQ(scale_factor(-1.0, 2.0), 0.75);
}

TEST(ScaleFactor, RejectsVanishingRadiationBranch) {
  EXPECT_THROW(scale_factor(4.0, 2.0), std::domain_error);
  EXPECT_NO_THROW(scale_factor(3.9, 2.0));
}

TEST(ScaleFactor, ValueAndSlopeContinuousAtTransition) {
  const double eps = 1e-6;
  for (double x : {0.5, 1.0, 2.0, 3.7}) {
    const double ye = -x;
    const double left = scale_factor(ye - eps, x);
    const double right = scale_factor(ye + eps, x);
    EXPECT_NEAR(left, right, 1e-4 * scale_factor(ye, x)) << "x=" << x;
    // one-sided finite differences
    const double d_left = (scale_factor(ye, x) - scale_factor(ye - eps, x)) / eps;
    const double d_right = (scale_factor(ye + eps, x) - scale_factor(ye, x)) / eps;
    EXPECT_NEAR(d_left, d_right, 1e-4 * std::abs(d_left)) << "x=" << x;
    EXPECT_NEAR(d_left, 1.0 / (x * x), 1e-4 / (x * x));
  }
}

TEST(OmegaSquared, Examples) {
  EXPECT_DOUBLE_EQ(omega_squared(-80.0, 2.0), 0.9996875);
  EXPECT_DOUBLE_EQ(omega_squared(-1.0, 2.0), 1.0);
  EXPECT_NEAR(omega_squared(-std::sqrt(2.0), 1.0), 0.0, 1e-15);
  // the matching point belongs to the radiation branch
  EXPECT_DOUBLE_EQ(omega_squared(-2.0, 2.0), 1.0);
}

TEST(BogoliubovAnalytic, UnitModeValues) {
  const auto b = bogoliubov_analytic(1.0);
  EXPECT_NEAR(b.alpha.real(), 0.5, 1e-15);
  EXPECT_NEAR(b.alpha.imag(), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(b.beta), 0.25, 1e-15);
  EXPECT_NEAR(b.normalization(), 1.0, 1e-12);
}

TEST(BogoliubovAnalytic, TableValueAtTwo) {
  EXPECT_NEAR(std::norm(bogoliubov_analytic(2.0).beta), 0.015625, 1e-15);
}

TEST(BogoliubovAnalytic, AdiabaticLimit) {
  const auto b = bogoliubov_analytic(1e4);
  EXPECT_LT(std::abs(b.beta), 1e-8);
  EXPECT_NEAR(std::abs(b.alpha - cplx{1.0, 0.0}), 1e-4, 1e-8);  // leading term i/x
}

TEST(BogoliubovAnalytic, NormalizationOnLogGrid) {
  for (int i = 0; i <= 60; ++i) {
    const double x = 0.5 * std::pow(20.0, i / 60.0);
    EXPECT_NEAR(bogoliubov_analytic(x).normalization(), 1.0, 1e-12) << "x=" << x;
  }
}

TEST(NkAnalytic, TableValues) {
  EXPECT_NEAR(n_k_analytic(1.3), 0.08753, 5e-6);
  EXPECT_NEAR(n_k_analytic(2.2), 0.01067, 5e-6);
  EXPECT_DOUBLE_EQ(n_k_analytic(1.0), 0.25);
}

TEST(NkAnalytic, MatchesBetaSquared) {
  for (double x : {0.7, 1.3, 2.0, 4.4}) {
    EXPECT_NEAR(n_k_analytic(x), std::norm(bogoliubov_analytic(x).beta), 1e-14);
  }
}

TEST(NkAnalytic, QuarticScalingAndMonotone) {
  double prev = n_k_analytic(0.5);
  for (int i = 1; i <= 40; ++i) {
    const double x = 0.5 + 0.25 * i;
    const double n = n_k_analytic(x);
    EXPECT_LT(n, prev);
    prev = n;
  }
  for (double x : {0.5, 1.0, 1.5, 2.0, 4.0}) {
    EXPECT_DOUBLE_EQ(n_k_analytic(x) / n_k_analytic(2.0 * x), 16.0);
  }
}

TEST(MultiPairProbability, Examples) {
  EXPECT_EQ(multi_pair_probability(0.0), 0.0);
  EXPECT_NEAR(multi_pair_probability(0.01), 9.80296e-5, 1e-9);
  EXPECT_LT(multi_pair_probability(0.01), 1e-4);
  EXPECT_DOUBLE_EQ(multi_pair_probability(1.0), 0.25);
  EXPECT_THROW(multi_pair_probability(-0.1), std::invalid_argument);
}

TEST(BogoliubovOdeOracle, Examples) {
  EXPECT_NEAR(std::norm(bogoliubov_ode_oracle(2.0, -80.0, 1e-10).beta), 0.015625, 1e-9);
  EXPECT_NEAR(std::norm(bogoliubov_ode_oracle(1.0, -80.0, 1e-10).alpha), 1.25, 1e-8);
  EXPECT_NEAR(std::norm(bogoliubov_ode_oracle(5.0, -80.0, 1e-10).beta), 4.0e-4, 1e-9);
}

TEST(BogoliubovOdeOracle, AgreesWithClosedForm) {
  for (double x : {1.0, 1.5, 2.0, 3.0, 5.0}) {
    const auto ode = bogoliubov_ode_oracle(x, -80.0, 1e-10);
    const auto exact = bogoliubov_analytic(x);
    EXPECT_LT(std::abs(std::norm(ode.beta) / std::norm(exact.beta) - 1.0), 1e-6) << "x=" << x;
    EXPECT_LT(std::abs(ode.beta - exact.beta), 1e-8) << "x=" << x;
    EXPECT_LT(std::abs(ode.alpha - exact.alpha), 1e-8) << "x=" << x;
    EXPECT_NEAR(ode.normalization(), 1.0, 1e-8);
  }
}

TEST(BogoliubovOdeOracle, Preconditions) {
  EXPECT_THROW(bogoliubov_ode_oracle(2.0, -10.0, 1e-10), std::invalid_argument);
  EXPECT_THROW(bogoliubov_ode_oracle(2.0, -80.0, 1e-3), std::invalid_argument);
  EXPECT_THROW(bogoliubov_ode_oracle(2.0, -80.0, 1e-14), std::invalid_argument);
  EXPECT_THROW(bogoliubov_ode_oracle(-1.0, -80.0, 1e-10), std::invalid_argument);
}

TEST(ModeParams, Invariants) {
  const auto p = ModeParams::with_defaults(1.3, 5);
  EXPECT_DOUBLE_EQ(p.y_i, -80.0);
  EXPECT_NEAR(p.y_f, 0.7, 1e-15);
  EXPECT_THROW((ModeParams{2.0, -80.0, -3.0, 4}.validate()), std::invalid_argument);
  EXPECT_THROW((ModeParams{0.0, -80.0, 1.0, 4}.validate()), std::invalid_argument);
  EXPECT_THROW((ModeParams{2.0, -80.0, 0.0, 0}.validate()), std::invalid_argument);
}

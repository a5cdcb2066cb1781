/*
 Copyright 2026 The ppadp Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ppadp/augmentation.hpp"

namespace {

using ppadp::Vector2;
using ppadp::Vectord;

const ppadp::ManipulatorParams<double> kParams{3.4743, 0.196, 0.242, 8.45, 2.35, 5.3, 1.1};

Vectord vec4(double a, double b, double c, double d) {
    Vectord x(4);
    x << a, b, c, d;
    return x;
}

Vectord closed_form(double t) { return vec4(0.5 * std::cos(2 * t), std::cos(t), -std::sin(2 * t), -std::sin(t)); }

struct Fixture : ::testing::Test {
    ppadp::PlantModel<double> plant = ppadp::make_manipulator_plant(kParams);
    ppadp::ReferenceModel<double> ref = ppadp::make_oscillator_reference(vec4(0.5, 1, 0, 0), Vector2<double>(2, 1));
};

TEST(Augment, ErrorAndRoundTrip) {
    const auto eta = ppadp::augment(vec4(0.4, 1.1, 0, 0), vec4(0.5, 1, 0, 0));
    EXPECT_NEAR(eta.e(0), -0.1, 1e-15);
    EXPECT_NEAR(eta.e(1), 0.1, 1e-15);
    EXPECT_EQ(eta.e(2), 0.0);
    const auto back = ppadp::split(eta.stacked());
    EXPECT_EQ(back.e, eta.e);
    EXPECT_EQ(back.x_r, eta.x_r);
    EXPECT_EQ(ppadp::augment(eta.x_r, eta.x_r).e.norm(), 0.0);
}

TEST(Augment, StackingOrder) {
    const auto eta = ppadp::augment(vec4(1, 2, 3, 4), vec4(0.5, 0.5, 0.5, 0.5));
    const Vectord s = eta.stacked();
    ASSERT_EQ(s.size(), 8);
    EXPECT_EQ(s.head(4), vec4(0.5, 1.5, 2.5, 3.5));
    EXPECT_EQ(s.tail(4), vec4(0.5, 0.5, 0.5, 0.5));
}

TEST(Augment, DimensionErrors) {
    EXPECT_THROW(ppadp::augment(Vectord(Vectord::Zero(4)), Vectord(Vectord::Zero(3))), ppadp::DimensionError);
    EXPECT_THROW(ppadp::split(Vectord(Vectord::Zero(7))), ppadp::DimensionError);
}

TEST_F(Fixture, SteadyStateControlAtStart) {
    const Vectord nu = ppadp::steady_state_control(plant, ref, ref.x_r0);
    EXPECT_NEAR(nu(0), -7.798365790100449, 1e-12);
    EXPECT_NEAR(nu(1), -0.8495063160401797, 1e-12);
}

TEST_F(Fixture, SteadyStateControlVanishesAtOrigin) {
    EXPECT_EQ(ppadp::steady_state_control(plant, ref, Vectord(Vectord::Zero(4))).norm(), 0.0);
}

TEST_F(Fixture, NuInvarianceAlongReference) {
    for (int k = 0; k < 50; ++k) {
        const Vectord xr = closed_form(0.37 * k);
        const Vectord nu = ppadp::steady_state_control(plant, ref, xr);
        EXPECT_LE((plant.flow(xr, nu) - ref.flow(xr)).norm(), 1e-10);
    }
}

TEST_F(Fixture, DriftVanishesAtOriginAndOnManifold) {
    EXPECT_EQ(ppadp::aug_drift(plant, ref, ppadp::split(Vectord(Vectord::Zero(8)))).norm(), 0.0);
    for (int k = 0; k < 20; ++k) {
        const Vectord xr = closed_form(0.9 * k);
        const Vectord F = ppadp::aug_drift(plant, ref, ppadp::augment(xr, xr));
        EXPECT_LE(F.head(4).norm(), 1e-10);
    }
}

TEST_F(Fixture, InputMapBottomBlockZero) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int k = 0; k < 20; ++k) {
        const auto eta = ppadp::augment(vec4(U(rng), U(rng), U(rng), U(rng)), vec4(U(rng), U(rng), U(rng), U(rng)));
        const auto G = ppadp::aug_input(plant, eta);
        ASSERT_EQ(G.rows(), 8);
        EXPECT_EQ(G.bottomRows(4).norm(), 0.0);
    }
}

TEST_F(Fixture, AugmentedFlowMatchesDirectDerivative) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int k = 0; k < 100; ++k) {
        const Vectord x = vec4(U(rng), U(rng), U(rng), U(rng));
        const Vectord xr = vec4(U(rng), U(rng), U(rng), U(rng));
        const Vectord mu = Vector2<double>(U(rng), U(rng));
        const auto eta = ppadp::augment(x, xr);
        const Vectord eta_dot = ppadp::aug_drift(plant, ref, eta) + ppadp::aug_input(plant, eta) * mu;

        const Vectord u = ppadp::total_control(mu, ppadp::steady_state_control(plant, ref, xr));
        Vectord direct(8);
        direct << plant.flow(x, u) - ref.flow(xr), ref.flow(xr);
        EXPECT_LE((eta_dot - direct).norm(), 1e-10);
    }
}

TEST_F(Fixture, InputMapBoundedOverTube) {
    double worst = 0;
    for (int k = 0; k < 400; ++k) {
        const Vectord xr = closed_form(0.2 * k);
        const Vectord x = xr + vec4(0.3 * std::sin(k), 0.3 * std::cos(k), 0, 0);
        worst = std::max(worst, ppadp::aug_input(plant, ppadp::augment(x, xr)).norm());
    }
    EXPECT_LE(worst, 6.8689);
}

TEST(TotalControl, Sums) {
    const Vectord nu = Vector2<double>(-7.798365, -0.849506);
    const Vectord u = ppadp::total_control(Vectord(Vector2<double>(1, -1)), nu);
    EXPECT_NEAR(u(0), -6.798365, 1e-15);
    EXPECT_NEAR(u(1), -1.849506, 1e-15);
    EXPECT_EQ(ppadp::total_control(Vectord(Vectord::Zero(2)), nu), nu);
}

}  // namespace

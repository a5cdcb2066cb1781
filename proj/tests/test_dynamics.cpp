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
#include <numbers>
#include <random>

#include "ppadp/dynamics.hpp"

namespace {

using ppadp::Matrix2;
using ppadp::Vector2;
using ppadp::Vectord;

const ppadp::ManipulatorParams<double> kParams{3.4743, 0.196, 0.242, 8.45, 2.35, 5.3, 1.1};
constexpr double kPi = std::numbers::pi;

Vectord state(double a, double b, double c, double d) {
    Vectord x(4);
    x << a, b, c, d;
    return x;
}

TEST(MassMatrix, CosineZeroKillsCouplingTerms) {
    const Matrix2<double> M = ppadp::mass_matrix(kParams, Vector2<double>(0, kPi / 2));
    EXPECT_NEAR(M(0, 0), 3.4743, 1e-12);
    EXPECT_NEAR(M(0, 1), 0.196, 1e-12);
    EXPECT_NEAR(M(1, 0), 0.196, 1e-12);
    EXPECT_NEAR(M(1, 1), 0.196, 1e-12);
}

TEST(MassMatrix, StraightArm) {
    const Matrix2<double> M = ppadp::mass_matrix(kParams, Vector2<double>(0.3, 0));
    EXPECT_NEAR(M(0, 0), 3.9583, 1e-12);
    EXPECT_NEAR(M(0, 1), 0.438, 1e-12);
    EXPECT_NEAR(M(1, 1), 0.196, 1e-12);
}

TEST(MassMatrix, ScriptValueAtHalfOne) {
    const Matrix2<double> M = ppadp::mass_matrix(kParams, Vector2<double>(0.5, 1.0));
    EXPECT_NEAR(M(0, 0), 3.7358063160401795, 1e-13);
    EXPECT_NEAR(M(0, 1), 0.32675315802008986, 1e-13);
    EXPECT_NEAR(M(1, 0), 0.32675315802008986, 1e-13);
    EXPECT_NEAR(M(1, 1), 0.196, 1e-13);
}

TEST(MassMatrix, PositiveDefiniteOverJointRange) {
    for (int k = 0; k <= 720; ++k) {
        const double q2 = -kPi + 2 * kPi * k / 720.0;
        const Matrix2<double> M = ppadp::mass_matrix(kParams, Vector2<double>(0.1, q2));
        EXPECT_LT((M - M.transpose()).norm(), 1e-15);
        Eigen::SelfAdjointEigenSolver<Matrix2<double>> eig(M);
        EXPECT_GT(eig.eigenvalues().minCoeff(), 0.05);
        EXPECT_LT(eig.eigenvalues().maxCoeff(), 5.0);
    }
}

TEST(Coriolis, VanishesAtRestAndStraightArm) {
    EXPECT_EQ(ppadp::coriolis_matrix(kParams, Vector2<double>(0.2, 0.7), Vector2<double>(0, 0)).norm(), 0.0);
    EXPECT_EQ(ppadp::coriolis_matrix(kParams, Vector2<double>(0.2, 0.0), Vector2<double>(1.5, -2)).norm(), 0.0);
}

TEST(Coriolis, ScriptValue) {
    const Matrix2<double> C = ppadp::coriolis_matrix(kParams, Vector2<double>(0, kPi / 2), Vector2<double>(1, 2));
    EXPECT_NEAR(C(0, 0), -0.484, 1e-14);
    EXPECT_NEAR(C(0, 1), -0.726, 1e-14);
    EXPECT_NEAR(C(1, 0), 0.242, 1e-14);
    EXPECT_NEAR(C(1, 1), 0.0, 1e-14);
}

TEST(Friction, Values) {
    EXPECT_EQ(ppadp::friction_torque(kParams, Vector2<double>(0, 0)).norm(), 0.0);
    const Vector2<double> a = ppadp::friction_torque(kParams, Vector2<double>(1, 0));
    EXPECT_NEAR(a(0), 11.735470617826213, 1e-12);
    EXPECT_EQ(a(1), 0.0);
    const Vector2<double> b = ppadp::friction_torque(kParams, Vector2<double>(0, -1));
    EXPECT_EQ(b(0), 0.0);
    EXPECT_NEAR(b(1), -2.8897462664960476, 1e-12);
}

TEST(ManipulatorF, ZeroAndRestStates) {
    EXPECT_LE(ppadp::manipulator_f(kParams, Vectord(Vectord::Zero(4))).norm(), 1e-12);
    EXPECT_LE(ppadp::manipulator_f(kParams, state(0.5, 1, 0, 0)).norm(), 1e-12);
}

TEST(ManipulatorF, ScriptAcceleration) {
    const Vectord f = ppadp::manipulator_f(kParams, state(0, kPi / 2, 1, 0));
    EXPECT_NEAR(f(0), 1.0, 1e-15);
    EXPECT_NEAR(f(1), 0.0, 1e-15);
    EXPECT_NEAR(f(2), -3.505923990429861, 1e-12);
    EXPECT_NEAR(f(3), 2.2712301128788415, 1e-12);
}

TEST(ManipulatorF, SatisfiesEquationOfMotion) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int k = 0; k < 50; ++k) {
        const Vectord x = state(U(rng), U(rng), U(rng), U(rng));
        const Vectord u = Vector2<double>(U(rng), U(rng));
        const Vectord xd = ppadp::make_manipulator_plant(kParams).flow(x, u);
        const Vector2<double> q = x.head<2>(), qd = x.tail<2>(), qdd = xd.tail<2>();
        const Vector2<double> lhs = ppadp::mass_matrix(kParams, q) * qdd +
                                    ppadp::coriolis_matrix(kParams, q, qd) * qd +
                                    ppadp::friction_torque(kParams, qd);
        EXPECT_LT((lhs - Vector2<double>(u)).norm(), 1e-11);
        EXPECT_LT((xd.head<2>() - qd).norm(), 1e-15);
    }
}

TEST(ManipulatorG, LeftInverseOnRandomStates) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-kPi, kPi);
    for (int k = 0; k < 100; ++k) {
        const Vectord x = state(U(rng), U(rng), U(rng), U(rng));
        const auto g = ppadp::manipulator_g(kParams, x);
        const auto gp = ppadp::manipulator_g_pinv(kParams, x);
        ASSERT_EQ(g.rows(), 4);
        ASSERT_EQ(g.cols(), 2);
        EXPECT_LE((gp * g - Eigen::Matrix2d::Identity()).norm(), 1e-10);
        EXPECT_EQ(g.topRows(2).norm(), 0.0);
    }
}

TEST(ManipulatorG, ScriptInverseBlock) {
    const auto g = ppadp::manipulator_g(kParams, state(0, kPi / 2, 0, 0));
    EXPECT_NEAR(g(2, 0), 0.30503614678339386, 1e-13);
    EXPECT_NEAR(g(2, 1), -0.3050361467833939, 1e-13);
    EXPECT_NEAR(g(3, 0), -0.3050361467833939, 1e-13);
    EXPECT_NEAR(g(3, 1), 5.407076963109924, 1e-12);
}

TEST(ManipulatorG, ColumnNormsBoundedOverGrid) {
    double worst = 0;
    for (int k = 0; k <= 360; ++k) {
        const double q2 = -kPi + 2 * kPi * k / 360.0;
        worst = std::max(worst, ppadp::manipulator_g(kParams, state(0, q2, 0, 0)).norm());
    }
    EXPECT_NEAR(worst, 6.8688, 1e-3);
}

TEST(ManipulatorParams, RejectsNonPositiveAndSingular) {
    auto p = kParams;
    p.fd2 = 0;
    EXPECT_THROW(ppadp::validate(p), ppadp::InvalidParameters);
    p = kParams;
    p.p3 = 1.0;  // p1 p2 - p2^2 - p3^2 < 0
    EXPECT_THROW(ppadp::validate(p), ppadp::InvalidParameters);
    EXPECT_NO_THROW(ppadp::validate(kParams));
}

TEST(ManipulatorF, RejectsWrongStateSize) {
    EXPECT_THROW(ppadp::manipulator_f(kParams, Vectord(Vectord::Zero(3))), ppadp::DimensionError);
}

TEST(Reference, FlowValues) {
    const auto ref = ppadp::make_oscillator_reference(state(0.5, 1, 0, 0), Vector2<double>(2, 1));
    EXPECT_EQ(ref.flow(Vectord(Vectord::Zero(4))).norm(), 0.0);
    const Vectord y = ref.flow(ref.x_r0);
    EXPECT_DOUBLE_EQ(y(0), 0.0);
    EXPECT_DOUBLE_EQ(y(1), 0.0);
    EXPECT_DOUBLE_EQ(y(2), -2.0);
    EXPECT_DOUBLE_EQ(y(3), -1.0);
}

Vectord closed_form(double t) { return state(0.5 * std::cos(2 * t), std::cos(t), -std::sin(2 * t), -std::sin(t)); }

Vectord rk4(const ppadp::ReferenceModel<double>& ref, Vectord x, double dt, long steps) {
    for (long k = 0; k < steps; ++k) {
        const Vectord k1 = ref.flow(x);
        const Vectord k2 = ref.flow(x + 0.5 * dt * k1);
        const Vectord k3 = ref.flow(x + 0.5 * dt * k2);
        const Vectord k4 = ref.flow(x + dt * k3);
        x += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return x;
}

TEST(Reference, HalfPeriodOfSlowOscillator) {
    const auto ref = ppadp::make_oscillator_reference(state(0.5, 1, 0, 0), Vector2<double>(2, 1));
    const Vectord x = rk4(ref, ref.x_r0, kPi / 3142, 3142);
    EXPECT_LT((x - state(0.5, -1, 0, 0)).norm(), 1e-9);
}

TEST(Reference, MatchesClosedFormAndStaysBounded) {
    const auto ref = ppadp::make_oscillator_reference(state(0.5, 1, 0, 0), Vector2<double>(2, 1));
    Vectord x = ref.x_r0;
    double worst = 0, biggest = 0;
    for (int k = 1; k <= 80; ++k) {
        x = rk4(ref, x, 1e-3, 1000);
        worst = std::max(worst, (x - closed_form(k)).norm());
        biggest = std::max(biggest, x.norm());
    }
    EXPECT_LE(worst, 1e-6);
    EXPECT_LE(biggest, std::sqrt(2.0) + 1e-9);
}

TEST(Reference, LipschitzEstimateBounded) {
    const auto ref = ppadp::make_oscillator_reference(state(0.5, 1, 0, 0), Vector2<double>(2, 1));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    double L = 0;
    for (int k = 0; k < 200; ++k) {
        const Vectord a = state(U(rng), U(rng), U(rng), U(rng));
        const Vectord b = state(U(rng), U(rng), U(rng), U(rng));
        L = std::max(L, (ref.flow(a) - ref.flow(b)).norm() / (a - b).norm());
    }
    EXPECT_LE(L, 4.0 + 1e-12);  // largest singular value of the linear flow
}

}  // namespace

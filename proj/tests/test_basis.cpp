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

#include <random>

#include "ppadp/basis.hpp"

namespace {

using ppadp::Vectord;

Vectord random_eta(std::mt19937& rng) {
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    Vectord eta(8);
    for (int i = 0; i < 8; ++i) eta(i) = U(rng);
    return eta;
}

TEST(ManipulatorBasis, HasTwentyThreeValidTerms) {
    const auto b = ppadp::manipulator_tracking_basis<double>();
    EXPECT_EQ(b.size(), 23);
    EXPECT_EQ(b.dim, 8);
    EXPECT_NO_THROW(ppadp::validate(b));
    for (const auto& t : b.terms) EXPECT_GE(t.degree(), 2);
}

TEST(ManipulatorBasis, TermValuesAndOrder) {
    const auto b = ppadp::manipulator_tracking_basis<double>();
    Vectord eta(8);
    eta << 1, 2, 3, 4, 5, 6, 7, 8;
    const Vectord phi = ppadp::basis_eval(b, eta);
    EXPECT_DOUBLE_EQ(phi(0), 0.5);
    EXPECT_DOUBLE_EQ(phi(1), 2.0);
    EXPECT_DOUBLE_EQ(phi(2), 3.0);
    EXPECT_DOUBLE_EQ(phi(3), 4.0);
    EXPECT_DOUBLE_EQ(phi(4), 6.0);
    EXPECT_DOUBLE_EQ(phi(5), 8.0);
    EXPECT_DOUBLE_EQ(phi(6), 2.0);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            EXPECT_DOUBLE_EQ(phi(7 + 4 * i + j), 0.5 * eta(i) * eta(i) * eta(4 + j) * eta(4 + j));
        }
    }
}

TEST(ManipulatorBasis, VanishesWithGradientAtOrigin) {
    const auto b = ppadp::manipulator_tracking_basis<double>();
    EXPECT_EQ(ppadp::basis_eval(b, Vectord(Vectord::Zero(8))).norm(), 0.0);
    EXPECT_EQ(ppadp::basis_grad(b, Vectord(Vectord::Zero(8))).norm(), 0.0);
}

TEST(ManipulatorBasis, GradientMatchesCentralDifferences) {
    const auto b = ppadp::manipulator_tracking_basis<double>();
    std::mt19937 rng(21);
    const double h = 1e-5;
    for (int k = 0; k < 100; ++k) {
        const Vectord eta = random_eta(rng);
        const auto J = ppadp::basis_grad(b, eta);
        ppadp::Matrixd fd(23, 8);
        for (int c = 0; c < 8; ++c) {
            Vectord p = eta, m = eta;
            p(c) += h;
            m(c) -= h;
            fd.col(c) = (ppadp::basis_eval(b, p) - ppadp::basis_eval(b, m)) / (2 * h);
        }
        EXPECT_LE((J - fd).norm(), 1e-6 * std::max(1.0, J.norm()));
    }
}

TEST(Basis, CustomSpecAndValidation) {
    ppadp::BasisSpec<double> b;
    b.dim = 2;
    b.terms.push_back({2.0, {{0, 3}}});
    b.terms.push_back({1.0, {{0, 1}, {1, 1}}});
    Vectord eta(2);
    eta << 2, -3;
    EXPECT_DOUBLE_EQ(ppadp::basis_eval(b, eta)(0), 16.0);
    const auto J = ppadp::basis_grad(b, eta);
    EXPECT_DOUBLE_EQ(J(0, 0), 24.0);
    EXPECT_DOUBLE_EQ(J(1, 0), -3.0);
    EXPECT_DOUBLE_EQ(J(1, 1), 2.0);

    b.terms.push_back({1.0, {{1, 1}}});
    EXPECT_THROW(ppadp::validate(b), std::invalid_argument);
    b.terms.back() = {1.0, {{5, 2}}};
    EXPECT_THROW(ppadp::validate(b), std::invalid_argument);
    EXPECT_THROW(ppadp::basis_eval(b, Vectord(Vectord::Zero(3))), ppadp::DimensionError);
}

}  // namespace

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


#pragma once

// Small reference problems with known answers, shared by the unit tests and
// the acceptance binary.

#include <cmath>
#include <random>
#include <vector>

#include "ppadp/critic.hpp"

namespace ppadp::testing {

/// xdot = a x + b u, tracked against the constant reference 0.
inline PlantModel<double> scalar_plant(double a, double b) {
    PlantModel<double> p;
    p.n = 1;
    p.m = 1;
    p.f = [a](const Vectord& x) { return Vectord(a * x); };
    p.g = [b](const Vectord&) { return Matrixd::Constant(1, 1, b); };
    p.g_pinv = [b](const Vectord&) { return Matrixd::Constant(1, 1, 1.0 / b); };
    return p;
}

inline ReferenceModel<double> zero_reference() {
    return {Vectord::Zero(1), [](const Vectord& xr) { return Vectord(Vectord::Zero(xr.size())); }};
}

inline CostSpec<double> scalar_quadratic(double q, double r) {
    return {QuadraticCost<double>{Matrixd::Constant(1, 1, q)}, Matrixd::Constant(1, 1, r)};
}

/// Phi(eta) = [1/2 e^2] on eta = [e, x_r].
inline BasisSpec<double> half_square_basis() {
    BasisSpec<double> b;
    b.dim = 2;
    b.terms.push_back({0.5, {{0, 2}}});
    return b;
}

/// Stabilizing root of 2 a p - b^2 p^2 / r + q = 0.
inline double riccati(double a, double b, double q, double r) {
    return (a * r + std::sqrt(a * a * r * r + b * b * q * r)) / (b * b);
}

struct ReplayResult {
    std::vector<double> times;
    std::vector<double> error_norms;  ///< |W - W*|
    int stored = 0;
    double lambda_min = 0;
    double time_to_tol = -1;  ///< first t with |W - W*| <= tol, -1 if never
    bool monotone = true;
};

/// Replay-only learning (k_c = 0) on N-dimensional regressors with exact
/// targets Theta_l = -W*^T Y_l, integrated with RK4 from W = 0. Monotonicity
/// is judged until the error reaches round-off level.
inline ReplayResult replay_only_learning(int N, int points, double k_e, double t_end, double dt, double tol,
                                         unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal;
    Vectord W_star(N);
    for (int i = 0; i < N; ++i) W_star(i) = normal(rng);

    typename ExperienceBuffer<double>::Options opts;
    opts.capacity = points;
    opts.min_sv_gain = 1.0;
    ExperienceBuffer<double> buffer(N, opts);
    for (int l = 0; l < points; ++l) {
        Vectord Y(N);
        for (int i = 0; i < N; ++i) Y(i) = normal(rng);
        buffer.record(Y, -W_star.dot(Y));
    }

    CriticGains<double> gains{Matrixd::Identity(N, N), 0.0, k_e, false};
    const Vectord Y_now = Vectord::Zero(N);
    auto deriv = [&](const Vectord& W) { return weight_derivative(gains, buffer, W, Y_now, 0.0); };

    ReplayResult out;
    out.stored = buffer.size();
    out.lambda_min = buffer.lambda_min();
    Vectord W = Vectord::Zero(N);
    const long steps = std::lround(t_end / dt);
    for (long k = 0; k <= steps; ++k) {
        const double t = k * dt;
        const double err = (W - W_star).norm();
        if (!out.error_norms.empty() && !(err < out.error_norms.back()) && out.error_norms.back() > 1e-12) {
            out.monotone = false;
        }
        out.times.push_back(t);
        out.error_norms.push_back(err);
        if (out.time_to_tol < 0 && err <= tol) out.time_to_tol = t;
        if (k == steps) break;
        const Vectord k1 = deriv(W);
        const Vectord k2 = deriv(W + 0.5 * dt * k1);
        const Vectord k3 = deriv(W + 0.5 * dt * k2);
        const Vectord k4 = deriv(W + dt * k3);
        W += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return out;
}

}  // namespace ppadp::testing

namespace ppadp::testing {

/// Stabilizing initial critic weights for the 23-term manipulator basis,
/// fitted to the value function of the LQR problem linearized about the
/// reference. Used where a test needs a well-behaved closed loop.
inline Vectord manipulator_warm_start() {
    Vectord w = Vectord::Zero(23);
    w(0) = 59.4;
    w(1) = 20.4;
    w(2) = 21.2;
    w(3) = 1.9;
    w(4) = 1.26;
    w(5) = 1.06;
    w(16) = 11.4;
    w(18) = 11.4;
    w(20) = 0.64;
    w(22) = 0.64;
    return w;
}

}  // namespace ppadp::testing

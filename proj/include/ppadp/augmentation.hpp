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

#include <string>
#include <utility>

#include "ppadp/dynamics.hpp"

namespace ppadp {

/// Concatenated tracking state eta = [e; x_r], with e = x - x_r.
template <typename Scalar>
struct AugmentedState {
    Vector<Scalar> e;
    Vector<Scalar> x_r;

    int n() const { return static_cast<int>(e.size()); }

    Vector<Scalar> stacked() const {
        Vector<Scalar> eta(e.size() + x_r.size());
        eta << e, x_r;
        return eta;
    }

    Vector<Scalar> plant_state() const { return e + x_r; }
};

template <typename Scalar>
AugmentedState<Scalar> augment(const Vector<Scalar>& x, const Vector<Scalar>& x_r) {
    if (x.size() != x_r.size()) {
        throw DimensionError("augment: plant state has " + std::to_string(x.size()) +
                             " components, reference has " + std::to_string(x_r.size()));
    }
    return {x - x_r, x_r};
}

template <typename Scalar>
AugmentedState<Scalar> split(const Vector<Scalar>& eta) {
    if (eta.size() % 2 != 0) {
        throw DimensionError("split: augmented state must have even length");
    }
    const Eigen::Index n = eta.size() / 2;
    return {eta.head(n), eta.tail(n)};
}

/// Feedforward nu = g+(x_r) (y(x_r) - f(x_r)) that keeps the plant on the reference.
template <typename Scalar>
Vector<Scalar> steady_state_control(const PlantModel<Scalar>& plant, const ReferenceModel<Scalar>& ref,
                                    const Vector<Scalar>& x_r) {
    return plant.g_pinv(x_r) * (ref.flow(x_r) - plant.f(x_r));
}

/// F(eta) = [f(x) - y(x_r) + g(x) nu; y(x_r)].
template <typename Scalar>
Vector<Scalar> aug_drift(const PlantModel<Scalar>& plant, const ReferenceModel<Scalar>& ref,
                         const AugmentedState<Scalar>& eta) {
    const Vector<Scalar> x = eta.plant_state();
    const Vector<Scalar> y = ref.flow(eta.x_r);
    const Vector<Scalar> nu = steady_state_control(plant, ref, eta.x_r);
    Vector<Scalar> F(2 * plant.n);
    F << plant.f(x) - y + plant.g(x) * nu, y;
    return F;
}

/// G(eta) = [g(x); 0].
template <typename Scalar>
Matrix<Scalar> aug_input(const PlantModel<Scalar>& plant, const AugmentedState<Scalar>& eta) {
    Matrix<Scalar> G = Matrix<Scalar>::Zero(2 * plant.n, plant.m);
    G.topRows(plant.n) = plant.g(eta.plant_state());
    return G;
}

/// Applied input u = mu + nu.
template <typename Scalar>
Vector<Scalar> total_control(const Vector<Scalar>& mu, const Vector<Scalar>& nu) {
    return mu + nu;
}

}  // namespace ppadp

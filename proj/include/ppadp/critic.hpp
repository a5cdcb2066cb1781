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

#include "ppadp/augmentation.hpp"
#include "ppadp/basis.hpp"
#include "ppadp/experience_buffer.hpp"
#include "ppadp/performance.hpp"

namespace ppadp {

template <typename Scalar>
struct CriticGains {
    Matrix<Scalar> Gamma;     ///< N x N, symmetric positive definite
    Scalar k_c{};             ///< weight on the current sample
    Scalar k_e{};             ///< weight on each replayed sample
    bool normalize = false;   ///< divide each term by (1 + Y^T Y)^2
};

template <typename Scalar>
void validate(const CriticGains<Scalar>& g) {
    if (g.Gamma.rows() != g.Gamma.cols()) throw std::invalid_argument("critic: Gamma must be square");
    if (!g.Gamma.isApprox(g.Gamma.transpose())) throw std::invalid_argument("critic: Gamma must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(g.Gamma);
    if (!(eig.eigenvalues().minCoeff() > Scalar(0))) {
        throw std::invalid_argument("critic: Gamma must be positive definite");
    }
    if (!(g.k_c >= Scalar(0)) || !(g.k_e >= Scalar(0))) {
        throw std::invalid_argument("critic: k_c and k_e must be nonnegative");
    }
}

/// Weight estimate, learning gains and the replay memory.
template <typename Scalar>
struct CriticState {
    Vector<Scalar> W;
    CriticGains<Scalar> gains;
    ExperienceBuffer<Scalar> buffer;
};

/// One sample of the linear-in-parameters Lyapunov equation Theta = -W^T Y.
template <typename Scalar>
struct RegressionPoint {
    Vector<Scalar> Y;
    Scalar theta{};
};

template <typename Scalar>
Scalar value_estimate(const Vector<Scalar>& W, const BasisSpec<Scalar>& basis, const Vector<Scalar>& eta) {
    return W.dot(basis_eval(basis, eta));
}

template <typename Scalar>
Vector<Scalar> value_grad(const Vector<Scalar>& W, const BasisSpec<Scalar>& basis, const Vector<Scalar>& eta) {
    return basis_grad(basis, eta).transpose() * W;
}

/// Y = grad Phi(eta) (F + G mu), Theta = r(eta, mu) for the applied input mu.
template <typename Scalar>
RegressionPoint<Scalar> regression_point(const PlantModel<Scalar>& plant, const ReferenceModel<Scalar>& ref,
                                         const CostSpec<Scalar>& cost, const BasisSpec<Scalar>& basis,
                                         const AugmentedState<Scalar>& eta, const Vector<Scalar>& mu_applied,
                                         Scalar t) {
    const Vector<Scalar> eta_dot = aug_drift(plant, ref, eta) + aug_input(plant, eta) * mu_applied;
    return {basis_grad(basis, eta.stacked()) * eta_dot, utility(cost, eta.e, eta.x_r, mu_applied, t)};
}

/// Theta_tilde = Theta + W^T Y.
template <typename Scalar>
Scalar bellman_error(const Vector<Scalar>& W, const Vector<Scalar>& Y, Scalar theta) {
    return theta + W.dot(Y);
}

/// Wdot = -Gamma (k_c Y e(Y) + k_e sum_l Y_l e_l) with every Bellman error
/// evaluated at the weights W passed in.
template <typename Scalar>
Vector<Scalar> weight_derivative(const CriticGains<Scalar>& gains, const ExperienceBuffer<Scalar>& buffer,
                                 const Vector<Scalar>& W, const Vector<Scalar>& Y, Scalar theta) {
    Vector<Scalar> sum = gains.k_c * Y * bellman_error(W, Y, theta);
    if (gains.normalize) {
        const Scalar d = Scalar(1) + Y.squaredNorm();
        sum /= d * d;
    }
    if (buffer.size() > 0) {
        const Matrix<Scalar>& B = buffer.regressors();
        Vector<Scalar> errs = buffer.targets() + B.transpose() * W;
        if (gains.normalize) {
            for (Eigen::Index l = 0; l < errs.size(); ++l) {
                const Scalar d = Scalar(1) + B.col(l).squaredNorm();
                errs(l) /= d * d;
            }
        }
        sum += gains.k_e * (B * errs);
    }
    return -(gains.Gamma * sum);
}

template <typename Scalar>
Vector<Scalar> weight_derivative(const CriticState<Scalar>& critic, const Vector<Scalar>& Y, Scalar theta) {
    return weight_derivative(critic.gains, critic.buffer, critic.W, Y, theta);
}

/// mu_hat = -1/2 R^-1 G^T grad Phi^T W.
template <typename Scalar>
Vector<Scalar> approx_control(const Vector<Scalar>& W, const BasisSpec<Scalar>& basis,
                              const PlantModel<Scalar>& plant, const Matrix<Scalar>& R,
                              const AugmentedState<Scalar>& eta) {
    const Vector<Scalar> grad = value_grad(W, basis, eta.stacked());
    return Scalar(-0.5) * R.ldlt().solve(aug_input(plant, eta).transpose() * grad);
}

/// HJB residual grad V^T F + state cost - 1/4 grad V^T G R^-1 G^T grad V under W.
template <typename Scalar>
Scalar hamiltonian_residual(const Vector<Scalar>& W, const BasisSpec<Scalar>& basis,
                            const PlantModel<Scalar>& plant, const ReferenceModel<Scalar>& ref,
                            const CostSpec<Scalar>& cost, const AugmentedState<Scalar>& eta, Scalar t) {
    const Vector<Scalar> grad = value_grad(W, basis, eta.stacked());
    const Vector<Scalar> Gt_grad = aug_input(plant, eta).transpose() * grad;
    return grad.dot(aug_drift(plant, ref, eta)) + state_cost(cost, eta.e, eta.x_r, t) -
           Scalar(0.25) * Gt_grad.dot(cost.R.ldlt().solve(Gt_grad));
}

}  // namespace ppadp

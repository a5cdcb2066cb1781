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

#include <cmath>
#include <functional>
#include <string>

#include "ppadp/errors.hpp"
#include "ppadp/types.hpp"

namespace ppadp {

/// Control-affine plant xdot = f(x) + g(x) u with a left inverse of g.
///
/// Dimension-generic; the evaluators must be pure functions of the state so
/// that a model can be shared between threads.
template <typename Scalar>
struct PlantModel {
    int n = 0;  ///< state dimension
    int m = 0;  ///< input dimension
    std::function<Vector<Scalar>(const Vector<Scalar>&)> f;
    std::function<Matrix<Scalar>(const Vector<Scalar>&)> g;
    std::function<Matrix<Scalar>(const Vector<Scalar>&)> g_pinv;

    Vector<Scalar> flow(const Vector<Scalar>& x, const Vector<Scalar>& u) const {
        return f(x) + g(x) * u;
    }
};

/// Autonomous reference generator xr_dot = y(xr).
template <typename Scalar>
struct ReferenceModel {
    Vector<Scalar> x_r0;
    std::function<Vector<Scalar>(const Vector<Scalar>&)> flow;
};

// -----------------------------------------------------------------------------
// Two-link Euler-Lagrange manipulator
//   M(q) qdd + C(q, qd) qd + Fd qd + Fs(qd) = tau,   x = [q1, q2, qd1, qd2]
// -----------------------------------------------------------------------------

template <typename Scalar>
struct ManipulatorParams {
    Scalar p1{}, p2{}, p3{};  ///< inertia coefficients [kg m^2]
    Scalar fs1{}, fs2{};      ///< static (tanh) friction [N m]
    Scalar fd1{}, fd2{};      ///< viscous friction [N m s / rad]
};

/// Throws InvalidParameters unless every coefficient is strictly positive and
/// M(q) is positive definite for all q.
template <typename Scalar>
void validate(const ManipulatorParams<Scalar>& p) {
    const Scalar coeffs[] = {p.p1, p.p2, p.p3, p.fs1, p.fs2, p.fd1, p.fd2};
    const char* names[] = {"p1", "p2", "p3", "fs1", "fs2", "fd1", "fd2"};
    for (int i = 0; i < 7; ++i) {
        if (!(coeffs[i] > Scalar(0))) {
            throw InvalidParameters(std::string("manipulator parameter ") + names[i] +
                                    " must be strictly positive");
        }
    }
    // det M(q) = p1 p2 - p2^2 - p3^2 c2^2 is smallest at c2^2 = 1.
    if (!(p.p1 * p.p2 - p.p2 * p.p2 - p.p3 * p.p3 > Scalar(0))) {
        throw InvalidParameters("manipulator inertia matrix is not positive definite for all q");
    }
}

template <typename Scalar>
Matrix2<Scalar> mass_matrix(const ManipulatorParams<Scalar>& p, const Vector2<Scalar>& q) {
    using std::cos;
    const Scalar c2 = cos(q(1));
    Matrix2<Scalar> M;
    M << p.p1 + Scalar(2) * p.p3 * c2, p.p2 + p.p3 * c2,
         p.p2 + p.p3 * c2,             p.p2;
    return M;
}

template <typename Scalar>
Matrix2<Scalar> coriolis_matrix(const ManipulatorParams<Scalar>& p, const Vector2<Scalar>& q,
                                const Vector2<Scalar>& qdot) {
    using std::sin;
    const Scalar s2 = sin(q(1));
    Matrix2<Scalar> C;
    C << -p.p3 * s2 * qdot(1), -p.p3 * s2 * (qdot(0) + qdot(1)),
          p.p3 * s2 * qdot(0),  Scalar(0);
    return C;
}

/// Viscous plus tanh-smoothed static friction, Fd qd + Fs(qd).
template <typename Scalar>
Vector2<Scalar> friction_torque(const ManipulatorParams<Scalar>& p, const Vector2<Scalar>& qdot) {
    using std::tanh;
    return Vector2<Scalar>(p.fd1 * qdot(0) + p.fs1 * tanh(qdot(0)),
                           p.fd2 * qdot(1) + p.fs2 * tanh(qdot(1)));
}

namespace detail {

template <typename Scalar>
Matrix2<Scalar> checked_inverse(const Matrix2<Scalar>& M) {
    using std::abs;
    const Scalar det = M.determinant();
    if (!(abs(det) > Scalar(1e-12) * M.squaredNorm())) {
        throw InvalidParameters("manipulator inertia matrix is singular");
    }
    return M.inverse();
}

template <typename Scalar>
void check_state(const Vector<Scalar>& x) {
    if (x.size() != 4) {
        throw DimensionError("manipulator state must have 4 components, got " +
                             std::to_string(x.size()));
    }
}

}  // namespace detail

/// Drift f(x) = [qd; M^-1 (-C qd - Fd qd - Fs)].
template <typename Scalar>
Vector<Scalar> manipulator_f(const ManipulatorParams<Scalar>& p, const Vector<Scalar>& x) {
    detail::check_state(x);
    const Vector2<Scalar> q = x.template head<2>();
    const Vector2<Scalar> qd = x.template tail<2>();
    const Vector2<Scalar> rhs = -coriolis_matrix(p, q, qd) * qd - friction_torque(p, qd);
    Vector<Scalar> out(4);
    out.template head<2>() = qd;
    out.template tail<2>() = mass_matrix(p, q).ldlt().solve(rhs);
    return out;
}

template <typename Scalar>
Matrix<Scalar> manipulator_g(const ManipulatorParams<Scalar>& p, const Vector<Scalar>& x) {
    detail::check_state(x);
    Matrix<Scalar> G = Matrix<Scalar>::Zero(4, 2);
    G.template bottomRows<2>() = detail::checked_inverse(mass_matrix<Scalar>(p, x.template head<2>()));
    return G;
}

/// Left inverse [0 | M(q)] of manipulator_g.
template <typename Scalar>
Matrix<Scalar> manipulator_g_pinv(const ManipulatorParams<Scalar>& p, const Vector<Scalar>& x) {
    detail::check_state(x);
    Matrix<Scalar> Gp = Matrix<Scalar>::Zero(2, 4);
    Gp.template rightCols<2>() = mass_matrix<Scalar>(p, x.template head<2>());
    return Gp;
}

template <typename Scalar>
PlantModel<Scalar> make_manipulator_plant(const ManipulatorParams<Scalar>& params) {
    validate(params);
    PlantModel<Scalar> plant;
    plant.n = 4;
    plant.m = 2;
    plant.f = [params](const Vector<Scalar>& x) { return manipulator_f(params, x); };
    plant.g = [params](const Vector<Scalar>& x) { return manipulator_g(params, x); };
    plant.g_pinv = [params](const Vector<Scalar>& x) { return manipulator_g_pinv(params, x); };
    return plant;
}

// -----------------------------------------------------------------------------
// Reference: two decoupled harmonic oscillators on [q1r, q2r, qd1r, qd2r]
// -----------------------------------------------------------------------------

/// y(xr) = [xr3, xr4, -w1^2 xr1, -w2^2 xr2].
template <typename Scalar>
Vector<Scalar> reference_flow(const Vector2<Scalar>& omega, const Vector<Scalar>& x_r) {
    detail::check_state(x_r);
    Vector<Scalar> out(4);
    out << x_r(2), x_r(3), -omega(0) * omega(0) * x_r(0), -omega(1) * omega(1) * x_r(1);
    return out;
}

template <typename Scalar>
ReferenceModel<Scalar> make_oscillator_reference(const Vector<Scalar>& x_r0,
                                                 const Vector2<Scalar>& omega) {
    detail::check_state(x_r0);
    return {x_r0, [omega](const Vector<Scalar>& x_r) { return reference_flow(omega, x_r); }};
}

}  // namespace ppadp

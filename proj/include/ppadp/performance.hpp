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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ppadp/errors.hpp"
#include "ppadp/types.hpp"

namespace ppadp {

/// Prescribed performance function rho(t) = (rho0 - rho_inf) exp(-decay t) + rho_inf
/// together with the scale alpha of the admissible band |e| < alpha rho(t).
template <typename Scalar>
struct PpfSpec {
    Scalar rho0{};
    Scalar rho_inf{};
    Scalar decay{};
    Scalar alpha{};
};

template <typename Scalar>
void validate(const PpfSpec<Scalar>& s) {
    if (!(s.rho_inf > Scalar(0))) throw std::invalid_argument("ppf: rho_inf must be positive");
    if (!(s.rho0 > s.rho_inf)) throw std::invalid_argument("ppf: rho0 must exceed rho_inf");
    if (!(s.decay > Scalar(0))) throw std::invalid_argument("ppf: decay rate must be positive");
    if (!(s.alpha > Scalar(0))) throw std::invalid_argument("ppf: alpha must be positive");
}

template <typename Scalar>
Scalar ppf_eval(const PpfSpec<Scalar>& s, Scalar t) {
    using std::exp;
    if (t < Scalar(0)) throw std::domain_error("ppf_eval: negative time");
    return (s.rho0 - s.rho_inf) * exp(-s.decay * t) + s.rho_inf;
}

/// How the reference coordinates enter their (loose) barrier terms.
enum class RefNormalization {
    Unscaled,   ///< delta_i = x_r,i
    PpfScaled,  ///< delta_i = x_r,i / rho_i(t)
};

template <typename Scalar>
struct ErrorBarrier {
    Scalar k{};  ///< risk weight
    PpfSpec<Scalar> ppf;
};

template <typename Scalar>
struct ReferenceBarrier {
    Scalar h{};     ///< risk weight
    Scalar beta{};  ///< bound on delta_i
};

/// Per-dimension log-barrier penalty
///   P = sum_i k_i log(a_i^2 / (a_i^2 - zeta_i^2)) + h_i log(b_i^2 / (b_i^2 - delta_i^2)),
/// with zeta_i = e_i / rho_i(t).
template <typename Scalar>
struct PenaltySpec {
    std::vector<ErrorBarrier<Scalar>> errors;
    std::vector<ReferenceBarrier<Scalar>> references;
    RefNormalization ref_normalization = RefNormalization::Unscaled;

    int n() const { return static_cast<int>(errors.size()); }
};

template <typename Scalar>
void validate(const PenaltySpec<Scalar>& s) {
    if (s.references.size() != s.errors.size()) {
        throw std::invalid_argument("penalty: reference terms must match error terms in count");
    }
    for (const auto& b : s.errors) {
        if (!(b.k >= Scalar(0))) throw std::invalid_argument("penalty: k must be nonnegative");
        validate(b.ppf);
    }
    for (const auto& b : s.references) {
        if (!(b.h >= Scalar(0))) throw std::invalid_argument("penalty: h must be nonnegative");
        if (!(b.beta > Scalar(0))) throw std::invalid_argument("penalty: beta must be positive");
    }
}

/// |e_i| / (alpha_i rho_i(t)); a value >= 1 means the band is left.
template <typename Scalar>
Vector<Scalar> constraint_margin(const PenaltySpec<Scalar>& s, const Vector<Scalar>& e, Scalar t) {
    using std::abs;
    if (e.size() != s.n()) throw DimensionError("constraint_margin: error dimension mismatch");
    Vector<Scalar> out(e.size());
    for (int i = 0; i < s.n(); ++i) {
        const auto& ppf = s.errors[i].ppf;
        out(i) = abs(e(i)) / (ppf.alpha * ppf_eval(ppf, t));
    }
    return out;
}

namespace detail {

// k log(a^2 / (a^2 - z^2)), written with log1p for accuracy near z = 0.
template <typename Scalar>
Scalar log_barrier(Scalar weight, Scalar bound, Scalar z) {
    using std::log1p;
    const Scalar ratio = (z / bound) * (z / bound);
    return -weight * log1p(-ratio);
}

}  // namespace detail

/// Barrier penalty; throws ConstraintViolation outside the open barrier domain.
template <typename Scalar>
Scalar penalty(const PenaltySpec<Scalar>& s, const Vector<Scalar>& e, const Vector<Scalar>& x_r, Scalar t) {
    using std::abs;
    if (e.size() != s.n() || x_r.size() != s.n()) {
        throw DimensionError("penalty: state dimension mismatch");
    }
    Scalar total(0);
    for (int i = 0; i < s.n(); ++i) {
        const auto& eb = s.errors[i];
        const Scalar rho = ppf_eval(eb.ppf, t);
        const Scalar zeta = e(i) / rho;
        const Scalar margin = abs(zeta) / eb.ppf.alpha;
        if (!(margin < Scalar(1))) throw ConstraintViolation(i, static_cast<double>(margin), false);
        total += detail::log_barrier(eb.k, eb.ppf.alpha, zeta);

        const auto& rb = s.references[i];
        const Scalar delta = s.ref_normalization == RefNormalization::PpfScaled ? x_r(i) / rho : x_r(i);
        const Scalar ref_margin = abs(delta) / rb.beta;
        if (!(ref_margin < Scalar(1))) throw ConstraintViolation(i, static_cast<double>(ref_margin), true);
        total += detail::log_barrier(rb.h, rb.beta, delta);
    }
    return total;
}

template <typename Scalar>
struct QuadraticCost {
    Matrix<Scalar> Q;
};

template <typename Scalar>
struct RiskSensitiveCost {
    PenaltySpec<Scalar> penalty;
};

/// Utility r = state_cost + mu^T R mu.
template <typename Scalar>
struct CostSpec {
    std::variant<QuadraticCost<Scalar>, RiskSensitiveCost<Scalar>> state_cost;
    Matrix<Scalar> R;

    bool risk_sensitive() const {
        return std::holds_alternative<RiskSensitiveCost<Scalar>>(state_cost);
    }
};

template <typename Scalar>
void validate(const CostSpec<Scalar>& c) {
    auto check_sym = [](const Matrix<Scalar>& A, const char* name, bool strict) {
        if (A.rows() != A.cols() || A.rows() == 0) {
            throw std::invalid_argument(std::string("cost: ") + name + " must be square");
        }
        if (!A.isApprox(A.transpose())) {
            throw std::invalid_argument(std::string("cost: ") + name + " must be symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(A);
        const Scalar lo = eig.eigenvalues().minCoeff();
        if (strict ? !(lo > Scalar(0)) : !(lo >= Scalar(0))) {
            throw std::invalid_argument(std::string("cost: ") + name +
                                        (strict ? " must be positive definite" : " must be positive semidefinite"));
        }
    };
    check_sym(c.R, "R", true);
    if (const auto* q = std::get_if<QuadraticCost<Scalar>>(&c.state_cost)) {
        check_sym(q->Q, "Q", false);
    } else {
        validate(std::get<RiskSensitiveCost<Scalar>>(c.state_cost).penalty);
    }
}

/// State part of the utility: e^T Q e, or the barrier penalty.
template <typename Scalar>
Scalar state_cost(const CostSpec<Scalar>& c, const Vector<Scalar>& e, const Vector<Scalar>& x_r, Scalar t) {
    if (const auto* q = std::get_if<QuadraticCost<Scalar>>(&c.state_cost)) {
        if (q->Q.rows() != e.size()) throw DimensionError("utility: Q does not match error dimension");
        return e.dot(q->Q * e);
    }
    return penalty(std::get<RiskSensitiveCost<Scalar>>(c.state_cost).penalty, e, x_r, t);
}

template <typename Scalar>
Scalar utility(const CostSpec<Scalar>& c, const Vector<Scalar>& e, const Vector<Scalar>& x_r,
               const Vector<Scalar>& mu, Scalar t) {
    if (c.R.rows() != mu.size()) throw DimensionError("utility: R does not match input dimension");
    return state_cost(c, e, x_r, t) + mu.dot(c.R * mu);
}

}  // namespace ppadp

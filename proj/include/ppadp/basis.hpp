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
#include <vector>

#include "ppadp/errors.hpp"
#include "ppadp/types.hpp"

namespace ppadp {

/// coefficient * prod_k eta[index_k]^exponent_k
template <typename Scalar>
struct Monomial {
    Scalar coefficient{1};
    std::vector<std::pair<int, int>> factors;  ///< (component index, exponent >= 1)

    int degree() const {
        int d = 0;
        for (const auto& [idx, p] : factors) d += p;
        return d;
    }
};

/// Polynomial value-function basis Phi(eta) over a `dim`-dimensional state.
template <typename Scalar>
struct BasisSpec {
    int dim = 0;
    std::vector<Monomial<Scalar>> terms;

    int size() const { return static_cast<int>(terms.size()); }
};

/// Every term must have degree >= 2 so that Phi(0) = 0 and grad Phi(0) = 0.
template <typename Scalar>
void validate(const BasisSpec<Scalar>& spec) {
    for (std::size_t j = 0; j < spec.terms.size(); ++j) {
        const auto& term = spec.terms[j];
        if (term.degree() < 2) {
            throw std::invalid_argument("basis term " + std::to_string(j + 1) + " has degree below 2");
        }
        for (const auto& [idx, p] : term.factors) {
            if (idx < 0 || idx >= spec.dim || p < 1) {
                throw std::invalid_argument("basis term " + std::to_string(j + 1) + " has an invalid factor");
            }
        }
    }
}

namespace detail {

template <typename Scalar>
Scalar ipow(Scalar base, int p) {
    Scalar r(1);
    for (int i = 0; i < p; ++i) r *= base;
    return r;
}

template <typename Scalar>
void check_basis_input(const BasisSpec<Scalar>& spec, const Vector<Scalar>& eta) {
    if (eta.size() != spec.dim) {
        throw DimensionError("basis expects a " + std::to_string(spec.dim) + "-vector, got " +
                             std::to_string(eta.size()));
    }
}

}  // namespace detail

template <typename Scalar>
Vector<Scalar> basis_eval(const BasisSpec<Scalar>& spec, const Vector<Scalar>& eta) {
    detail::check_basis_input(spec, eta);
    Vector<Scalar> phi(spec.size());
    for (int j = 0; j < spec.size(); ++j) {
        const auto& term = spec.terms[j];
        Scalar v = term.coefficient;
        for (const auto& [idx, p] : term.factors) v *= detail::ipow(eta(idx), p);
        phi(j) = v;
    }
    return phi;
}

/// Jacobian d Phi / d eta, one row per basis term.
template <typename Scalar>
Matrix<Scalar> basis_grad(const BasisSpec<Scalar>& spec, const Vector<Scalar>& eta) {
    detail::check_basis_input(spec, eta);
    Matrix<Scalar> J = Matrix<Scalar>::Zero(spec.size(), spec.dim);
    for (int j = 0; j < spec.size(); ++j) {
        const auto& term = spec.terms[j];
        for (std::size_t a = 0; a < term.factors.size(); ++a) {
            const auto [ia, pa] = term.factors[a];
            Scalar d = term.coefficient * Scalar(pa) * detail::ipow(eta(ia), pa - 1);
            for (std::size_t b = 0; b < term.factors.size(); ++b) {
                if (b != a) d *= detail::ipow(eta(term.factors[b].first), term.factors[b].second);
            }
            J(j, ia) += d;
        }
    }
    return J;
}

/// The 23-term basis for the two-link tracking problem on eta = [e1..e4, xr1..xr4]:
///   1/2 [e1^2, e2^2, 2 e1 e3, 2 e1 e4, 2 e2 e3, 2 e2 e4, e1^2 e2^2,
///        e_i^2 xr_j^2 for i = 1..4, j = 1..4].
template <typename Scalar>
BasisSpec<Scalar> manipulator_tracking_basis() {
    const Scalar half(0.5);
    BasisSpec<Scalar> spec;
    spec.dim = 8;
    auto& t = spec.terms;
    t.push_back({half, {{0, 2}}});
    t.push_back({half, {{1, 2}}});
    t.push_back({Scalar(1), {{0, 1}, {2, 1}}});
    t.push_back({Scalar(1), {{0, 1}, {3, 1}}});
    t.push_back({Scalar(1), {{1, 1}, {2, 1}}});
    t.push_back({Scalar(1), {{1, 1}, {3, 1}}});
    t.push_back({half, {{0, 2}, {1, 2}}});
    for (int i = 0; i < 4; ++i) {
        for (int j = 4; j < 8; ++j) t.push_back({half, {{i, 2}, {j, 2}}});
    }
    return spec;
}

}  // namespace ppadp

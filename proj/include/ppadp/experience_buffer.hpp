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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ppadp/errors.hpp"
#include "ppadp/types.hpp"

namespace ppadp {

enum class BufferDecision { Accepted, Replaced, Rejected };

/// Fixed-capacity store of recorded (Y_l, Theta_l) pairs for replay.
///
/// Entries are kept as columns of a stacked regressor matrix B. Selection
/// aims at rank(B B^T) = N: while filling, a candidate is kept if it raises
/// the numerical rank or the smallest singular value by `min_sv_gain`; once
/// full, it replaces the entry whose substitution maximizes the smallest
/// singular value, if that is an improvement. Targets are raw utilities, so
/// replayed Bellman errors are always evaluated against current weights.
template <typename Scalar>
class ExperienceBuffer {
public:
    struct Options {
        int capacity = 25;
        Scalar rank_tol = Scalar(1e-8);    ///< relative to the largest singular value
        Scalar min_sv_gain = Scalar(1.01); ///< required improvement factor
    };

    ExperienceBuffer() : ExperienceBuffer(0, Options{}) {}

    ExperienceBuffer(int regressor_dim, Options opts)
        : dim_(regressor_dim), opts_(opts), Y_(regressor_dim, 0), theta_(0) {
        if (opts_.capacity < 1) throw std::invalid_argument("experience buffer capacity must be positive");
        if (!(opts_.min_sv_gain >= Scalar(1))) throw std::invalid_argument("min_sv_gain must be >= 1");
    }

    int dim() const { return dim_; }
    int capacity() const { return opts_.capacity; }
    int size() const { return static_cast<int>(Y_.cols()); }
    bool full() const { return size() >= capacity(); }
    const Options& options() const { return opts_; }

    /// Stacked regressors, one column per entry.
    const Matrix<Scalar>& regressors() const { return Y_; }
    const Vector<Scalar>& targets() const { return theta_; }

    /// Smallest of the min(N, size) singular values of the stacked regressors.
    Scalar min_sv() const { return min_sv_; }
    int rank() const { return rank_; }

    /// lambda_min(B B^T); zero until N independent regressors are stored.
    Scalar lambda_min() const { return size() >= dim_ && rank_ == dim_ ? min_sv_ * min_sv_ : Scalar(0); }

    BufferDecision record(const Vector<Scalar>& Y, Scalar theta) {
        if (Y.size() != dim_) throw DimensionError("experience buffer: regressor dimension mismatch");
        if (!all_finite(Y) || !std::isfinite(static_cast<double>(theta))) return BufferDecision::Rejected;

        if (!full()) {
            Matrix<Scalar> cand(dim_, size() + 1);
            cand << Y_, Y;
            const Score s = score(cand);
            if (s.rank > rank_ || (s.rank == rank_ && s.min_sv > opts_.min_sv_gain * min_sv_)) {
                Y_ = std::move(cand);
                theta_.conservativeResize(theta_.size() + 1);
                theta_(theta_.size() - 1) = theta;
                set(s);
                return BufferDecision::Accepted;
            }
            return BufferDecision::Rejected;
        }

        int best = -1;
        Score best_score{rank_, min_sv_};
        Matrix<Scalar> cand = Y_;
        for (int j = 0; j < size(); ++j) {
            cand.col(j) = Y;
            const Score s = score(cand);
            if (better(s, best_score)) {
                best = j;
                best_score = s;
            }
            cand.col(j) = Y_.col(j);
        }
        if (best < 0 || !improves(best_score)) return BufferDecision::Rejected;
        Y_.col(best) = Y;
        theta_(best) = theta;
        set(best_score);
        return BufferDecision::Replaced;
    }

private:
    struct Score {
        int rank;
        Scalar min_sv;
    };

    static bool better(const Score& a, const Score& b) {
        return a.rank > b.rank || (a.rank == b.rank && a.min_sv > b.min_sv);
    }

    bool improves(const Score& s) const {
        return s.rank > rank_ || (s.rank == rank_ && s.min_sv > opts_.min_sv_gain * min_sv_);
    }

    Score score(const Matrix<Scalar>& B) const {
        if (B.cols() == 0) return {0, Scalar(0)};
        Eigen::JacobiSVD<Matrix<Scalar>> svd(B);
        const auto& sv = svd.singularValues();  // descending
        const Scalar cutoff = opts_.rank_tol * sv(0);
        int r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > cutoff) ++r;
        }
        return {r, sv(sv.size() - 1)};
    }

    void set(const Score& s) {
        rank_ = s.rank;
        min_sv_ = s.min_sv;
    }

    int dim_;
    Options opts_;
    Matrix<Scalar> Y_;
    Vector<Scalar> theta_;
    int rank_ = 0;
    Scalar min_sv_{0};
};

}  // namespace ppadp

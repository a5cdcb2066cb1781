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
#include <string>
#include <vector>

#include "ppadp/critic.hpp"

namespace ppadp {

template <typename Scalar>
struct SimConfig {
    Scalar dt = Scalar(1e-3);
    Scalar t_end = Scalar(80);
    Scalar record_dt = Scalar(1e-2);  ///< log cadence
    Scalar buffer_dt = Scalar(1e-1);  ///< experience-candidate cadence
};

namespace detail {

template <typename Scalar>
long steps_per(Scalar interval, Scalar dt) {
    using std::abs;
    using std::llround;
    const long k = llround(static_cast<double>(interval / dt));
    if (k < 1 || abs(static_cast<double>(interval) - k * static_cast<double>(dt)) >
                     1e-9 * static_cast<double>(interval)) {
        return -1;
    }
    return k;
}

}  // namespace detail

template <typename Scalar>
void validate(const SimConfig<Scalar>& c) {
    if (!(c.dt > Scalar(0))) throw std::invalid_argument("simulation: dt must be positive");
    if (!(c.t_end >= Scalar(0))) throw std::invalid_argument("simulation: t_end must be nonnegative");
    if (detail::steps_per(c.record_dt, c.dt) < 1) {
        throw std::invalid_argument("simulation: record_dt must be a positive integer multiple of dt");
    }
    if (detail::steps_per(c.buffer_dt, c.dt) < 1) {
        throw std::invalid_argument("simulation: buffer_dt must be a positive integer multiple of dt");
    }
}

/// Everything the closed loop needs besides its evolving state.
///
/// `monitor` supplies the performance bands used for margins; it is the
/// same specification the risk-sensitive cost uses, but it is also applied
/// (for logging only) in quadratic-cost runs.
template <typename Scalar>
struct ClosedLoopModel {
    PlantModel<Scalar> plant;
    ReferenceModel<Scalar> reference;
    CostSpec<Scalar> cost;
    BasisSpec<Scalar> basis;
    PenaltySpec<Scalar> monitor;
};

template <typename Scalar>
struct ClosedLoopState {
    Scalar t{};
    Vector<Scalar> x;
    Vector<Scalar> x_r;
    CriticState<Scalar> critic;
};

/// Time derivative of (x, x_r, W) together with the signals that produced it.
template <typename Scalar>
struct CoupledDerivative {
    Vector<Scalar> x_dot;
    Vector<Scalar> x_r_dot;
    Vector<Scalar> W_dot;
    Vector<Scalar> u;
    Vector<Scalar> mu;
    Vector<Scalar> nu;
    RegressionPoint<Scalar> sample;
};

/// Evaluates u = mu_hat + nu, the plant and reference flows, and the weight
/// update at one consistent (t, x, x_r, W). The buffer is read, never written.
template <typename Scalar>
CoupledDerivative<Scalar> coupled_derivative(const ClosedLoopModel<Scalar>& model, Scalar t,
                                             const Vector<Scalar>& x, const Vector<Scalar>& x_r,
                                             const Vector<Scalar>& W, const CriticGains<Scalar>& gains,
                                             const ExperienceBuffer<Scalar>& buffer) {
    const auto eta = augment(x, x_r);
    CoupledDerivative<Scalar> d;
    d.nu = steady_state_control(model.plant, model.reference, x_r);
    d.mu = approx_control(W, model.basis, model.plant, model.cost.R, eta);
    d.u = total_control(d.mu, d.nu);
    d.x_dot = model.plant.flow(x, d.u);
    d.x_r_dot = model.reference.flow(x_r);
    d.sample = regression_point(model.plant, model.reference, model.cost, model.basis, eta, d.mu, t);
    d.W_dot = weight_derivative(gains, buffer, W, d.sample.Y, d.sample.theta);
    return d;
}

template <typename Scalar>
CoupledDerivative<Scalar> coupled_derivative(const ClosedLoopModel<Scalar>& model,
                                             const ClosedLoopState<Scalar>& s) {
    return coupled_derivative(model, s.t, s.x, s.x_r, s.critic.W, s.critic.gains, s.critic.buffer);
}

/// One classical Runge-Kutta step of the coupled (x, x_r, W) system.
template <typename Scalar>
ClosedLoopState<Scalar> rk4_step(const ClosedLoopModel<Scalar>& model, const ClosedLoopState<Scalar>& s,
                                 Scalar dt) {
    if (!(dt > Scalar(0))) throw std::invalid_argument("rk4_step: dt must be positive");
    const Eigen::Index n = s.x.size();
    const Eigen::Index N = s.critic.W.size();

    Vector<Scalar> z(2 * n + N);
    z << s.x, s.x_r, s.critic.W;

    auto deriv = [&](Scalar t, const Vector<Scalar>& zz) {
        if (!all_finite(zz)) {
            throw DivergenceError("non-finite stage state in step from t = " +
                                  std::to_string(static_cast<double>(s.t)));
        }
        const auto d = coupled_derivative(model, t, Vector<Scalar>(zz.head(n)), Vector<Scalar>(zz.segment(n, n)),
                                          Vector<Scalar>(zz.tail(N)), s.critic.gains, s.critic.buffer);
        Vector<Scalar> dz(zz.size());
        dz << d.x_dot, d.x_r_dot, d.W_dot;
        return dz;
    };

    const Scalar half = dt / Scalar(2);
    const Vector<Scalar> k1 = deriv(s.t, z);
    const Vector<Scalar> k2 = deriv(s.t + half, z + half * k1);
    const Vector<Scalar> k3 = deriv(s.t + half, z + half * k2);
    const Vector<Scalar> k4 = deriv(s.t + dt, z + dt * k3);
    const Vector<Scalar> next = z + (dt / Scalar(6)) * (k1 + Scalar(2) * (k2 + k3) + k4);

    if (!all_finite(next)) {
        throw DivergenceError("non-finite state after step from t = " + std::to_string(static_cast<double>(s.t)));
    }

    ClosedLoopState<Scalar> out{s.t + dt, next.head(n), next.segment(n, n), s.critic};
    out.critic.W = next.tail(N);
    return out;
}

template <typename Scalar>
struct LogRow {
    Scalar t{};
    Vector<Scalar> x, x_r, e, u, mu, nu, W, margins;
    Scalar utility{};
    Scalar min_sv{};
};

/// Time-indexed closed-loop record.
template <typename Scalar>
struct TrajectoryLog {
    std::vector<LogRow<Scalar>> rows;

    bool empty() const { return rows.empty(); }
    std::size_t size() const { return rows.size(); }
};

enum class RunStatus { Completed, ConstraintViolated, Diverged };

inline const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "completed";
        case RunStatus::ConstraintViolated: return "constraint-violated";
        case RunStatus::Diverged: return "diverged";
    }
    return "unknown";
}

template <typename Scalar>
struct ScenarioResult {
    TrajectoryLog<Scalar> log;
    ClosedLoopState<Scalar> final_state;
    RunStatus status = RunStatus::Completed;
    std::string diagnostic;  ///< empty on success
    long buffer_accepts = 0;
    long buffer_replacements = 0;
    long steps = 0;

    bool ok() const { return status == RunStatus::Completed; }
};

template <typename Scalar>
LogRow<Scalar> make_log_row(const ClosedLoopModel<Scalar>& model, const ClosedLoopState<Scalar>& s,
                            const CoupledDerivative<Scalar>& d) {
    LogRow<Scalar> row;
    row.t = s.t;
    row.x = s.x;
    row.x_r = s.x_r;
    row.e = s.x - s.x_r;
    row.u = d.u;
    row.mu = d.mu;
    row.nu = d.nu;
    row.W = s.critic.W;
    row.margins = constraint_margin(model.monitor, row.e, s.t);
    row.utility = d.sample.theta;
    row.min_sv = s.critic.buffer.min_sv();
    return row;
}

/// Integrates the closed loop from (x0, reference.x_r0, W0) to t_end.
///
/// Every buffer_dt the current regression sample is offered to the buffer;
/// every record_dt a row is logged. Risk-sensitive runs abort when a margin
/// reaches 1; any run aborts on non-finite state. Aborted runs keep the
/// partial log.
template <typename Scalar>
ScenarioResult<Scalar> run_scenario(const SimConfig<Scalar>& config, const ClosedLoopModel<Scalar>& model,
                                    const Vector<Scalar>& x0, CriticState<Scalar> critic0) {
    validate(config);
    const long record_every = detail::steps_per(config.record_dt, config.dt);
    const long buffer_every = detail::steps_per(config.buffer_dt, config.dt);
    const long total_steps = std::llround(std::floor(static_cast<double>(config.t_end / config.dt) + 1e-9));
    const bool abort_on_violation = model.cost.risk_sensitive();

    ScenarioResult<Scalar> result;
    ClosedLoopState<Scalar> s{Scalar(0), x0, model.reference.x_r0, std::move(critic0)};

    try {
        for (long k = 0;; ++k) {
            s.t = Scalar(k) * config.dt;

            if (abort_on_violation) {
                const Vector<Scalar> margins = constraint_margin(model.monitor, Vector<Scalar>(s.x - s.x_r), s.t);
                Eigen::Index worst;
                const Scalar m = margins.maxCoeff(&worst);
                if (!(m < Scalar(1))) throw ConstraintViolation(static_cast<int>(worst), static_cast<double>(m), false);
            }

            if (k % buffer_every == 0) {
                const auto d = coupled_derivative(model, s);
                switch (s.critic.buffer.record(d.sample.Y, d.sample.theta)) {
                    case BufferDecision::Accepted: ++result.buffer_accepts; break;
                    case BufferDecision::Replaced: ++result.buffer_replacements; break;
                    case BufferDecision::Rejected: break;
                }
            }
            if (k % record_every == 0) {
                result.log.rows.push_back(make_log_row(model, s, coupled_derivative(model, s)));
            }
            if (k == total_steps) break;
            s = rk4_step(model, s, config.dt);
            result.steps = k + 1;
        }
    } catch (const ConstraintViolation& ex) {
        result.status = RunStatus::ConstraintViolated;
        result.diagnostic = std::string(ex.what()) + " at t = " + std::to_string(static_cast<double>(s.t));
    } catch (const DivergenceError& ex) {
        result.status = RunStatus::Diverged;
        result.diagnostic = ex.what();
    }
    result.final_state = std::move(s);
    return result;
}

}  // namespace ppadp

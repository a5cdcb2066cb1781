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


#include "ppadp/experiments/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace ppadp::experiments {

namespace {

template <typename Fn>
double window_mean(const TrajectoryLog<double>& log, double t0, double t1, Fn value) {
    double sum = 0;
    int count = 0;
    for (const auto& r : log.rows) {
        if (r.t < t0 || r.t > t1) continue;
        const double v = value(r);
        if (!std::isfinite(v)) continue;
        sum += v;
        ++count;
    }
    return count ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

MetricsReport emit_metrics(const TrajectoryLog<double>& log, const ScenarioPreset& p, const MetricsOptions& opts) {
    if (log.empty()) throw std::invalid_argument("emit_metrics: empty log");

    MetricsReport m;
    m.scenario = p.name;
    m.rows = log.size();
    m.t_first = log.rows.front().t;
    m.t_last = log.rows.back().t;

    const auto& last = log.rows.back();
    const Vectord& W_end = last.W;
    m.weight_norm_final = W_end.norm();
    const double eps = opts.weight_eps_rel * m.weight_norm_final;
    double sup = 0;
    m.weight_convergence_time = m.t_last;
    for (auto it = log.rows.rbegin(); it != log.rows.rend(); ++it) {
        const double d = (it->W - W_end).norm();
        sup = std::max(sup, d);
        if (sup > eps) break;
        m.weight_convergence_time = it->t;
    }
    double tail = 0;
    for (const auto& r : log.rows) {
        if (r.t >= m.t_last - opts.tail_window) tail = std::max(tail, (r.W - W_end).norm());
    }
    m.weight_tail_change = m.weight_norm_final > 0 ? tail / m.weight_norm_final
                                                   : (tail > 0 ? std::numeric_limits<double>::infinity() : 0.0);

    m.max_margin = Vectord::Zero(last.margins.size());
    for (const auto& r : log.rows) {
        m.max_margin = m.max_margin.cwiseMax(r.margins);
        if (r.margins.maxCoeff() >= 1.0) ++m.violation_count;
        m.max_error_norm = std::max(m.max_error_norm, r.e.norm());
    }

    auto enorm = [](const LogRow<double>& r) { return r.e.norm(); };
    m.final_error_norm = window_mean(log, m.t_last - opts.final_window, m.t_last, enorm);
    m.early_error_mean = window_mean(log, m.t_first, m.t_first + opts.compare_window, enorm);
    m.late_error_mean = window_mean(log, m.t_last - opts.compare_window, m.t_last, enorm);

    const auto model = make_model(p);
    auto hjb = [&](const LogRow<double>& r) {
        try {
            return std::abs(hamiltonian_residual(r.W, model.basis, model.plant, model.reference, model.cost,
                                                 augment(r.x, r.x_r), r.t));
        } catch (const ConstraintViolation&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    m.hjb_residual_early = window_mean(log, m.t_first, m.t_first + opts.compare_window, hjb);
    m.hjb_residual_late = window_mean(log, m.t_last - opts.compare_window, m.t_last, hjb);

    m.buffer_min_sv = last.min_sv;
    m.basis_size = static_cast<int>(W_end.size());
    return m;
}

MetricsReport emit_metrics(const ScenarioResult<double>& result, const ScenarioPreset& p, double runtime_s,
                           const MetricsOptions& opts) {
    MetricsReport m = emit_metrics(result.log, p, opts);
    m.status = to_string(result.status);
    m.diagnostic = result.diagnostic;
    const auto& buffer = result.final_state.critic.buffer;
    m.buffer_min_sv = buffer.min_sv();
    m.buffer_lambda_min = buffer.lambda_min();
    m.buffer_rank = buffer.rank();
    m.buffer_size = buffer.size();
    m.buffer_accepts = result.buffer_accepts;
    m.buffer_replacements = result.buffer_replacements;
    m.steps = result.steps;
    m.runtime_s = runtime_s;
    return m;
}

void write_metrics_text(std::ostream& out, const MetricsReport& r) {
    auto line = [&](const char* key, const std::string& value) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-26s %s\n", key, value.c_str());
        out << buf;
    };
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };
    std::string margins;
    for (Eigen::Index i = 0; i < r.max_margin.size(); ++i) margins += (i ? " " : "") + num(r.max_margin(i));

    line("scenario", r.scenario);
    line("status", r.status);
    if (!r.diagnostic.empty()) line("diagnostic", r.diagnostic);
    line("logged rows", std::to_string(r.rows));
    line("t range [s]", num(r.t_first) + " .. " + num(r.t_last));
    line("weight convergence [s]", num(r.weight_convergence_time));
    line("weight tail change", num(r.weight_tail_change));
    line("|W(t_end)|", num(r.weight_norm_final));
    line("violation count", std::to_string(r.violation_count));
    line("max margin", margins);
    line("final |e| (mean)", num(r.final_error_norm));
    line("early |e| (mean)", num(r.early_error_mean));
    line("late |e| (mean)", num(r.late_error_mean));
    line("max |e|", num(r.max_error_norm));
    line("HJB residual early", num(r.hjb_residual_early));
    line("HJB residual late", num(r.hjb_residual_late));
    line("buffer size", std::to_string(r.buffer_size));
    line("buffer rank", std::to_string(r.buffer_rank) + " / " + std::to_string(r.basis_size));
    line("buffer min sv", num(r.buffer_min_sv));
    line("buffer lambda_min", num(r.buffer_lambda_min));
    line("buffer accepts", std::to_string(r.buffer_accepts));
    line("buffer replacements", std::to_string(r.buffer_replacements));
    line("steps", std::to_string(r.steps));
    line("runtime [s]", num(r.runtime_s));
}

void write_metrics_json(std::ostream& out, const MetricsReport& r) {
    // JSON has no NaN/inf; those become null.
    using json = nlohmann::ordered_json;
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json margins = json::array();
    for (Eigen::Index i = 0; i < r.max_margin.size(); ++i) margins.push_back(num(r.max_margin(i)));

    json j;
    j["scenario"] = r.scenario;
    j["status"] = r.status;
    j["diagnostic"] = r.diagnostic;
    j["rows"] = r.rows;
    j["t_first"] = num(r.t_first);
    j["t_last"] = num(r.t_last);
    j["weight_convergence_time"] = num(r.weight_convergence_time);
    j["weight_tail_change"] = num(r.weight_tail_change);
    j["weight_norm_final"] = num(r.weight_norm_final);
    j["violation_count"] = r.violation_count;
    j["max_margin"] = margins;
    j["final_error_norm"] = num(r.final_error_norm);
    j["early_error_mean"] = num(r.early_error_mean);
    j["late_error_mean"] = num(r.late_error_mean);
    j["max_error_norm"] = num(r.max_error_norm);
    j["hjb_residual_early"] = num(r.hjb_residual_early);
    j["hjb_residual_late"] = num(r.hjb_residual_late);
    j["buffer"] = {{"size", r.buffer_size},          {"rank", r.buffer_rank},
                   {"basis_size", r.basis_size},     {"min_sv", num(r.buffer_min_sv)},
                   {"lambda_min", num(r.buffer_lambda_min)}, {"accepts", r.buffer_accepts},
                   {"replacements", r.buffer_replacements}};
    j["steps"] = r.steps;
    j["runtime_s"] = num(r.runtime_s);
    out << j.dump(2) << '\n';
}

}  // namespace ppadp::experiments

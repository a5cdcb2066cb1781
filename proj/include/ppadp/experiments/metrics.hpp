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

#include <iosfwd>
#include <string>

#include "ppadp/experiments/scenario.hpp"

namespace ppadp::experiments {

struct MetricsOptions {
    double weight_eps_rel = 0.01;  ///< eps_w as a fraction of |W(t_end)|
    double final_window = 5.0;     ///< s, for final_error_norm
    double compare_window = 10.0;  ///< s, early/late tracking windows
    double tail_window = 30.0;     ///< s, for weight_tail_change
};

/// Summary statistics of one closed-loop run.
struct MetricsReport {
    std::string scenario;
    std::string status = "completed";
    std::string diagnostic;
    std::size_t rows = 0;
    double t_first = 0;
    double t_last = 0;

    /// First logged t with sup_{tau >= t} |W(tau) - W(t_last)| <= eps_w.
    double weight_convergence_time = 0;
    /// sup over the tail window of |W(t) - W(t_last)| / |W(t_last)|.
    double weight_tail_change = 0;
    double weight_norm_final = 0;

    int violation_count = 0;  ///< rows with any margin >= 1
    Vectord max_margin;

    double final_error_norm = 0;  ///< mean |e| over the final window
    double early_error_mean = 0;  ///< mean |e| over the first compare window
    double late_error_mean = 0;   ///< mean |e| over the last compare window
    double max_error_norm = 0;

    /// Mean |HJB residual| under the logged weights over the same windows.
    double hjb_residual_early = 0;
    double hjb_residual_late = 0;

    double buffer_min_sv = 0;
    double buffer_lambda_min = 0;
    int buffer_rank = 0;
    int buffer_size = 0;
    int basis_size = 0;
    long buffer_accepts = 0;
    long buffer_replacements = 0;

    long steps = 0;
    double runtime_s = 0;
};

/// Log-only metrics; buffer statistics come from the last row.
MetricsReport emit_metrics(const TrajectoryLog<double>& log, const ScenarioPreset& p,
                           const MetricsOptions& opts = {});

MetricsReport emit_metrics(const ScenarioResult<double>& result, const ScenarioPreset& p, double runtime_s,
                           const MetricsOptions& opts = {});

void write_metrics_text(std::ostream& out, const MetricsReport& r);
void write_metrics_json(std::ostream& out, const MetricsReport& r);

}  // namespace ppadp::experiments

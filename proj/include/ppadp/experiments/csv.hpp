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
#include <vector>

#include "ppadp/simulation.hpp"

namespace ppadp::experiments {

/// Column names of the trajectory CSV for the given dimensions, in order:
/// t, x, xr, e, u, mu, nu, W, margin, utility, min_sv.
std::vector<std::string> trajectory_header(int n, int m, int N);

/// Values are written with 17 significant digits so a read-back is exact.
void write_trajectory_csv(std::ostream& out, const TrajectoryLog<double>& log);
TrajectoryLog<double> read_trajectory_csv(std::istream& in);

/// t, W1..WN.
void write_weights_csv(std::ostream& out, const TrajectoryLog<double>& log);

struct LabeledLog {
    std::string label;
    const TrajectoryLog<double>* log;
};

/// Side-by-side margins of several runs on the longest run's time grid.
/// Per run: <label>_margin1..n and <label>_outside (1 when any margin >= 1).
/// Cells after a run ended are left empty.
void write_margins_csv(std::ostream& out, const std::vector<LabeledLog>& runs);

}  // namespace ppadp::experiments

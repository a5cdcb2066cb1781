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

namespace ppadp::experiments {

/// Exit status of run_cli.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,      ///< bad flags or configuration
    kExitRunFailed = 2,  ///< a run aborted on a constraint violation or diverged
};

/// Entry point of the `ppadp` command line tool.
///
///   --scenario NAME   otcp-quadratic | pp-otcp (default pp-otcp)
///   --config PATH     YAML config; replaces --scenario
///   --out-dir DIR     output directory (default ./out)
///   --t-end S, --dt S override the simulation horizon / step
///   --compare-ppf     run the quadratic and risk-sensitive costs from the
///                     same initial conditions and write a joint margins CSV
///   --parallel        run comparison episodes concurrently
///   --print-config    print the resolved config and exit
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppadp::experiments

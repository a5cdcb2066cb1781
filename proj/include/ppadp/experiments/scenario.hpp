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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ppadp/simulation.hpp"

namespace ppadp::experiments {

/// Bad configuration input; the message starts with the offending key path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CostVariant { Quadratic, RiskSensitive };

/// Full parameter tree of one closed-loop experiment.
struct ScenarioPreset {
    std::string name;

    ManipulatorParams<double> plant;

    Vectord reference_x0;
    Vector2<double> reference_omega;

    CostVariant cost_variant = CostVariant::Quadratic;
    Vectord Q_diag;
    Vectord R_diag;

    // Performance bands (always monitored) and barrier weights, per dimension.
    Vectord rho0, rho_inf, decay, alpha, k, h, beta;
    RefNormalization ref_normalization = RefNormalization::Unscaled;

    std::string basis = "manipulator-23";
    double gamma = 1.0;  ///< Gamma = gamma * I
    double k_c = 0.0;
    double k_e = 0.0;
    bool normalize = false;

    ExperienceBuffer<double>::Options buffer;

    SimConfig<double> sim;

    Vectord x0;
    Vectord W0;
};

/// Names accepted by `preset()`.
std::vector<std::string> preset_names();

/// The built-in two-link studies: "otcp-quadratic" and "pp-otcp".
ScenarioPreset preset(std::string_view name);

/// Checks every invariant; throws ConfigError naming the key.
void validate(const ScenarioPreset& p);

/// Parses the YAML config format. A named preset may be partially
/// overridden; `name: custom` requires every key.
ScenarioPreset parse_config_string(const std::string& text);
ScenarioPreset parse_config(const std::filesystem::path& path);

/// Canonical YAML rendering accepted by parse_config_string.
std::string serialize(const ScenarioPreset& p);

BasisSpec<double> make_basis(const std::string& name);
PenaltySpec<double> make_penalty(const ScenarioPreset& p);
CostSpec<double> make_cost(const ScenarioPreset& p);
ClosedLoopModel<double> make_model(const ScenarioPreset& p);
CriticState<double> make_critic(const ScenarioPreset& p);

inline ScenarioResult<double> run(const ScenarioPreset& p) {
    return run_scenario(p.sim, make_model(p), p.x0, make_critic(p));
}

}  // namespace ppadp::experiments

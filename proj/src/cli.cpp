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


#include "ppadp/experiments/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ppadp/experiments/csv.hpp"
#include "ppadp/experiments/metrics.hpp"

namespace ppadp::experiments {

namespace {

namespace fs = std::filesystem;

struct Outcome {
    ScenarioPreset preset;
    ScenarioResult<double> result;
    double runtime_s = 0;
};

Outcome timed_run(const ScenarioPreset& p) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{p, run(p), 0};
    o.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return o;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& write) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    write(f);
    if (!f) throw std::runtime_error("error while writing " + path.string());
}

MetricsReport emit(const Outcome& o, const fs::path& dir, std::ostream& out) {
    const std::string stem = o.preset.name;
    write_file(dir / (stem + "_trajectory.csv"), [&](std::ostream& f) { write_trajectory_csv(f, o.result.log); });
    write_file(dir / (stem + "_weights.csv"), [&](std::ostream& f) { write_weights_csv(f, o.result.log); });
    const auto report = emit_metrics(o.result, o.preset, o.runtime_s);
    write_file(dir / (stem + "_metrics.txt"), [&](std::ostream& f) { write_metrics_text(f, report); });
    write_file(dir / (stem + "_metrics.json"), [&](std::ostream& f) { write_metrics_json(f, report); });
    write_metrics_text(out, report);
    return report;
}

ScenarioPreset with_cost(ScenarioPreset p, CostVariant v) {
    p.cost_variant = v;
    p.name = v == CostVariant::Quadratic ? "otcp-quadratic" : "pp-otcp";
    return p;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Critic-learning tracking control of a two-link manipulator with prescribed performance"};
    std::string scenario = "pp-otcp";
    std::string config_path;
    std::string out_dir = "out";
    std::optional<double> t_end;
    std::optional<double> dt;
    bool compare = false;
    bool parallel = false;
    bool print_config = false;

    app.add_option("--scenario", scenario, "Built-in preset")
        ->check(CLI::IsMember(preset_names()))
        ->capture_default_str();
    auto* config_opt = app.add_option("--config", config_path, "YAML config file")->check(CLI::ExistingFile);
    app.get_option("--scenario")->excludes(config_opt);
    app.add_option("--out-dir", out_dir, "Directory for CSV and metrics output")->capture_default_str();
    app.add_option("--t-end", t_end, "Simulation horizon [s]");
    app.add_option("--dt", dt, "Integration step [s]");
    app.add_flag("--compare-ppf", compare, "Run both cost variants and write a joint margins CSV");
    app.add_flag("--parallel", parallel, "Run comparison episodes concurrently");
    app.add_flag("--print-config", print_config, "Print the resolved config and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    ScenarioPreset base;
    try {
        base = config_path.empty() ? preset(scenario) : parse_config(config_path);
        if (t_end) base.sim.t_end = *t_end;
        if (dt) base.sim.dt = *dt;
        validate(base);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (print_config) {
        out << serialize(base);
        return kExitOk;
    }

    std::vector<ScenarioPreset> presets;
    if (compare) {
        presets = {with_cost(base, CostVariant::Quadratic), with_cost(base, CostVariant::RiskSensitive)};
    } else {
        presets = {base};
    }

    try {
        const fs::path dir(out_dir);
        fs::create_directories(dir);

        std::vector<Outcome> outcomes;
        if (parallel && presets.size() > 1) {
            std::vector<std::future<Outcome>> jobs;
            for (const auto& p : presets) jobs.push_back(std::async(std::launch::async, timed_run, p));
            for (auto& j : jobs) outcomes.push_back(j.get());
        } else {
            for (const auto& p : presets) outcomes.push_back(timed_run(p));
        }

        bool failed = false;
        for (const auto& o : outcomes) {
            if (outcomes.size() > 1) out << '\n';
            emit(o, dir, out);
            if (!o.result.ok()) {
                err << o.preset.name << ": " << to_string(o.result.status) << ": " << o.result.diagnostic << '\n';
                failed = true;
            }
        }
        if (compare) {
            std::vector<LabeledLog> logs;
            for (const auto& o : outcomes) logs.push_back({o.preset.name, &o.result.log});
            write_file(dir / "margins_comparison.csv", [&](std::ostream& f) { write_margins_csv(f, logs); });
        }
        return failed ? kExitRunFailed : kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRunFailed;
    }
}

}  // namespace ppadp::experiments

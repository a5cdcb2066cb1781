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


#include "ppadp/experiments/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace ppadp::experiments {

namespace {

constexpr int kStateDim = 4;
constexpr int kInputDim = 2;

Vectord vec(std::initializer_list<double> v) {
    Vectord out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_vector(const Vectord& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v(i));
    }
    return s + "]";
}

// One leaf of the parameter tree: how to read it from YAML and render it back.
struct Field {
    std::string section;
    std::string key;
    std::function<void(const YAML::Node&, const std::string&)> read;
    std::function<std::string()> write;
};

template <typename T>
T convert(const YAML::Node& node, const std::string& path, const char* what) {
    if (!node.IsScalar()) throw ConfigError(path + ": expected " + what);
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(path + ": expected " + what + ", got '" + node.Scalar() + "'");
    }
}

Field number(std::string section, std::string key, double& ref) {
    return {std::move(section), std::move(key),
            [&ref](const YAML::Node& n, const std::string& path) { ref = convert<double>(n, path, "a number"); },
            [&ref] { return format_double(ref); }};
}

Field integer(std::string section, std::string key, int& ref) {
    return {std::move(section), std::move(key),
            [&ref](const YAML::Node& n, const std::string& path) { ref = convert<int>(n, path, "an integer"); },
            [&ref] { return std::to_string(ref); }};
}

Field boolean(std::string section, std::string key, bool& ref) {
    return {std::move(section), std::move(key),
            [&ref](const YAML::Node& n, const std::string& path) { ref = convert<bool>(n, path, "true or false"); },
            [&ref] { return std::string(ref ? "true" : "false"); }};
}

Field vector(std::string section, std::string key, Vectord& ref) {
    return {std::move(section), std::move(key),
            [&ref](const YAML::Node& n, const std::string& path) {
                if (!n.IsSequence()) throw ConfigError(path + ": expected a list of numbers");
                Vectord v(static_cast<Eigen::Index>(n.size()));
                for (std::size_t i = 0; i < n.size(); ++i) {
                    v(static_cast<Eigen::Index>(i)) =
                        convert<double>(n[i], path + "[" + std::to_string(i) + "]", "a number");
                }
                ref = std::move(v);
            },
            [&ref] { return format_vector(ref); }};
}

template <typename Enum>
Field choice(std::string section, std::string key, Enum& ref, std::vector<std::pair<std::string, Enum>> options) {
    auto write = [&ref, options] {
        for (const auto& [name, value] : options) {
            if (value == ref) return name;
        }
        return std::string("?");
    };
    auto read = [&ref, options](const YAML::Node& n, const std::string& path) {
        const auto s = convert<std::string>(n, path, "a string");
        for (const auto& [name, value] : options) {
            if (name == s) {
                ref = value;
                return;
            }
        }
        std::string allowed;
        for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : ", ") + name;
        throw ConfigError(path + ": unknown value '" + s + "' (expected one of: " + allowed + ")");
    };
    return {std::move(section), std::move(key), read, write};
}

Field text(std::string section, std::string key, std::string& ref) {
    return {std::move(section), std::move(key),
            [&ref](const YAML::Node& n, const std::string& path) { ref = convert<std::string>(n, path, "a string"); },
            [&ref] { return ref; }};
}

std::vector<Field> fields(ScenarioPreset& p) {
    return {
        number("plant", "p1", p.plant.p1),
        number("plant", "p2", p.plant.p2),
        number("plant", "p3", p.plant.p3),
        number("plant", "fs1", p.plant.fs1),
        number("plant", "fs2", p.plant.fs2),
        number("plant", "fd1", p.plant.fd1),
        number("plant", "fd2", p.plant.fd2),
        vector("reference", "x0", p.reference_x0),
        {"reference", "omega",
         [&p](const YAML::Node& n, const std::string& path) {
             Vectord v;
             vector("", "", v).read(n, path);
             if (v.size() != 2) throw ConfigError(path + ": expected 2 frequencies");
             p.reference_omega = v;
         },
         [&p] { return format_vector(p.reference_omega); }},
        choice("cost", "variant", p.cost_variant,
               {{"quadratic", CostVariant::Quadratic}, {"risk-sensitive", CostVariant::RiskSensitive}}),
        vector("cost", "Q", p.Q_diag),
        vector("cost", "R", p.R_diag),
        vector("performance", "rho0", p.rho0),
        vector("performance", "rho_inf", p.rho_inf),
        vector("performance", "decay", p.decay),
        vector("performance", "alpha", p.alpha),
        vector("performance", "k", p.k),
        vector("performance", "h", p.h),
        vector("performance", "beta", p.beta),
        choice("performance", "ref_normalization", p.ref_normalization,
               {{"unscaled", RefNormalization::Unscaled}, {"ppf-scaled", RefNormalization::PpfScaled}}),
        text("critic", "basis", p.basis),
        number("critic", "gamma", p.gamma),
        number("critic", "k_c", p.k_c),
        number("critic", "k_e", p.k_e),
        boolean("critic", "normalize", p.normalize),
        integer("buffer", "capacity", p.buffer.capacity),
        number("buffer", "rank_tol", p.buffer.rank_tol),
        number("buffer", "min_sv_gain", p.buffer.min_sv_gain),
        number("simulation", "dt", p.sim.dt),
        number("simulation", "t_end", p.sim.t_end),
        number("simulation", "record_dt", p.sim.record_dt),
        number("simulation", "buffer_dt", p.sim.buffer_dt),
        vector("initial", "x0", p.x0),
        vector("initial", "W0", p.W0),
    };
}

void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) throw ConfigError(path + ": " + what);
}

void require_size(const Vectord& v, Eigen::Index n, const std::string& path) {
    require(v.size() == n, path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
}

template <typename Pred>
void require_each(const Vectord& v, const std::string& path, Pred pred, const std::string& what) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        require(std::isfinite(v(i)) && pred(i), path + "[" + std::to_string(i) + "]", what);
    }
}

}  // namespace

std::vector<std::string> preset_names() { return {"otcp-quadratic", "pp-otcp"}; }

ScenarioPreset preset(std::string_view name) {
    if (name != "otcp-quadratic" && name != "pp-otcp") {
        throw ConfigError("name: unknown preset '" + std::string(name) + "'");
    }
    constexpr double deg = std::numbers::pi / 180.0;

    ScenarioPreset p;
    p.name = std::string(name);
    p.plant = {3.4743, 0.196, 0.242, 8.45, 2.35, 5.3, 1.1};
    p.reference_x0 = vec({0.5, 1.0, 0.0, 0.0});
    p.reference_omega = Vector2<double>(2.0, 1.0);

    p.cost_variant = name == "pp-otcp" ? CostVariant::RiskSensitive : CostVariant::Quadratic;
    p.Q_diag = vec({8, 8, 8, 8});
    p.R_diag = vec({1, 1});

    p.rho0 = Vectord::Constant(kStateDim, 60 * deg);
    p.rho_inf = Vectord::Constant(kStateDim, 3 * deg);
    p.decay = Vectord::Constant(kStateDim, 0.1);
    p.alpha = vec({0.20, 0.25, 0.25, 0.25});
    p.k = vec({1.0, 0.3, 1.0, 1.0});
    p.h = Vectord::Constant(kStateDim, 0.01);
    p.beta = Vectord::Constant(kStateDim, 10.0);
    p.ref_normalization = RefNormalization::Unscaled;

    p.basis = "manipulator-23";
    p.gamma = 1.0;
    p.k_c = 100.0;
    p.k_e = 10.0;
    p.normalize = false;
    p.buffer.capacity = 25;
    p.buffer.rank_tol = 1e-8;
    p.buffer.min_sv_gain = 1.01;

    p.sim = {1e-3, 80.0, 1e-2, 1e-1};

    p.x0 = vec({0.4, 1.1, 0.0, 0.0});
    p.W0 = Vectord::Zero(23);
    return p;
}

BasisSpec<double> make_basis(const std::string& name) {
    if (name == "manipulator-23") return manipulator_tracking_basis<double>();
    throw ConfigError("critic.basis: unknown basis '" + name + "'");
}

void validate(const ScenarioPreset& p) {
    require(p.name == "custom" || p.name == "otcp-quadratic" || p.name == "pp-otcp", "name",
            "unknown scenario '" + p.name + "'");
    try {
        ppadp::validate(p.plant);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("plant: ") + e.what());
    }

    require_size(p.reference_x0, kStateDim, "reference.x0");
    require_each(p.reference_x0, "reference.x0", [](auto) { return true; }, "must be finite");
    require_each(Vectord(p.reference_omega), "reference.omega", [&](auto i) { return p.reference_omega(i) > 0; },
                 "must be positive");

    require_size(p.Q_diag, kStateDim, "cost.Q");
    require_each(p.Q_diag, "cost.Q", [&](auto i) { return p.Q_diag(i) >= 0; }, "must be nonnegative");
    require_size(p.R_diag, kInputDim, "cost.R");
    require_each(p.R_diag, "cost.R", [&](auto i) { return p.R_diag(i) > 0; }, "must be positive");

    const std::string perf = "performance.";
    const std::pair<const char*, const Vectord*> per_dim[] = {{"rho0", &p.rho0}, {"rho_inf", &p.rho_inf},
                                                              {"decay", &p.decay}, {"alpha", &p.alpha},
                                                              {"k", &p.k},         {"h", &p.h},
                                                              {"beta", &p.beta}};
    for (const auto& [key, v] : per_dim) require_size(*v, kStateDim, perf + key);
    require_each(p.rho_inf, perf + "rho_inf", [&](auto i) { return p.rho_inf(i) > 0; }, "must be positive");
    require_each(p.rho0, perf + "rho0", [&](auto i) { return p.rho0(i) > p.rho_inf(i); }, "must exceed rho_inf");
    require_each(p.decay, perf + "decay", [&](auto i) { return p.decay(i) > 0; }, "must be positive");
    require_each(p.alpha, perf + "alpha", [&](auto i) { return p.alpha(i) > 0; }, "must be positive");
    require_each(p.k, perf + "k", [&](auto i) { return p.k(i) >= 0; }, "must be nonnegative");
    require_each(p.h, perf + "h", [&](auto i) { return p.h(i) >= 0; }, "must be nonnegative");
    require_each(p.beta, perf + "beta", [&](auto i) { return p.beta(i) > 0; }, "must be positive");

    const BasisSpec<double> basis = make_basis(p.basis);
    require(std::isfinite(p.gamma) && p.gamma > 0, "critic.gamma", "must be positive");
    require(std::isfinite(p.k_c) && p.k_c >= 0, "critic.k_c", "must be nonnegative");
    require(std::isfinite(p.k_e) && p.k_e >= 0, "critic.k_e", "must be nonnegative");

    require(p.buffer.capacity >= 1, "buffer.capacity", "must be at least 1");
    require(p.buffer.rank_tol > 0 && p.buffer.rank_tol < 1, "buffer.rank_tol", "must lie in (0, 1)");
    require(p.buffer.min_sv_gain >= 1, "buffer.min_sv_gain", "must be at least 1");

    require(std::isfinite(p.sim.dt) && p.sim.dt > 0, "simulation.dt", "must be positive");
    require(std::isfinite(p.sim.t_end) && p.sim.t_end >= 0, "simulation.t_end", "must be nonnegative");
    require(detail::steps_per(p.sim.record_dt, p.sim.dt) >= 1, "simulation.record_dt",
            "must be a positive integer multiple of dt");
    require(detail::steps_per(p.sim.buffer_dt, p.sim.dt) >= 1, "simulation.buffer_dt",
            "must be a positive integer multiple of dt");

    require_size(p.x0, kStateDim, "initial.x0");
    require_each(p.x0, "initial.x0", [](auto) { return true; }, "must be finite");
    require_size(p.W0, basis.size(), "initial.W0");
    require_each(p.W0, "initial.W0", [](auto) { return true; }, "must be finite");

    if (p.cost_variant == CostVariant::RiskSensitive) {
        const Vectord margins = constraint_margin(make_penalty(p), Vectord(p.x0 - p.reference_x0), 0.0);
        for (Eigen::Index i = 0; i < margins.size(); ++i) {
            require(margins(i) < 1, "initial.x0[" + std::to_string(i) + "]",
                    "initial tracking error lies outside the performance band (margin " +
                        format_double(margins(i)) + ")");
        }
        for (Eigen::Index i = 0; i < kStateDim; ++i) {
            const double rho = p.rho0(i);
            const double delta =
                p.ref_normalization == RefNormalization::PpfScaled ? p.reference_x0(i) / rho : p.reference_x0(i);
            require(std::abs(delta) < p.beta(i), "reference.x0[" + std::to_string(i) + "]",
                    "initial reference lies outside its barrier");
        }
    }
}

ScenarioPreset parse_config_string(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
    if (!root["name"]) throw ConfigError("name: missing key");
    const auto name = convert<std::string>(root["name"], "name", "a string");

    const bool custom = name == "custom";
    ScenarioPreset p = custom ? ScenarioPreset{} : preset(name);
    p.name = name;

    auto table = fields(p);
    std::set<std::string> sections;
    for (const auto& f : table) sections.insert(f.section);

    std::set<std::string> seen;
    for (const auto& entry : root) {
        const auto section = entry.first.as<std::string>();
        if (section == "name") continue;
        if (!sections.count(section)) throw ConfigError(section + ": unknown section");
        if (!entry.second.IsMap()) throw ConfigError(section + ": expected a mapping");
        for (const auto& kv : entry.second) {
            const auto key = kv.first.as<std::string>();
            const std::string path = section + "." + key;
            auto it = std::find_if(table.begin(), table.end(),
                                   [&](const Field& f) { return f.section == section && f.key == key; });
            if (it == table.end()) throw ConfigError(path + ": unknown key");
            it->read(kv.second, path);
            seen.insert(path);
        }
    }
    if (custom) {
        for (const auto& f : table) {
            const std::string path = f.section + "." + f.key;
            if (!seen.count(path)) throw ConfigError(path + ": missing key");
        }
    }
    validate(p);
    return p;
}

ScenarioPreset parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_string(ss.str());
}

std::string serialize(const ScenarioPreset& preset_in) {
    ScenarioPreset p = preset_in;
    std::ostringstream out;
    out << "name: " << p.name << "\n";
    std::string current;
    for (const auto& f : fields(p)) {
        if (f.section != current) {
            current = f.section;
            out << current << ":\n";
        }
        out << "  " << f.key << ": " << f.write() << "\n";
    }
    return out.str();
}

PenaltySpec<double> make_penalty(const ScenarioPreset& p) {
    PenaltySpec<double> s;
    s.ref_normalization = p.ref_normalization;
    for (Eigen::Index i = 0; i < p.alpha.size(); ++i) {
        s.errors.push_back({p.k(i), {p.rho0(i), p.rho_inf(i), p.decay(i), p.alpha(i)}});
        s.references.push_back({p.h(i), p.beta(i)});
    }
    return s;
}

CostSpec<double> make_cost(const ScenarioPreset& p) {
    CostSpec<double> c;
    c.R = p.R_diag.asDiagonal();
    if (p.cost_variant == CostVariant::Quadratic) {
        c.state_cost = QuadraticCost<double>{Matrixd(p.Q_diag.asDiagonal())};
    } else {
        c.state_cost = RiskSensitiveCost<double>{make_penalty(p)};
    }
    return c;
}

ClosedLoopModel<double> make_model(const ScenarioPreset& p) {
    ClosedLoopModel<double> m;
    m.plant = make_manipulator_plant(p.plant);
    m.reference = make_oscillator_reference(p.reference_x0, p.reference_omega);
    m.cost = make_cost(p);
    m.basis = make_basis(p.basis);
    m.monitor = make_penalty(p);
    return m;
}

CriticState<double> make_critic(const ScenarioPreset& p) {
    const int N = make_basis(p.basis).size();
    CriticState<double> c;
    c.W = p.W0;
    c.gains.Gamma = p.gamma * Matrixd::Identity(N, N);
    c.gains.k_c = p.k_c;
    c.gains.k_e = p.k_e;
    c.gains.normalize = p.normalize;
    c.buffer = ExperienceBuffer<double>(N, p.buffer);
    return c;
}

}  // namespace ppadp::experiments

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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// gated criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ppadp/experiments/cli.hpp"
#include "ppadp/experiments/metrics.hpp"
#include "support.hpp"

namespace {

namespace ex = ppadp::experiments;
namespace fs = std::filesystem;
using ppadp::Matrixd;
using ppadp::Vectord;

// Pinned tolerances.
constexpr double kMaxRuntimeS = 60.0;          // 1
constexpr double kWeightTailChange = 0.02;     // 2
constexpr double kTrackingRatio = 0.25;        // 3
constexpr double kReplayTol = 1e-6;            // 4
constexpr double kReplayHorizon = 10.0;        // 4
constexpr double kReplayRuntimeS = 1.0;        // 4
constexpr double kLqrTol = 1e-10;              // 5
constexpr double kFdRelTol = 1e-6;             // 6
constexpr double kIdentityTol = 1e-10;         // 6
constexpr double kMinRk4Order = 3.8;           // 7

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail, bool gated = true) {
    const char* tag = !gated ? "INFO" : (pass ? "PASS" : "FAIL");
    std::printf("[%s] %d %-28s %s\n", tag, id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass && gated) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Timed {
    ppadp::ScenarioResult<double> result;
    ex::MetricsReport metrics;
};

Timed run_preset(const std::string& name) {
    const auto p = ex::preset(name);
    const auto t0 = std::chrono::steady_clock::now();
    auto r = ex::run(p);
    const double rt = seconds_since(t0);
    auto m = ex::emit_metrics(r, p, rt);
    return {std::move(r), std::move(m)};
}

void constraint_satisfaction(const Timed& pp) {
    const auto& m = pp.metrics;
    bool inside = true;
    for (const auto& row : pp.result.log.rows) inside = inside && row.margins.maxCoeff() < 1.0;
    const bool pass = pp.result.ok() && m.violation_count == 0 && inside && m.runtime_s <= kMaxRuntimeS &&
                      std::abs(m.t_last - 80.0) < 1e-9;
    std::ostringstream d;
    d << "pp-otcp status=" << m.status << " t_last=" << m.t_last << " violations=" << m.violation_count
      << " runtime=" << fmt("%.2fs", m.runtime_s);
    if (!pp.result.ok()) d << " (" << pp.result.diagnostic << ")";
    report(1, pass, "constraint satisfaction", d.str());
}

void weight_convergence(const Timed& q) {
    const auto& m = q.metrics;
    const bool pass = q.result.ok() && m.weight_tail_change <= kWeightTailChange && m.buffer_lambda_min > 0;
    std::ostringstream d;
    d << "otcp-quadratic tail change=" << fmt("%.4g", m.weight_tail_change) << " (<= " << kWeightTailChange
      << "), lambda_min=" << fmt("%.3g", m.buffer_lambda_min) << ", buffer rank " << m.buffer_rank << "/"
      << m.basis_size;
    report(2, pass, "weight convergence", d.str());
}

void tracking(const Timed& q, const Timed& pp) {
    bool pass = true;
    std::ostringstream d;
    const char* sep = "";
    for (const auto* t : {&q, &pp}) {
        const auto& m = t->metrics;
        const bool ok = t->result.ok() && std::isfinite(m.max_error_norm) &&
                        m.late_error_mean < kTrackingRatio * m.early_error_mean;
        pass = pass && ok;
        d << sep << m.scenario << " status=" << m.status
          << " late/early=" << fmt("%.3g", m.late_error_mean / m.early_error_mean);
        sep = "; ";
    }
    report(3, pass, "tracking", d.str());
}

void synthetic_replay() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = ppadp::testing::replay_only_learning(5, 10, 10.0, kReplayHorizon, 1e-3, kReplayTol, 2024);
    const double rt = seconds_since(t0);
    const bool pass = r.stored == 10 && r.lambda_min > 0 && r.time_to_tol >= 0 &&
                      r.error_norms.back() <= kReplayTol && r.monotone && rt < kReplayRuntimeS;
    std::ostringstream d;
    d << "|W~| <= " << kReplayTol << " at t=" << r.time_to_tol << "s, final " << fmt("%.2e", r.error_norms.back())
      << ", monotone=" << (r.monotone ? "yes" : "no") << ", lambda_min=" << fmt("%.3g", r.lambda_min)
      << ", runtime=" << fmt("%.3fs", rt);
    report(4, pass, "synthetic critic", d.str());
}

void lqr() {
    namespace pt = ppadp::testing;
    const double a = -1, b = 2, q = 3, r = 0.5;
    const auto plant = pt::scalar_plant(a, b);
    const auto cost = pt::scalar_quadratic(q, r);
    const auto basis = pt::half_square_basis();
    const double p = pt::riccati(a, b, q, r);
    Vectord W(1);
    W << 2 * p;
    double worst_res = 0, worst_gain = 0;
    for (int k = -100; k <= 100; ++k) {
        const double e = 0.02 * k;
        const auto eta = ppadp::augment(Vectord(Vectord::Constant(1, e)), Vectord(Vectord::Zero(1)));
        worst_res = std::max(worst_res,
                             std::abs(ppadp::hamiltonian_residual(W, basis, plant, pt::zero_reference(), cost, eta, 0.0)));
        const double mu = ppadp::approx_control(W, basis, plant, cost.R, eta)(0);
        worst_gain = std::max(worst_gain, std::abs(mu + (b * p / r) * e));
    }
    const bool pass = worst_res <= kLqrTol && worst_gain <= kLqrTol;
    report(5, pass, "LQR",
           "max |HJB residual|=" + fmt("%.2e", worst_res) + ", max |mu + K e|=" + fmt("%.2e", worst_gain) +
               " (K=" + fmt("%g", b * p / r) + ")");
}

void numerical_identities() {
    const auto p = ex::preset("pp-otcp");
    const auto model = ex::make_model(p);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    const double h = 1e-5;

    double grad_err = 0, value_err = 0, pinv_err = 0, nu_err = 0;
    for (int k = 0; k < 100; ++k) {
        Vectord eta(8), W(23);
        for (int i = 0; i < 8; ++i) eta(i) = U(rng);
        for (int i = 0; i < 23; ++i) W(i) = U(rng);
        const auto J = ppadp::basis_grad(model.basis, eta);
        const Vectord g = ppadp::value_grad(W, model.basis, eta);
        Matrixd Jfd(23, 8);
        Vectord gfd(8);
        for (int c = 0; c < 8; ++c) {
            Vectord a = eta, m = eta;
            a(c) += h;
            m(c) -= h;
            Jfd.col(c) = (ppadp::basis_eval(model.basis, a) - ppadp::basis_eval(model.basis, m)) / (2 * h);
            gfd(c) = (ppadp::value_estimate(W, model.basis, a) - ppadp::value_estimate(W, model.basis, m)) / (2 * h);
        }
        grad_err = std::max(grad_err, (J - Jfd).norm() / std::max(1.0, J.norm()));
        value_err = std::max(value_err, (g - gfd).norm() / std::max(1.0, g.norm()));

        const Vectord x = eta.head(4);
        pinv_err = std::max(pinv_err,
                            (model.plant.g_pinv(x) * model.plant.g(x) - Matrixd::Identity(2, 2)).norm());
    }
    for (int k = 0; k < 200; ++k) {
        const double t = 0.4 * k;
        Vectord xr(4);
        xr << 0.5 * std::cos(2 * t), std::cos(t), -std::sin(2 * t), -std::sin(t);
        const Vectord nu = ppadp::steady_state_control(model.plant, model.reference, xr);
        nu_err = std::max(nu_err, (model.plant.flow(xr, nu) - model.reference.flow(xr)).norm());
    }

    // Barrier: monotone, symmetric, divergent near the band edge.
    const auto& pen = model.monitor;
    bool barrier_ok = true;
    const Vectord xr = p.reference_x0;
    for (int i = 0; i < 4; ++i) {
        const double bound = pen.errors[i].ppf.alpha * ppadp::ppf_eval(pen.errors[i].ppf, 0.0);
        double prev = -1;
        for (int s = 0; s < 200; ++s) {
            Vectord e = Vectord::Zero(4);
            e(i) = bound * s / 200.0;
            const double v = ppadp::penalty(pen, e, xr, 0.0);
            barrier_ok = barrier_ok && v > prev && v == ppadp::penalty(pen, Vectord(-e), xr, 0.0);
            prev = v;
        }
        Vectord e = Vectord::Zero(4);
        e(i) = (1 - 1e-6) * bound;
        barrier_ok = barrier_ok && ppadp::penalty(pen, e, Vectord(Vectord::Zero(4)), 0.0) > 10 * pen.errors[i].k;
    }

    const bool pass = grad_err <= kFdRelTol && value_err <= kFdRelTol && pinv_err <= kIdentityTol &&
                      nu_err <= kIdentityTol && barrier_ok;
    report(6, pass, "numerical identities",
           "basis_grad " + fmt("%.1e", grad_err) + ", value_grad " + fmt("%.1e", value_err) + ", g+g-I " +
               fmt("%.1e", pinv_err) + ", nu " + fmt("%.1e", nu_err) + ", barrier " +
               (barrier_ok ? "ok" : "broken"));
}

void integrator_order() {
    auto p = ex::preset("otcp-quadratic");
    p.x0 = p.reference_x0;
    p.k_c = 0;
    p.k_e = 0;
    const auto model = ex::make_model(p);
    auto error_at = [&](double dt) {
        ppadp::ClosedLoopState<double> s{0.0, p.x0, p.reference_x0, ex::make_critic(p)};
        const long steps = std::lround(10.0 / dt);
        for (long k = 0; k < steps; ++k) s = ppadp::rk4_step(model, s, dt);
        Vectord exact(4);
        exact << 0.5 * std::cos(20.0), std::cos(10.0), -std::sin(20.0), -std::sin(10.0);
        return (s.x_r - exact).norm();
    };
    const double e1 = error_at(0.1), e2 = error_at(0.05), e3 = error_at(0.025);
    const double o1 = std::log2(e1 / e2), o2 = std::log2(e2 / e3);
    report(7, std::min(o1, o2) >= kMinRk4Order, "integrator order",
           "observed orders " + fmt("%.3f", o1) + ", " + fmt("%.3f", o2));
}

int cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"ppadp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return ex::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void comparison(const fs::path& root) {
    const fs::path dir = root / "compare";
    cli({"--compare-ppf", "--out-dir", dir.string()});
    const fs::path csv = dir / "margins_comparison.csv";
    std::ifstream in(csv);
    std::string header, line;
    std::getline(in, header);
    std::size_t rows = 0;
    bool crossed = false;
    while (std::getline(in, line)) {
        ++rows;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        // columns 1, 2: quadratic-cost margins of e1, e2
        if (cells.size() > 2 && (std::stod(cells[1]) >= 1.0 || std::stod(cells[2]) >= 1.0)) crossed = true;
    }
    const bool emitted = header.rfind("t,otcp-quadratic_margin1", 0) == 0 && rows > 0;
    report(8, emitted, "comparison margins CSV", csv.filename().string() + " rows=" + std::to_string(rows));
    report(8, crossed, "comparison (informational)",
           std::string("quadratic-cost run ") + (crossed ? "crosses" : "does not cross") + " the e1/e2 band",
           false);
}

void determinism(const fs::path& root) {
    bool pass = true;
    std::ostringstream d;
    const char* sep = "";
    for (const auto& name : ex::preset_names()) {
        const fs::path a = root / ("det_a_" + name), b = root / ("det_b_" + name);
        const int ca = cli({"--scenario", name, "--out-dir", a.string()});
        const int cb = cli({"--scenario", name, "--out-dir", b.string()});
        bool same = ca == cb;
        for (const char* suffix : {"_trajectory.csv", "_weights.csv"}) {
            const auto fa = slurp(a / (name + suffix)), fb = slurp(b / (name + suffix));
            same = same && !fa.empty() && fa == fb;
        }
        pass = pass && same;
        d << sep << name << (same ? " identical" : " differs");
        sep = "; ";
    }
    report(9, pass, "determinism", d.str());
}

}  // namespace

int main() {
    const fs::path root = fs::temp_directory_path() / "ppadp_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    const Timed pp = run_preset("pp-otcp");
    const Timed q = run_preset("otcp-quadratic");

    constraint_satisfaction(pp);
    weight_convergence(q);
    tracking(q, pp);
    synthetic_replay();
    lqr();
    numerical_identities();
    integrator_order();
    comparison(root);
    determinism(root);

    fs::remove_all(root);
    std::printf("%s: %d gated criteria failed\n", failures ? "FAILED" : "PASSED", failures);
    return failures ? 1 : 0;
}

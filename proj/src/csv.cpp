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


#include "ppadp/experiments/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ppadp::experiments {

namespace {

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

void put(std::ostream& out, const Vectord& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out << ',';
        put(out, v(i));
    }
}

void numbered(std::vector<std::string>& h, const std::string& prefix, int count) {
    for (int i = 1; i <= count; ++i) h.push_back(prefix + std::to_string(i));
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

int count_prefix(const std::vector<std::string>& header, const std::string& prefix) {
    int c = 0;
    while (c < static_cast<int>(header.size())) {
        bool found = false;
        for (const auto& h : header) found = found || h == prefix + std::to_string(c + 1);
        if (!found) break;
        ++c;
    }
    return c;
}

double parse(const std::string& s, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw std::runtime_error("trajectory csv line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<std::string> trajectory_header(int n, int m, int N) {
    std::vector<std::string> h{"t"};
    numbered(h, "x", n);
    numbered(h, "xr", n);
    numbered(h, "e", n);
    numbered(h, "u", m);
    numbered(h, "mu", m);
    numbered(h, "nu", m);
    numbered(h, "W", N);
    numbered(h, "margin", n);
    h.push_back("utility");
    h.push_back("min_sv");
    return h;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryLog<double>& log) {
    if (log.empty()) throw std::invalid_argument("write_trajectory_csv: empty log");
    const auto& r0 = log.rows.front();
    const auto header = trajectory_header(static_cast<int>(r0.x.size()), static_cast<int>(r0.u.size()),
                                          static_cast<int>(r0.W.size()));
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& r : log.rows) {
        put(out, r.t);
        put(out, r.x);
        put(out, r.x_r);
        put(out, r.e);
        put(out, r.u);
        put(out, r.mu);
        put(out, r.nu);
        put(out, r.W);
        put(out, r.margins);
        out << ',';
        put(out, r.utility);
        out << ',';
        put(out, r.min_sv);
        out << '\n';
    }
}

TrajectoryLog<double> read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("trajectory csv: missing header");
    const auto header = split_line(line);
    const int n = count_prefix(header, "x");
    const int m = count_prefix(header, "u");
    const int N = count_prefix(header, "W");
    if (header != trajectory_header(n, m, N)) throw std::runtime_error("trajectory csv: unrecognized header");

    TrajectoryLog<double> log;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("trajectory csv line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(header.size()) + " cells");
        }
        std::size_t c = 0;
        auto take = [&](int count) {
            Vectord v(count);
            for (int i = 0; i < count; ++i) v(i) = parse(cells[c++], lineno);
            return v;
        };
        LogRow<double> r;
        r.t = parse(cells[c++], lineno);
        r.x = take(n);
        r.x_r = take(n);
        r.e = take(n);
        r.u = take(m);
        r.mu = take(m);
        r.nu = take(m);
        r.W = take(N);
        r.margins = take(n);
        r.utility = parse(cells[c++], lineno);
        r.min_sv = parse(cells[c++], lineno);
        log.rows.push_back(std::move(r));
    }
    return log;
}

void write_weights_csv(std::ostream& out, const TrajectoryLog<double>& log) {
    if (log.empty()) throw std::invalid_argument("write_weights_csv: empty log");
    const auto N = log.rows.front().W.size();
    out << 't';
    for (Eigen::Index i = 1; i <= N; ++i) out << ",W" << i;
    out << '\n';
    for (const auto& r : log.rows) {
        put(out, r.t);
        put(out, r.W);
        out << '\n';
    }
}

void write_margins_csv(std::ostream& out, const std::vector<LabeledLog>& runs) {
    if (runs.empty()) throw std::invalid_argument("write_margins_csv: no runs");
    const TrajectoryLog<double>* longest = nullptr;
    Eigen::Index n = 0;
    for (const auto& r : runs) {
        if (r.log->empty()) continue;
        if (!longest || r.log->size() > longest->size()) longest = r.log;
        n = r.log->rows.front().margins.size();
    }
    if (!longest) throw std::invalid_argument("write_margins_csv: all logs empty");

    out << 't';
    for (const auto& r : runs) {
        for (Eigen::Index i = 1; i <= n; ++i) out << ',' << r.label << "_margin" << i;
        out << ',' << r.label << "_outside";
    }
    out << '\n';
    for (std::size_t k = 0; k < longest->size(); ++k) {
        put(out, longest->rows[k].t);
        for (const auto& r : runs) {
            if (k < r.log->size()) {
                const auto& m = r.log->rows[k].margins;
                put(out, m);
                out << ',' << (m.maxCoeff() >= 1.0 ? 1 : 0);
            } else {
                for (Eigen::Index i = 0; i <= n; ++i) out << ',';
            }
        }
        out << '\n';
    }
}

}  // namespace ppadp::experiments

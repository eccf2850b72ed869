// SPDX-License-Identifier: Apache-2.0
//
// beamsel: beamspace MIMO beam selection library and simulator
// Copyright (C) 2026 The beamsel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "beamsel/config.hpp"

#include "beamsel/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace beamsel {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto end = comma == std::string_view::npos ? s.size() : comma;
        const auto part = trim(s.substr(start, end - start));
        if (!part.empty())
            parts.push_back(part);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return parts;
}

int to_int(std::string_view s)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("expected an integer, got '" + std::string(s) + "'");
    return v;
}

std::uint64_t to_u64(std::string_view s)
{
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("expected an unsigned 64-bit integer, got '" + std::string(s) + "'");
    return v;
}

double to_double(std::string_view s)
{
    // from_chars for double is not available in every libstdc++ we target.
    const std::string copy(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(copy, &used);
    } catch (const std::exception &) {
        throw ConfigError("expected a number, got '" + copy + "'");
    }
    if (used != copy.size() || !std::isfinite(v))
        throw ConfigError("expected a number, got '" + copy + "'");
    return v;
}

std::vector<double> to_doubles(std::string_view s)
{
    std::vector<double> out;
    for (auto part : split_list(s))
        out.push_back(to_double(part));
    if (out.empty())
        throw ConfigError("expected a non-empty number list");
    return out;
}

void apply_setting(SimulationConfig &cfg, std::string_view key, std::string_view value)
{
    if (key == "M")
        cfg.channel.antennas = to_int(value);
    else if (key == "K")
        cfg.channel.users = to_int(value);
    else if (key == "N_cl")
        cfg.channel.clusters = to_int(value);
    else if (key == "N_ray")
        cfg.channel.rays = to_int(value);
    else if (key == "los_gain_var")
        cfg.channel.los_gain_var = to_double(value);
    else if (key == "nlos_gain_var")
        cfg.channel.nlos_gain_var = to_double(value);
    else if (key == "angle_low")
        cfg.channel.angle_low = to_double(value);
    else if (key == "angle_high")
        cfg.channel.angle_high = to_double(value);
    else if (key == "N_RF")
        cfg.n_rf = to_int(value);
    else if (key == "N")
        cfg.reduced = to_int(value);
    else if (key == "snr_db")
        cfg.snr_db_list = to_doubles(value);
    else if (key == "sweep")
        cfg.sweep = parse_sweep_kind(value);
    else if (key == "values")
        cfg.sweep_values = to_doubles(value);
    else if (key == "trials")
        cfg.trials = to_int(value);
    else if (key == "seed")
        cfg.master_seed = to_u64(value);
    else if (key == "algorithms") {
        std::vector<Algorithm> algs;
        for (auto part : split_list(value)) {
            const auto a = parse_algorithm(part);
            if (std::find(algs.begin(), algs.end(), a) == algs.end())
                algs.push_back(a);
        }
        if (algs.empty())
            throw ConfigError("algorithm list is empty");
        std::sort(algs.begin(), algs.end());
        cfg.algorithms = algs;
    } else if (key == "metric")
        cfg.metric = parse_metric(value);
    else if (key == "mode")
        cfg.mode = parse_mode(value);
    else if (key == "threads")
        cfg.threads = to_int(value);
    else
        throw ConfigError("unknown key '" + std::string(key) + "'");
}

void apply_line(SimulationConfig &cfg, std::string_view raw, const std::string &source, std::size_t line_no)
{
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
        return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
        throw ParseError(source, line_no, "expected key=value, got '" + std::string(line) + "'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty())
        throw ParseError(source, line_no, "missing key");
    try {
        apply_setting(cfg, key, value);
    } catch (const ParseError &) {
        throw;
    } catch (const ConfigError &e) {
        throw ParseError(source, line_no, std::string(key) + ": " + e.what());
    }
}

void apply_text(SimulationConfig &cfg, std::string_view text, const std::string &source)
{
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        ++line_no;
        const auto nl = text.find('\n', start);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        apply_line(cfg, text.substr(start, end - start), source, line_no);
        if (nl == std::string_view::npos)
            break;
        start = nl + 1;
    }
}

std::string format_value(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

int SimulationConfig::rf_chains() const noexcept { return n_rf.value_or(channel.users); }

int SimulationConfig::reduced_size() const noexcept
{
    return reduced.value_or(std::min(3 * rf_chains(), channel.antennas));
}

void SimulationConfig::validate() const
{
    channel.validate();
    if (trials < 1)
        throw ConstraintError("trials >= 1 violated (trials=" + std::to_string(trials) + ")");
    if (threads < 1)
        throw ConstraintError("threads >= 1 violated");
    const int k = channel.users;
    const int rf = rf_chains();
    const int n = reduced_size();
    if (k > rf)
        throw ConstraintError("K <= N_RF violated (K=" + std::to_string(k) + ", N_RF=" + std::to_string(rf) + ")");
    if (rf > n)
        throw ConstraintError("N_RF <= N violated (N_RF=" + std::to_string(rf) + ", N=" + std::to_string(n) + ")");
    if (n > channel.antennas)
        throw ConstraintError("N <= M violated (N=" + std::to_string(n) + ", M=" + std::to_string(channel.antennas) +
                              ")");
    if (snr_db_list.empty())
        throw ConstraintError("snr_db list is empty");
    if (algorithms.empty())
        throw ConstraintError("algorithm list is empty");
}

std::vector<double> sweep_points(const SimulationConfig &cfg)
{
    if (!cfg.sweep_values.empty())
        return cfg.sweep_values;
    switch (cfg.sweep) {
    case SweepKind::snr:
        return cfg.snr_db_list;
    case SweepKind::users:
        return {static_cast<double>(cfg.channel.users)};
    case SweepKind::antennas:
        return {static_cast<double>(cfg.channel.antennas)};
    case SweepKind::rf:
        return {static_cast<double>(cfg.rf_chains())};
    }
    return {};
}

SimulationConfig at_sweep_point(const SimulationConfig &cfg, double value)
{
    SimulationConfig point = cfg;
    point.sweep_values.clear();
    const auto as_count = [&](const char *what) {
        if (value != std::floor(value) || value < 1.0 || value > 1e6)
            throw ConstraintError(std::string(what) + " sweep value must be a positive integer, got " +
                                  format_value(value));
        return static_cast<int>(value);
    };
    switch (cfg.sweep) {
    case SweepKind::snr:
        point.snr_db_list = {value};
        break;
    case SweepKind::users:
        point.channel.users = as_count("users");
        break;
    case SweepKind::antennas:
        point.channel.antennas = as_count("antennas");
        break;
    case SweepKind::rf:
        point.n_rf = as_count("rf");
        break;
    }
    point.validate();
    return point;
}

SimulationConfig load_config(const ConfigSources &sources)
{
    SimulationConfig cfg;
    if (sources.env_seed) {
        try {
            cfg.master_seed = to_u64(trim(*sources.env_seed));
        } catch (const ConfigError &e) {
            throw ParseError("BEAMSEL_SEED", 1, e.what());
        }
    }
    if (sources.preset) {
        std::size_t line_no = 0;
        for (const auto &s : preset_settings(*sources.preset))
            apply_line(cfg, s, "preset " + *sources.preset, ++line_no);
    }
    apply_text(cfg, sources.text, sources.text_name);
    std::size_t line_no = 0;
    for (const auto &o : sources.overrides)
        apply_line(cfg, o, "override", ++line_no);

    cfg.validate();
    for (double v : sweep_points(cfg))
        at_sweep_point(cfg, v);
    return cfg;
}

SimulationConfig parse_config(std::string_view text, std::span<const std::string> overrides)
{
    ConfigSources sources;
    sources.text = std::string(text);
    sources.overrides.assign(overrides.begin(), overrides.end());
    return load_config(sources);
}

std::vector<std::string> preset_settings(std::string_view name)
{
    // N_RF is not stated for the SNR and user sweeps; both use N_RF = K.
    if (name == "fig1")
        return {"M=256", "K=24", "N_RF=24", "sweep=snr", "values=0,5,10,15,20,25,30"};
    if (name == "fig2")
        return {"M=256", "snr_db=30", "sweep=users", "values=4,8,12,16,20,24"};
    if (name == "fig3")
        return {"K=16", "N_RF=16", "snr_db=30", "sweep=antennas", "values=20,32,64,128,256"};
    if (name == "fig4")
        return {"M=256", "K=16", "snr_db=30", "sweep=rf", "values=16,20,24,28,32"};
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig1..fig4)");
}

std::string to_string(SweepKind kind)
{
    switch (kind) {
    case SweepKind::snr:
        return "snr";
    case SweepKind::users:
        return "users";
    case SweepKind::antennas:
        return "antennas";
    case SweepKind::rf:
        return "rf";
    }
    return "snr";
}

std::string to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::ssvd:
        return "ssvd";
    case Algorithm::dsvd:
        return "dsvd";
    case Algorithm::isvd:
        return "isvd";
    case Algorithm::mm:
        return "mm";
    case Algorithm::ia:
        return "ia";
    case Algorithm::fdzf:
        return "fdzf";
    case Algorithm::oracle:
        return "oracle";
    }
    return "ssvd";
}

std::string to_string(RateMetric metric) { return metric == RateMetric::zf ? "zf" : "parallel"; }

SweepKind parse_sweep_kind(std::string_view text)
{
    for (auto kind : {SweepKind::snr, SweepKind::users, SweepKind::antennas, SweepKind::rf})
        if (text == to_string(kind))
            return kind;
    throw ConfigError("unknown sweep '" + std::string(text) + "' (expected snr|users|antennas|rf)");
}

Algorithm parse_algorithm(std::string_view text)
{
    for (auto a : {Algorithm::ssvd, Algorithm::dsvd, Algorithm::isvd, Algorithm::mm, Algorithm::ia, Algorithm::fdzf,
                   Algorithm::oracle})
        if (text == to_string(a))
            return a;
    throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

RateMetric parse_metric(std::string_view text)
{
    if (text == "parallel")
        return RateMetric::parallel;
    if (text == "zf")
        return RateMetric::zf;
    throw ConfigError("unknown metric '" + std::string(text) + "' (expected parallel|zf)");
}

SelectionMode parse_mode(std::string_view text)
{
    if (text == "fast")
        return SelectionMode::fast;
    if (text == "naive")
        return SelectionMode::naive;
    throw ConfigError("unknown mode '" + std::string(text) + "' (expected fast|naive)");
}

} // namespace beamsel

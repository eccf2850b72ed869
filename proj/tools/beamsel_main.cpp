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
#include "beamsel/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw beamsel::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Beamspace MIMO beam selection Monte Carlo simulator"};

    std::string config_path;
    std::string preset;
    std::string sweep;
    std::string values;
    std::string metric;
    std::string mode;
    std::string algorithms;
    std::string out_path;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::vector<std::string> sets;

    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--preset", preset, "Figure preset")->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
    app.add_option("--sweep", sweep, "Swept quantity")->check(CLI::IsMember({"snr", "users", "antennas", "rf"}));
    app.add_option("--values", values, "Comma-separated sweep values");
    app.add_option("--trials", trials, "Channel realisations per sweep point");
    app.add_option("--seed", seed, "Master seed (u64)");
    app.add_option("--metric", metric, "Rate metric for selections")->check(CLI::IsMember({"parallel", "zf"}));
    app.add_option("--mode", mode, "Eigenvalue path for dsvd/isvd")->check(CLI::IsMember({"fast", "naive"}));
    app.add_option("--algorithms", algorithms, "Comma-separated subset of ssvd,dsvd,isvd,mm,ia,fdzf,oracle");
    app.add_option("--out", out_path, "CSV destination (default: stdout)");
    app.add_option("--threads", threads, "Worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
    app.add_option("--set", sets, "Extra key=value setting, repeatable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        beamsel::ConfigSources sources;
        if (const char *env = std::getenv("BEAMSEL_SEED"); env != nullptr && *env != '\0')
            sources.env_seed = env;
        if (!preset.empty())
            sources.preset = preset;
        if (!config_path.empty()) {
            sources.text = read_file(config_path);
            sources.text_name = config_path;
        }
        sources.overrides = sets;
        if (!sweep.empty())
            sources.overrides.push_back("sweep=" + sweep);
        if (!values.empty())
            sources.overrides.push_back("values=" + values);
        if (trials)
            sources.overrides.push_back("trials=" + std::to_string(*trials));
        if (seed)
            sources.overrides.push_back("seed=" + std::to_string(*seed));
        if (!metric.empty())
            sources.overrides.push_back("metric=" + metric);
        if (!mode.empty())
            sources.overrides.push_back("mode=" + mode);
        if (!algorithms.empty())
            sources.overrides.push_back("algorithms=" + algorithms);
        const int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        sources.overrides.push_back("threads=" + std::to_string(workers));

        const beamsel::SimulationConfig cfg = beamsel::load_config(sources);
        const auto rows = beamsel::run_sweep(cfg);
        if (out_path.empty())
            beamsel::emit_csv(rows, std::cout);
        else
            beamsel::emit_csv(rows, std::filesystem::path(out_path));
        return kExitOk;
    } catch (const beamsel::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const beamsel::UsageError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const beamsel::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOther;
    }
}

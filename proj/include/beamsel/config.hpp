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

#ifndef BEAMSEL_CONFIG_HPP
#define BEAMSEL_CONFIG_HPP

#include "beamsel/channel.hpp"
#include "beamsel/precoding.hpp"
#include "beamsel/selection.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace beamsel {

enum class SweepKind { snr, users, antennas, rf };

enum class Algorithm { ssvd, dsvd, isvd, mm, ia, fdzf, oracle };

struct SimulationConfig {
    ChannelConfig channel;
    std::optional<int> n_rf;    // unset: N_RF = K
    std::optional<int> reduced; // unset: N = min(3 N_RF, M)
    std::vector<double> snr_db_list{30.0};
    SweepKind sweep = SweepKind::snr;
    std::vector<double> sweep_values; // unset: the current value of the swept quantity
    int trials = 1000;
    std::uint64_t master_seed = 1;
    std::vector<Algorithm> algorithms{Algorithm::ssvd, Algorithm::isvd, Algorithm::mm, Algorithm::ia,
                                      Algorithm::fdzf};
    RateMetric metric = RateMetric::parallel;
    SelectionMode mode = SelectionMode::fast;
    int threads = 1;

    int rf_chains() const noexcept;
    int reduced_size() const noexcept;

    // Throws ConstraintError citing the violated invariant.
    void validate() const;
};

// Where configuration comes from, lowest precedence first:
// built-in defaults, env_seed, preset, text, overrides.
struct ConfigSources {
    std::optional<std::string> env_seed;
    std::optional<std::string> preset;
    std::string text;
    std::string text_name = "config";
    std::vector<std::string> overrides; // "key=value"
};

/// Parses plain-text `key=value` lines ('#' starts a comment) followed by
/// `key=value` overrides, on top of the built-in defaults. Unknown keys and
/// malformed values raise ParseError with the offending line; the merged
/// result is validated and may raise ConstraintError.
SimulationConfig parse_config(std::string_view text, std::span<const std::string> overrides = {});

SimulationConfig load_config(const ConfigSources &sources);

// Setting lines for fig1..fig4. Throws ConfigError for unknown names.
std::vector<std::string> preset_settings(std::string_view name);

// Concrete values the sweep visits.
std::vector<double> sweep_points(const SimulationConfig &cfg);

// Configuration for one sweep point (snr_db_list collapses to that point for
// SNR sweeps). Throws ConstraintError when the point is infeasible.
SimulationConfig at_sweep_point(const SimulationConfig &cfg, double value);

std::string to_string(SweepKind kind);
std::string to_string(Algorithm algorithm);
std::string to_string(RateMetric metric);

SweepKind parse_sweep_kind(std::string_view text);
Algorithm parse_algorithm(std::string_view text);
RateMetric parse_metric(std::string_view text);
SelectionMode parse_mode(std::string_view text);

} // namespace beamsel

#endif

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

#ifndef BEAMSEL_SWEEP_HPP
#define BEAMSEL_SWEEP_HPP

#include "beamsel/config.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

namespace beamsel {

struct TrialScore {
    Algorithm algorithm;
    double sum_rate;     // bits/s/Hz
    std::uint64_t ops;   // multiply-adds spent by the algorithm
};

struct SweepRow {
    SweepKind sweep;
    double value;
    Algorithm algorithm;
    double mean_sum_rate;
    double std_dev;
    int trials;
    std::uint64_t master_seed;
    double mean_op_count;
};

struct Moments {
    double mean = 0.0;
    double std_dev = 0.0; // sample (n - 1) standard deviation, 0 for one sample
};

Moments moments(std::span<const double> samples) noexcept;

/// One channel realisation drawn from the (master_seed, trial_index) stream,
/// scored for every enabled algorithm at the given SNR.
///
/// Selections are scored on the selected subchannel with the configured
/// metric; fdzf always uses zero-forcing over all M beams.
std::vector<TrialScore> run_trial(const SimulationConfig &cfg, std::uint64_t trial_index, double snr_db);

// Rows ordered by sweep point, then algorithm. Trials run on cfg.threads
// workers; the result does not depend on the worker count.
std::vector<SweepRow> run_sweep(const SimulationConfig &cfg);

inline constexpr const char *kCsvHeader = "sweep,value,algorithm,mean_sumrate,std,trials,seed,mean_ops";

void emit_csv(std::span<const SweepRow> rows, std::ostream &out);
// Throws IoError when the file cannot be written.
void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path &destination);

} // namespace beamsel

#endif

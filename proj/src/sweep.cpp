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

#include "beamsel/sweep.hpp"

#include "beamsel/errors.hpp"
#include "beamsel/precoding.hpp"
#include "beamsel/selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <thread>

namespace beamsel {

namespace {

constexpr double kRho = 1.0;

double score_selection(const BeamspaceChannel &full, const SelectionResult &sel, RateMetric metric, double n0)
{
    const ComplexMatrix hs = selected_rows(full, sel.selected_ids);
    const int users = static_cast<int>(full.matrix.cols());
    if (metric == RateMetric::parallel)
        return sumrate_parallel(hermitian_eig(gram(hs)).values, kRho, users, n0).sum_rate;
    return sumrate_sinr(hs, zf_precoder(hs, kRho), n0).sum_rate;
}

std::string g6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

Moments moments(std::span<const double> samples) noexcept
{
    Moments m;
    if (samples.empty())
        return m;
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    m.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double x : samples)
            ss += (x - m.mean) * (x - m.mean);
        m.std_dev = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    }
    return m;
}

std::vector<TrialScore> run_trial(const SimulationConfig &cfg, std::uint64_t trial_index, double snr_db)
{
    Rng rng = Rng::for_trial(cfg.master_seed, trial_index);
    const BeamspaceChannel full = generate_beamspace_channel(cfg.channel, rng);
    const double n0 = noise_from_snr_db(snr_db);
    const int n_rf = cfg.rf_chains();

    const SelectionOptions options{kRho, n0, cfg.mode, PowerConvention::per_user};
    const ReducedChannel reduced = reduce_beams(full, cfg.reduced_size());

    std::vector<TrialScore> scores;
    scores.reserve(cfg.algorithms.size());
    for (const auto alg : cfg.algorithms) {
        if (alg == Algorithm::fdzf) {
            OpCounter ops;
            const Precoder p = zf_precoder(full.matrix, kRho, &ops);
            scores.push_back({alg, sumrate_sinr(full.matrix, p, n0).sum_rate, ops.count()});
            continue;
        }
        SelectionResult sel;
        switch (alg) {
        case Algorithm::ssvd:
            sel = ssvd_select(reduced, n_rf);
            break;
        case Algorithm::dsvd:
            sel = dsvd_select(reduced, n_rf, options);
            break;
        case Algorithm::isvd:
            sel = isvd_select(reduced, n_rf, options);
            break;
        case Algorithm::mm:
            sel = mm_select(full, n_rf);
            break;
        case Algorithm::ia:
            sel = ia_select(full, n_rf, kRho, n0);
            break;
        case Algorithm::oracle:
            sel = exhaustive_select(reduced, n_rf, options);
            break;
        case Algorithm::fdzf:
            break;
        }
        scores.push_back({alg, score_selection(full, sel, cfg.metric, n0), sel.op_count});
    }
    return scores;
}

std::vector<SweepRow> run_sweep(const SimulationConfig &cfg)
{
    std::vector<SweepRow> rows;
    for (double value : sweep_points(cfg)) {
        const SimulationConfig point = at_sweep_point(cfg, value);
        const double snr = point.snr_db_list.front();
        const auto trials = static_cast<std::size_t>(point.trials);

        std::vector<std::vector<TrialScore>> results(trials);
        std::vector<std::exception_ptr> errors(trials);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t t = next++; t < trials; t = next++) {
                try {
                    results[t] = run_trial(point, t, snr);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
        };
        const auto workers = static_cast<std::size_t>(std::clamp(point.threads, 1, static_cast<int>(trials)));
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(worker);
        worker();
        pool.clear();

        // Report the failure of the lowest trial index, independent of scheduling.
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);

        for (std::size_t a = 0; a < point.algorithms.size(); ++a) {
            std::vector<double> rates(trials);
            std::vector<double> ops(trials);
            for (std::size_t t = 0; t < trials; ++t) {
                rates[t] = results[t][a].sum_rate;
                ops[t] = static_cast<double>(results[t][a].ops);
            }
            const Moments m = moments(rates);
            rows.push_back(SweepRow{point.sweep, value, point.algorithms[a], m.mean, m.std_dev, point.trials,
                                    point.master_seed, moments(ops).mean});
        }
    }
    return rows;
}

void emit_csv(std::span<const SweepRow> rows, std::ostream &out)
{
    out << kCsvHeader << '\n';
    for (const auto &r : rows) {
        out << to_string(r.sweep) << ',' << g6(r.value) << ',' << to_string(r.algorithm) << ','
            << g6(r.mean_sum_rate) << ',' << g6(r.std_dev) << ',' << r.trials << ',' << r.master_seed << ','
            << g6(r.mean_op_count) << '\n';
    }
}

void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path &destination)
{
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + destination.string() + "' for writing");
    emit_csv(rows, out);
    out.flush();
    if (!out)
        throw IoError("failed writing '" + destination.string() + "'");
}

} // namespace beamsel

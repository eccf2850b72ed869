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

#include "beamsel/errors.hpp"
#include "beamsel/rankone.hpp"
#include "beamsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace beamsel {

namespace {

// Criteria closer than this (relative) count as a tie; the earlier
// candidate, i.e. the lower beam id, is kept.
constexpr double kTieRelative = 1e-12;

bool beats(double candidate, double best)
{
    if (std::isinf(best))
        return true;
    return candidate > best + kTieRelative * std::max(1.0, std::abs(best));
}

void check_budget(const ReducedChannel &h, int n_rf)
{
    if (n_rf < 1 || n_rf > h.matrix.rows())
        throw InvalidBudget("selection budget N_RF=" + std::to_string(n_rf) + " outside [1, " +
                            std::to_string(h.matrix.rows()) + "]");
    if (static_cast<std::size_t>(h.matrix.rows()) != h.beam_ids.size())
        throw DimensionMismatch("reduced channel: beam id count does not match rows");
}

// Positions sorted by decreasing energy, ties to the lower position.
std::vector<Eigen::Index> by_energy(const RealVector &energy)
{
    std::vector<Eigen::Index> order(static_cast<std::size_t>(energy.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return energy[a] > energy[b]; });
    return order;
}

// Rank-one vector h with h h^H equal to a row's Gram contribution.
ComplexVector row_vector(const ComplexMatrix &m, Eigen::Index row) { return m.row(row).adjoint(); }

ComplexMatrix rows_except(const ComplexMatrix &m, const std::vector<Eigen::Index> &rows, std::size_t skip)
{
    ComplexMatrix out(static_cast<Eigen::Index>(rows.size() - 1), m.cols());
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (i != skip)
            out.row(r++) = m.row(rows[i]);
    return out;
}

} // namespace

ReducedChannel reduce_beams(const BeamspaceChannel &channel, int n)
{
    const auto m = channel.matrix.rows();
    if (n < 1 || n > m)
        throw InvalidBudget("reduce_beams: N=" + std::to_string(n) + " outside [1, " + std::to_string(m) + "]");

    const auto order = by_energy(row_energies(channel.matrix));
    std::vector<Eigen::Index> keep(order.begin(), order.begin() + n);
    std::sort(keep.begin(), keep.end());

    ReducedChannel out;
    out.matrix = select_rows(channel.matrix, keep);
    for (auto r : keep)
        out.beam_ids.push_back(channel.beam_ids[static_cast<std::size_t>(r)]);
    return out;
}

ReducedChannel as_reduced(const BeamspaceChannel &channel) { return ReducedChannel{channel.matrix, channel.beam_ids}; }

double criterion_sumrate(const RealVector &eigs, double power_scale, double n0) noexcept
{
    double sum = 0.0;
    for (double d : eigs)
        sum += std::log2(1.0 + power_scale * std::max(d, 0.0) / n0);
    return sum;
}

double power_scale(PowerConvention convention, double rho, int users, int iteration, int rows) noexcept
{
    switch (convention) {
    case PowerConvention::per_user:
        return rho / users;
    case PowerConvention::iteration:
        return rho / (iteration + 1);
    case PowerConvention::remaining:
        return rho / std::max(rows - iteration, 1);
    case PowerConvention::unit:
        return 1.0;
    }
    return rho / users;
}

ComplexMatrix rows_for_ids(const ComplexMatrix &matrix, const std::vector<BeamId> &ids,
                           const std::vector<BeamId> &wanted)
{
    std::vector<Eigen::Index> rows;
    rows.reserve(wanted.size());
    for (BeamId w : wanted) {
        const auto it = std::find(ids.begin(), ids.end(), w);
        if (it == ids.end())
            throw DimensionMismatch("beam id " + std::to_string(w) + " not present in channel");
        rows.push_back(static_cast<Eigen::Index>(it - ids.begin()));
    }
    return select_rows(matrix, rows);
}

double subset_criterion(const ReducedChannel &h, const std::vector<BeamId> &ids, double rho, double n0)
{
    const EigenSystem sys = hermitian_eig(gram(selected_rows(h, ids)));
    return criterion_sumrate(sys.values, rho / static_cast<double>(h.matrix.cols()), n0);
}

SelectionResult ssvd_select(const ReducedChannel &h, int n_rf)
{
    check_budget(h, n_rf);
    OpCounter ops;
    const auto order = by_energy(row_energies(h.matrix, &ops));
    SelectionResult result;
    for (int i = 0; i < n_rf; ++i)
        result.selected_ids.push_back(h.beam_ids[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    result.op_count = ops.count();
    return result;
}

SelectionResult dsvd_select(const ReducedChannel &h, int n_rf, const SelectionOptions &options)
{
    check_budget(h, n_rf);
    const int n = static_cast<int>(h.matrix.rows());
    const int users = static_cast<int>(h.matrix.cols());
    OpCounter ops;
    SelectionResult result;

    std::vector<Eigen::Index> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), Eigen::Index{0});

    EigenSystem current;
    if (options.mode == SelectionMode::fast && n > n_rf)
        current = hermitian_eig(gram(h.matrix, &ops), &ops);

    for (int iter = 0; iter < n - n_rf; ++iter) {
        const double scale = power_scale(options.power, options.rho, users, iter, n);
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_pos = 0;

        for (std::size_t j = 0; j < rows.size(); ++j) {
            RealVector eigs;
            if (options.mode == SelectionMode::fast)
                eigs = downdate_values(current, row_vector(h.matrix, rows[j]), &ops);
            else
                eigs = hermitian_eig(gram(rows_except(h.matrix, rows, j), &ops), &ops).values;
            const double value = criterion_sumrate(eigs, scale, options.n0);
            if (beats(value, best)) {
                best = value;
                best_pos = j;
            }
        }

        result.criterion_trace.push_back(best);
        const bool last = iter + 1 == n - n_rf;
        if (options.mode == SelectionMode::fast && !last)
            current = to_eigen_system(downdate_eigs(current, row_vector(h.matrix, rows[best_pos]), &ops));
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }

    for (auto r : rows)
        result.selected_ids.push_back(h.beam_ids[static_cast<std::size_t>(r)]);
    result.op_count = ops.count();
    return result;
}

SelectionResult isvd_select(const ReducedChannel &h, int n_rf, const SelectionOptions &options)
{
    check_budget(h, n_rf);
    const int n = static_cast<int>(h.matrix.rows());
    const Eigen::Index users = h.matrix.cols();
    OpCounter ops;
    SelectionResult result;

    std::vector<Eigen::Index> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), Eigen::Index{0});
    std::vector<Eigen::Index> chosen;

    // Gram of the empty selection: zero spectrum, canonical basis.
    EigenSystem current{RealVector::Zero(users), ComplexMatrix::Identity(users, users)};

    for (int iter = 0; iter < n_rf; ++iter) {
        const double scale = power_scale(options.power, options.rho, static_cast<int>(users), iter, n);
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_pos = 0;

        for (std::size_t j = 0; j < remaining.size(); ++j) {
            RealVector eigs;
            if (options.mode == SelectionMode::fast) {
                eigs = update_values(current, row_vector(h.matrix, remaining[j]), &ops);
            } else {
                std::vector<Eigen::Index> trial = chosen;
                trial.push_back(remaining[j]);
                eigs = hermitian_eig(gram(select_rows(h.matrix, trial), &ops), &ops).values;
            }
            const double value = criterion_sumrate(eigs, scale, options.n0);
            if (beats(value, best)) {
                best = value;
                best_pos = j;
            }
        }

        result.criterion_trace.push_back(best);
        const bool last = iter + 1 == n_rf;
        if (options.mode == SelectionMode::fast && !last)
            current = to_eigen_system(update_eigs(current, row_vector(h.matrix, remaining[best_pos]), &ops));
        chosen.push_back(remaining[best_pos]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }

    for (auto r : chosen)
        result.selected_ids.push_back(h.beam_ids[static_cast<std::size_t>(r)]);
    result.op_count = ops.count();
    return result;
}

std::string to_string(SelectionMode mode) { return mode == SelectionMode::fast ? "fast" : "naive"; }

std::string to_string(PowerConvention convention)
{
    switch (convention) {
    case PowerConvention::per_user:
        return "per_user";
    case PowerConvention::iteration:
        return "iteration";
    case PowerConvention::remaining:
        return "remaining";
    case PowerConvention::unit:
        return "unit";
    }
    return "per_user";
}

} // namespace beamsel

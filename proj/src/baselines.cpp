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
#include "beamsel/precoding.hpp"
#include "beamsel/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace beamsel {

namespace {

void check_user_budget(const BeamspaceChannel &h, int n_rf)
{
    const auto m = h.matrix.rows();
    const auto k = h.matrix.cols();
    if (n_rf < k || n_rf > m)
        throw InvalidBudget("N_RF=" + std::to_string(n_rf) + " must satisfy K=" + std::to_string(k) +
                            " <= N_RF <= M=" + std::to_string(m));
}

Eigen::Index strongest_beam(const ComplexMatrix &h, Eigen::Index user)
{
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index m = 0; m < h.rows(); ++m) {
        const double mag = std::norm(h(m, user));
        if (mag > best_mag) {
            best_mag = mag;
            best = m;
        }
    }
    return best;
}

// Beams of one user by decreasing gain, ties to the lower row.
std::vector<Eigen::Index> beams_by_gain(const ComplexMatrix &h, Eigen::Index user)
{
    std::vector<Eigen::Index> order(static_cast<std::size_t>(h.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::norm(h(a, user)) > std::norm(h(b, user)); });
    return order;
}

bool contains(const std::vector<Eigen::Index> &v, Eigen::Index x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Tops up `rows` to n_rf with the highest-energy unselected rows.
void fill_by_energy(const ComplexMatrix &h, std::vector<Eigen::Index> &rows, int n_rf, OpCounter &ops)
{
    if (static_cast<int>(rows.size()) >= n_rf)
        return;
    const RealVector energy = row_energies(h, &ops);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(h.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return energy[a] > energy[b]; });
    for (auto r : order) {
        if (static_cast<int>(rows.size()) >= n_rf)
            break;
        if (!contains(rows, r))
            rows.push_back(r);
    }
}

SelectionResult to_result(const BeamspaceChannel &h, const std::vector<Eigen::Index> &rows, const OpCounter &ops)
{
    SelectionResult result;
    for (auto r : rows)
        result.selected_ids.push_back(h.beam_ids[static_cast<std::size_t>(r)]);
    result.op_count = ops.count();
    return result;
}

double zf_rate(const ComplexMatrix &hs, double rho, double n0, OpCounter &ops)
{
    return sumrate_sinr(hs, zf_precoder(hs, rho, &ops), n0).sum_rate;
}

} // namespace

SelectionResult mm_select(const BeamspaceChannel &h, int n_rf)
{
    check_user_budget(h, n_rf);
    OpCounter ops;
    std::vector<Eigen::Index> rows;
    for (Eigen::Index k = 0; k < h.matrix.cols(); ++k) {
        const auto beam = strongest_beam(h.matrix, k);
        if (!contains(rows, beam))
            rows.push_back(beam);
    }
    ops.add(static_cast<std::uint64_t>(h.matrix.size()));
    fill_by_energy(h.matrix, rows, n_rf, ops);
    return to_result(h, rows, ops);
}

SelectionResult ia_select(const BeamspaceChannel &h, int n_rf, double rho, double n0)
{
    check_user_budget(h, n_rf);
    const ComplexMatrix &mat = h.matrix;
    const Eigen::Index users = mat.cols();
    OpCounter ops;

    std::vector<Eigen::Index> strongest(static_cast<std::size_t>(users));
    for (Eigen::Index k = 0; k < users; ++k)
        strongest[static_cast<std::size_t>(k)] = strongest_beam(mat, k);
    ops.add(static_cast<std::uint64_t>(mat.size()));

    // A shared beam is kept by the user with the largest gain on it.
    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> served;
    std::vector<Eigen::Index> pending;
    for (Eigen::Index k = 0; k < users; ++k) {
        const auto beam = strongest[static_cast<std::size_t>(k)];
        Eigen::Index owner = k;
        for (Eigen::Index other = 0; other < users; ++other)
            if (strongest[static_cast<std::size_t>(other)] == beam && std::norm(mat(beam, other)) > std::norm(mat(beam, owner)))
                owner = other;
        if (owner == k) {
            rows.push_back(beam);
            served.push_back(k);
        } else {
            pending.push_back(k);
        }
    }

    while (!pending.empty()) {
        double best = -std::numeric_limits<double>::infinity();
        Eigen::Index best_beam = -1;
        std::size_t best_user = 0;

        for (std::size_t u = 0; u < pending.size(); ++u) {
            const auto user = pending[u];
            std::vector<Eigen::Index> users_next = served;
            users_next.push_back(user);
            std::sort(users_next.begin(), users_next.end());

            int examined = 0;
            for (auto beam : beams_by_gain(mat, user)) {
                if (examined == kIaCandidatesPerUser)
                    break;
                if (contains(rows, beam))
                    continue;
                ++examined;
                std::vector<Eigen::Index> rows_next = rows;
                rows_next.push_back(beam);
                ComplexMatrix hs(static_cast<Eigen::Index>(rows_next.size()), static_cast<Eigen::Index>(users_next.size()));
                for (std::size_t r = 0; r < rows_next.size(); ++r)
                    for (std::size_t c = 0; c < users_next.size(); ++c)
                        hs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = mat(rows_next[r], users_next[c]);
                double rate = 0.0;
                try {
                    rate = zf_rate(hs, rho, n0, ops);
                } catch (const RankDeficient &) {
                    continue;
                }
                const bool better = rate > best || (rate == best && beam < best_beam);
                if (better) {
                    best = rate;
                    best_beam = beam;
                    best_user = u;
                }
            }
        }

        if (best_beam < 0) {
            // Every candidate was rank deficient: fall back to the strongest free beam.
            const auto user = pending.front();
            for (auto beam : beams_by_gain(mat, user)) {
                if (!contains(rows, beam)) {
                    best_beam = beam;
                    break;
                }
            }
            best_user = 0;
        }
        rows.push_back(best_beam);
        served.push_back(pending[best_user]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best_user));
    }

    fill_by_energy(mat, rows, n_rf, ops);
    return to_result(h, rows, ops);
}

std::uint64_t binomial(int n, int k) noexcept
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t acc = 1;
    for (int i = 1; i <= k; ++i) {
        const auto num = static_cast<std::uint64_t>(n - k + i);
        if (acc > std::numeric_limits<std::uint64_t>::max() / num)
            return std::numeric_limits<std::uint64_t>::max();
        acc = acc * num / static_cast<std::uint64_t>(i);
    }
    return acc;
}

SelectionResult exhaustive_select(const ReducedChannel &h, int n_rf, const SelectionOptions &options)
{
    const int n = static_cast<int>(h.matrix.rows());
    if (n_rf < 1 || n_rf > n)
        throw InvalidBudget("exhaustive_select: N_RF=" + std::to_string(n_rf) + " outside [1, " + std::to_string(n) +
                            "]");
    const std::uint64_t count = binomial(n, n_rf);
    if (count > 1000000)
        throw BudgetTooLarge("exhaustive_select: C(" + std::to_string(n) + ", " + std::to_string(n_rf) +
                             ") exceeds 1e6 subsets");

    const int users = static_cast<int>(h.matrix.cols());
    const double scale = power_scale(options.power, options.rho, users, 0, n);
    OpCounter ops;

    std::vector<Eigen::Index> subset(static_cast<std::size_t>(n_rf));
    std::iota(subset.begin(), subset.end(), Eigen::Index{0});
    std::vector<Eigen::Index> best_subset = subset;
    double best = -std::numeric_limits<double>::infinity();

    // Lexicographic enumeration; strict improvement keeps the first maximiser.
    while (true) {
        const RealVector eigs = hermitian_eig(gram(select_rows(h.matrix, subset), &ops), &ops).values;
        const double value = criterion_sumrate(eigs, scale, options.n0);
        if (value > best) {
            best = value;
            best_subset = subset;
        }
        int i = n_rf - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - n_rf + i)
            --i;
        if (i < 0)
            break;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n_rf; ++j)
            subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }

    SelectionResult result;
    for (auto r : best_subset)
        result.selected_ids.push_back(h.beam_ids[static_cast<std::size_t>(r)]);
    result.criterion_trace.push_back(best);
    result.op_count = ops.count();
    return result;
}

} // namespace beamsel

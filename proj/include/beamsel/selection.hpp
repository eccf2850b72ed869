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

#ifndef BEAMSEL_SELECTION_HPP
#define BEAMSEL_SELECTION_HPP

#include "beamsel/channel.hpp"
#include "beamsel/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace beamsel {

// Candidate eigenvalues come either from a full eigensolve per candidate
// (naive) or from rank-one secular updates of a retained eigensystem (fast).
enum class SelectionMode { naive, fast };

// Power factor applied to eigenvalues inside the greedy criterion at
// iteration i (0-based) with n rows in the working matrix.
enum class PowerConvention {
    per_user,  // rho / K
    iteration, // rho / (i + 1)
    remaining, // rho / (n - i)
    unit,      // 1
};

struct SelectionOptions {
    double rho = 1.0;
    double n0 = 1.0;
    SelectionMode mode = SelectionMode::fast;
    PowerConvention power = PowerConvention::per_user;
};

// The N strongest beams of a beamspace channel, in original beam order.
struct ReducedChannel {
    ComplexMatrix matrix;
    std::vector<BeamId> beam_ids;
};

struct SelectionResult {
    std::vector<BeamId> selected_ids;
    std::vector<double> criterion_trace; // best criterion per iteration, bits/s/Hz
    std::uint64_t op_count = 0;
};

// Keeps the N highest-energy rows (ties to the lower beam id), original
// order preserved. Throws InvalidBudget unless 1 <= N <= M.
ReducedChannel reduce_beams(const BeamspaceChannel &channel, int n);

// Whole channel viewed as a reduced channel (N = M).
ReducedChannel as_reduced(const BeamspaceChannel &channel);

// sum_k log2(1 + power_scale * d_k / N0); negative round-off counts as 0.
double criterion_sumrate(const RealVector &eigs, double power_scale, double n0) noexcept;

double power_scale(PowerConvention convention, double rho, int users, int iteration, int rows) noexcept;

// Rows of `matrix` whose ids (from `ids`) appear in `wanted`, in `wanted` order.
ComplexMatrix rows_for_ids(const ComplexMatrix &matrix, const std::vector<BeamId> &ids,
                           const std::vector<BeamId> &wanted);

template <typename Channel>
ComplexMatrix selected_rows(const Channel &channel, const std::vector<BeamId> &wanted)
{
    return rows_for_ids(channel.matrix, channel.beam_ids, wanted);
}

// criterion_sumrate of the Gram eigenvalues of the selected rows, rho / K scaling.
double subset_criterion(const ReducedChannel &h, const std::vector<BeamId> &ids, double rho, double n0);

/// Highest-energy rows: maximises the trace bound on the parallel-channel
/// sum-rate with a single scan. Ids are ordered by decreasing energy.
SelectionResult ssvd_select(const ReducedChannel &h, int n_rf);

/// Decremental selection: N - N_RF iterations, each removing the row whose
/// removal leaves the largest criterion. Remaining ids keep original order.
SelectionResult dsvd_select(const ReducedChannel &h, int n_rf, const SelectionOptions &options);

/// Incremental selection: N_RF iterations, each appending the row whose
/// addition gives the largest criterion. Ids are in selection order.
SelectionResult isvd_select(const ReducedChannel &h, int n_rf, const SelectionOptions &options);

// Strongest beam per user; collisions filled with the globally strongest
// unselected beams. Requires N_RF >= K.
SelectionResult mm_select(const BeamspaceChannel &h, int n_rf);

// Candidate beams examined per colliding user in ia_select.
inline constexpr int kIaCandidatesPerUser = 4;

/// Interference-aware selection. Users whose strongest beam is unique keep
/// it; a shared beam stays with the user seeing it strongest. Each remaining
/// user then receives, one at a time, the candidate beam (among its strongest
/// unselected beams) maximising the zero-forcing sum-rate of the tentative
/// selection over the users served so far. Leftover budget is filled as in
/// mm_select.
SelectionResult ia_select(const BeamspaceChannel &h, int n_rf, double rho, double n0);

// Brute force over all N_RF-subsets; ties go to the lexicographically smallest
// id set. Throws BudgetTooLarge when C(N, N_RF) > 1e6.
SelectionResult exhaustive_select(const ReducedChannel &h, int n_rf, const SelectionOptions &options);

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k) noexcept;

std::string to_string(SelectionMode mode);
std::string to_string(PowerConvention convention);

} // namespace beamsel

#endif

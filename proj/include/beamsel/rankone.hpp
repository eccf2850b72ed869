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

#ifndef BEAMSEL_RANKONE_HPP
#define BEAMSEL_RANKONE_HPP

#include "beamsel/linalg.hpp"

#include <vector>

namespace beamsel {

// downdate: D - z z^H (a row leaves the Gram matrix)
// update:   D + z z^H (a row joins the Gram matrix)
enum class Direction { downdate, update };

// Rank-one modification of diag(poles). Weights are |z_i|^2.
// Poles carrying a positive weight must be strictly descending; components
// with weight exactly 0 are treated as already deflated.
struct SecularProblem {
    RealVector poles;
    RealVector weights;
    Direction direction = Direction::downdate;
};

struct UpdateResult {
    RealVector new_values;           // descending
    ComplexMatrix new_vectors;       // V Q, orthonormal columns
    std::vector<Eigen::Index> deflated_indices; // positions in the input system
};

// 1 - sum w_i / (d_i - x) for a downdate, 1 + sum w_i / (d_i - x) for an update.
double secular_function(const SecularProblem &problem, double x);

/// Roots of the secular equation, one per interlacing bracket, descending.
///
/// Downdate roots lie in (d_{k+1}, d_k) with d_{K+1} = d_K - sum(w); update
/// roots lie in (d_k, d_{k-1}) with d_0 = d_1 + sum(w). Each bracket is solved
/// by bisection on the offset from its nearer pole so that roots hugging a
/// pole keep full relative accuracy in (d_i - root).
///
/// Throws BracketFailure when the problem breaks its preconditions.
RealVector secular_roots(const SecularProblem &problem, OpCounter *ops = nullptr);

// (D - root I)^{-1} z normalised. Throws SingularShift when root sits within
// 1e-14 |d_i| of a pole whose z_i is nonzero.
ComplexVector eigvec_from_root(const RealVector &poles, const ComplexVector &z, double root,
                               OpCounter *ops = nullptr);

// Secular problem left after projecting h onto the eigenbasis (z = V^H h),
// merging coincident poles and dropping components with
// |z_i| <= 1e-12 ||z||. Only the surviving (non-deflated) components remain.
SecularProblem reduced_secular_problem(const EigenSystem &sys, const ComplexVector &h, Direction direction,
                                       OpCounter *ops = nullptr);

// Eigensystem of V D V^H - h h^H.
UpdateResult downdate_eigs(const EigenSystem &sys, const ComplexVector &h, OpCounter *ops = nullptr);

// Eigensystem of V D V^H + h h^H.
UpdateResult update_eigs(const EigenSystem &sys, const ComplexVector &h, OpCounter *ops = nullptr);

// Eigenvalues only; skips eigenvector formation. Bit-identical to the
// new_values of the corresponding *_eigs call.
RealVector downdate_values(const EigenSystem &sys, const ComplexVector &h, OpCounter *ops = nullptr);
RealVector update_values(const EigenSystem &sys, const ComplexVector &h, OpCounter *ops = nullptr);

inline EigenSystem to_eigen_system(UpdateResult result)
{
    return EigenSystem{std::move(result.new_values), std::move(result.new_vectors)};
}

} // namespace beamsel

#endif

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

#ifndef BEAMSEL_LINALG_HPP
#define BEAMSEL_LINALG_HPP

#include "beamsel/op_counter.hpp"

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace beamsel {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Eigen-decomposition of a K x K Hermitian (Gram) matrix.
// values are sorted descending; vectors has orthonormal columns, column k
// belonging to values[k].
struct EigenSystem {
    RealVector values;
    ComplexMatrix vectors;

    Eigen::Index dim() const noexcept { return values.size(); }
};

// Nominal multiply-add cost charged for one dense Hermitian eigensolve of
// order K (tridiagonal QR with eigenvector accumulation, ~9 K^3).
std::uint64_t hermitian_eig_cost(Eigen::Index k) noexcept;

// H^H H, counted as rows * cols * cols multiply-adds (full matrix formed).
ComplexMatrix gram(const ComplexMatrix &h, OpCounter *ops = nullptr);

// Throws NonHermitianInput when max |G - G^H| exceeds 1e-12 * max(1, max |G|).
EigenSystem hermitian_eig(const ComplexMatrix &g, OpCounter *ops = nullptr);

// Squared 2-norm of every row.
RealVector row_energies(const ComplexMatrix &h, OpCounter *ops = nullptr);

double frobenius_norm2(const ComplexMatrix &h) noexcept;

// Sets eigenvalues in [-1e-10 * d_1, 0) to zero. Larger negative values are
// left untouched for the caller to diagnose.
void clamp_psd(RealVector &values) noexcept;

// V diag(d) V^H
ComplexMatrix reconstruct(const EigenSystem &sys);

// || V^H V - I ||_F
double orthonormality_error(const ComplexMatrix &v);

bool all_finite(const ComplexMatrix &h) noexcept;

// Row subset in the given order.
ComplexMatrix select_rows(const ComplexMatrix &h, const std::vector<Eigen::Index> &rows);

} // namespace beamsel

#endif

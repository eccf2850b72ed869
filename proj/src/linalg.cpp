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

#include "beamsel/linalg.hpp"

#include "beamsel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace beamsel {

std::uint64_t hermitian_eig_cost(Eigen::Index k) noexcept
{
    const auto n = static_cast<std::uint64_t>(k);
    return 9 * n * n * n;
}

ComplexMatrix gram(const ComplexMatrix &h, OpCounter *ops)
{
    const Eigen::Index rows = h.rows();
    const Eigen::Index cols = h.cols();
    ComplexMatrix g = ComplexMatrix::Zero(cols, cols);
    for (Eigen::Index i = 0; i < cols; ++i) {
        for (Eigen::Index j = i; j < cols; ++j) {
            Complex acc{0.0, 0.0};
            for (Eigen::Index n = 0; n < rows; ++n)
                acc += std::conj(h(n, i)) * h(n, j);
            g(i, j) = acc;
            g(j, i) = std::conj(acc);
        }
        g(i, i) = Complex(g(i, i).real(), 0.0);
    }
    tally(ops, static_cast<std::uint64_t>(rows * cols * cols));
    return g;
}

EigenSystem hermitian_eig(const ComplexMatrix &g, OpCounter *ops)
{
    if (g.rows() != g.cols())
        throw DimensionMismatch("hermitian_eig: matrix is " + std::to_string(g.rows()) + "x" +
                                std::to_string(g.cols()));
    if (!all_finite(g))
        throw NonHermitianInput("hermitian_eig: non-finite entry");

    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    const double asym = (g - g.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw NonHermitianInput("hermitian_eig: asymmetry " + std::to_string(asym) + " exceeds tolerance");

    const Eigen::Index k = g.rows();
    tally(ops, hermitian_eig_cost(k));

    // The solver reads only the lower triangle; symmetrise so both halves agree.
    const ComplexMatrix sym = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericalError("hermitian_eig: solver did not converge");

    // Ascending from the solver; stable reversal keeps the solver's tie order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return solver.eigenvalues()[a] > solver.eigenvalues()[b];
    });

    EigenSystem sys;
    sys.values.resize(k);
    sys.vectors.resize(k, k);
    for (Eigen::Index c = 0; c < k; ++c) {
        sys.values[c] = solver.eigenvalues()[order[static_cast<std::size_t>(c)]];
        sys.vectors.col(c) = solver.eigenvectors().col(order[static_cast<std::size_t>(c)]);
    }
    clamp_psd(sys.values);
    return sys;
}

RealVector row_energies(const ComplexMatrix &h, OpCounter *ops)
{
    RealVector e(h.rows());
    for (Eigen::Index r = 0; r < h.rows(); ++r)
        e[r] = h.row(r).squaredNorm();
    tally(ops, static_cast<std::uint64_t>(h.rows() * h.cols()));
    return e;
}

double frobenius_norm2(const ComplexMatrix &h) noexcept { return h.squaredNorm(); }

void clamp_psd(RealVector &values) noexcept
{
    if (values.size() == 0)
        return;
    const double top = std::max(values.maxCoeff(), 0.0);
    for (auto &v : values) {
        if (v < 0.0 && v >= -1e-10 * top)
            v = 0.0;
    }
}

ComplexMatrix reconstruct(const EigenSystem &sys)
{
    return sys.vectors * sys.values.cast<Complex>().asDiagonal() * sys.vectors.adjoint();
}

double orthonormality_error(const ComplexMatrix &v)
{
    const ComplexMatrix gap = v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols());
    return gap.norm();
}

bool all_finite(const ComplexMatrix &h) noexcept
{
    for (Eigen::Index j = 0; j < h.cols(); ++j)
        for (Eigen::Index i = 0; i < h.rows(); ++i)
            if (!std::isfinite(h(i, j).real()) || !std::isfinite(h(i, j).imag()))
                return false;
    return true;
}

ComplexMatrix select_rows(const ComplexMatrix &h, const std::vector<Eigen::Index> &rows)
{
    ComplexMatrix out(static_cast<Eigen::Index>(rows.size()), h.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        out.row(static_cast<Eigen::Index>(r)) = h.row(rows[r]);
    return out;
}

} // namespace beamsel

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

#include "beamsel/precoding.hpp"

#include "beamsel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beamsel {

namespace {
constexpr double kMaxCondition = 1e12;
constexpr double kNullSingular = 1e-14;
} // namespace

double noise_from_snr_db(double snr_db) noexcept { return std::pow(10.0, -snr_db / 10.0); }

Precoder zf_precoder(const ComplexMatrix &hs, double rho, OpCounter *ops)
{
    const Eigen::Index n = hs.rows();
    const Eigen::Index k = hs.cols();
    if (n < k)
        throw RankDeficient("zf_precoder: " + std::to_string(n) + " beams cannot null " + std::to_string(k) +
                            " users");

    const EigenSystem sys = hermitian_eig(gram(hs, ops), ops);
    const double top = sys.values[0];
    const double bottom = sys.values[k - 1];
    if (!(bottom > 0.0) || top / bottom > kMaxCondition)
        throw RankDeficient("zf_precoder: Gram condition number exceeds 1e12");

    const RealVector inv = sys.values.cwiseInverse();
    const ComplexMatrix gram_inv = sys.vectors * inv.cast<Complex>().asDiagonal() * sys.vectors.adjoint();
    tally(ops, static_cast<std::uint64_t>(k * k * k + n * k * k));

    const double c = std::sqrt(rho / inv.sum());
    return Precoder{c * (hs * gram_inv), rho};
}

Precoder svd_precoder(const ComplexMatrix &hs, double rho, OpCounter *ops)
{
    const Eigen::Index n = hs.rows();
    const Eigen::Index k = hs.cols();
    if (n < k)
        throw DimensionMismatch("svd_precoder: need at least as many beams as users");

    const EigenSystem sys = hermitian_eig(gram(hs, ops), ops);
    const double floor = kNullSingular * std::max(sys.values[0], 0.0);

    ComplexMatrix u(n, k);
    Eigen::Index filled = 0;
    for (; filled < k && sys.values[filled] > floor; ++filled)
        u.col(filled) = hs * sys.vectors.col(filled) / std::sqrt(sys.values[filled]);
    tally(ops, static_cast<std::uint64_t>(n * k * filled));

    // Null directions: complete the basis from canonical vectors.
    for (Eigen::Index e = 0; filled < k && e < n; ++e) {
        ComplexVector cand = ComplexVector::Unit(n, e);
        for (Eigen::Index j = 0; j < filled; ++j)
            cand -= u.col(j).dot(cand) * u.col(j);
        const double norm = cand.norm();
        if (norm > 1e-8)
            u.col(filled++) = cand / norm;
    }

    return Precoder{std::sqrt(rho / static_cast<double>(k)) * u, rho};
}

double sinr(const ComplexMatrix &hs, const Precoder &p, Eigen::Index user, double n0)
{
    if (hs.rows() != p.matrix.rows() || hs.cols() != p.matrix.cols())
        throw DimensionMismatch("sinr: channel and precoder shapes differ");
    const ComplexVector gains = p.matrix.adjoint() * hs.col(user); // conj(h_k^H p_i)
    double interference = 0.0;
    for (Eigen::Index i = 0; i < gains.size(); ++i)
        if (i != user)
            interference += std::norm(gains[i]);
    return std::norm(gains[user]) / (interference + n0);
}

RateReport sumrate_sinr(const ComplexMatrix &hs, const Precoder &p, double n0)
{
    RateReport report;
    report.metric = RateMetric::zf;
    for (Eigen::Index k = 0; k < hs.cols(); ++k) {
        const double rate = std::log2(1.0 + sinr(hs, p, k, n0));
        report.per_user_rates.push_back(rate);
        report.sum_rate += rate;
    }
    return report;
}

RateReport sumrate_parallel(const RealVector &eigs, double rho, int users, double n0)
{
    RateReport report;
    report.metric = RateMetric::parallel;
    const double scale = rho / (static_cast<double>(users) * n0);
    for (double d : eigs) {
        const double rate = std::log2(1.0 + scale * std::max(d, 0.0));
        report.per_user_rates.push_back(rate);
        report.sum_rate += rate;
    }
    return report;
}

} // namespace beamsel

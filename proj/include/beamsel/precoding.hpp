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

#ifndef BEAMSEL_PRECODING_HPP
#define BEAMSEL_PRECODING_HPP

#include "beamsel/linalg.hpp"

#include <vector>

namespace beamsel {

enum class RateMetric { zf, parallel };

// N_RF x K precoding matrix P with trace(P^H P) = power.
struct Precoder {
    ComplexMatrix matrix;
    double power = 1.0;
};

struct RateReport {
    std::vector<double> per_user_rates; // bits/s/Hz
    double sum_rate = 0.0;
    RateMetric metric = RateMetric::parallel;
};

// Noise variance for unit transmit power: N0 = 10^(-snr_db / 10).
double noise_from_snr_db(double snr_db) noexcept;

/// Zero-forcing precoder c * Hs (Hs^H Hs)^{-1}, with c fixed by the power
/// budget so Hs^H P = c I.
///
/// Hs holds the selected beams as rows (N_RF x K). Throws RankDeficient when
/// N_RF < K or the Gram condition number exceeds 1e12.
Precoder zf_precoder(const ComplexMatrix &hs, double rho, OpCounter *ops = nullptr);

// sqrt(rho / K) times the K leading left singular vectors of Hs.
Precoder svd_precoder(const ComplexMatrix &hs, double rho, OpCounter *ops = nullptr);

// |h_k^H p_k|^2 / (sum_{i != k} |h_k^H p_i|^2 + N0), h_k = column k of Hs.
double sinr(const ComplexMatrix &hs, const Precoder &p, Eigen::Index user, double n0);

RateReport sumrate_sinr(const ComplexMatrix &hs, const Precoder &p, double n0);

// Parallel-channel rates log2(1 + rho d_k / (K N0)) over the given Gram
// eigenvalues; negative round-off is treated as zero.
RateReport sumrate_parallel(const RealVector &eigs, double rho, int users, double n0);

} // namespace beamsel

#endif

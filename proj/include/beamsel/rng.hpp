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

#ifndef BEAMSEL_RNG_HPP
#define BEAMSEL_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace beamsel {

// SplitMix64 finaliser; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seeded random stream. Trial t of a sweep uses Rng::for_trial(seed, t), so
// its draws depend only on (master seed, t) and not on execution order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index);

    double uniform(double low, double high);
    double normal();
    // CN(0, variance): real and imaginary parts N(0, variance / 2).
    std::complex<double> complex_normal(double variance);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace beamsel

#endif

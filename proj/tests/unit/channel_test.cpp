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

#include "beamsel/channel.hpp"
#include "beamsel/errors.hpp"
#include "beamsel/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace beamsel;

namespace {

Complex expected_entry(int m, double phi, int i)
{
    const double idx = i - (m - 1) / 2.0;
    return std::exp(Complex(0.0, -2.0 * std::numbers::pi * phi * idx)) / std::sqrt(static_cast<double>(m));
}

} // namespace

TEST_SUITE("channel") {

TEST_CASE("steering vector entries")
{
    auto a = steering_vector(1, 0.37);
    REQUIRE(a.size() == 1);
    CHECK(std::abs(a[0] - Complex(1.0)) < 1e-15);

    a = steering_vector(2, 0.0);
    CHECK(std::abs(a[0] - Complex(1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(a[1] - Complex(1.0 / std::sqrt(2.0))) < 1e-15);

    a = steering_vector(4, 0.25);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(a[i] - expected_entry(4, 0.25, i)) < 1e-14);

    for (int m : {3, 16, 64})
        CHECK(std::abs(steering_vector(m, -0.31).norm() - 1.0) < 1e-12);
}

TEST_CASE("DFT codebook layout and unitarity")
{
    CHECK(std::abs(dft_codebook(1)(0, 0) - Complex(1.0)) < 1e-15);

    const ComplexMatrix u2 = dft_codebook(2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(u2(0, 0) - s * std::exp(Complex(0.0, std::numbers::pi / 4))) < 1e-14);
    CHECK(std::abs(u2(0, 1) - s * std::exp(Complex(0.0, -std::numbers::pi / 4))) < 1e-14);
    CHECK((u2.adjoint() * u2 - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);

    const ComplexMatrix u16 = dft_codebook(16);
    CHECK((u16.adjoint() * u16 - ComplexMatrix::Identity(16, 16)).norm() <= 1e-12);
    for (int m = 1; m <= 16; ++m) {
        const double phi = (m - 17.0 / 2.0) / 16.0;
        for (int i = 0; i < 16; ++i)
            CHECK(std::abs(u16(m - 1, i) - std::conj(expected_entry(16, phi, i))) < 1e-13);
    }
}

TEST_CASE("LoS-only path with unit gain at broadside")
{
    UserPaths p;
    p.los = {Complex(1.0), 0.0};
    const ComplexVector g = channel_from_paths(8, p);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(g[i] - Complex(1.0 / std::sqrt(8.0))) < 1e-15);
}

TEST_CASE("scattered paths are scaled by one over sqrt of their count")
{
    UserPaths p;
    p.los = {Complex(0.0), 0.0};
    p.scattered = {{Complex(2.0), 0.1}, {Complex(0.0, 1.0), -0.2}, {Complex(-1.0), 0.3}, {Complex(0.5), 0.0}};
    ComplexVector expect = ComplexVector::Zero(6);
    for (const auto &s : p.scattered)
        for (int i = 0; i < 6; ++i)
            expect[i] += s.gain * expected_entry(6, s.direction, i) / 2.0;
    CHECK((channel_from_paths(6, p) - expect).norm() < 1e-14);
}

TEST_CASE("spatial channel is deterministic for a fixed seed")
{
    ChannelConfig cfg;
    Rng a(99);
    Rng b(99);
    CHECK(spatial_channel(cfg, a) == spatial_channel(cfg, b));

    Rng c = Rng::for_trial(5, 3);
    Rng d = Rng::for_trial(5, 3);
    const auto hc = generate_beamspace_channel(cfg, c);
    const auto hd = generate_beamspace_channel(cfg, d);
    CHECK(hc.matrix == hd.matrix);

    Rng e = Rng::for_trial(5, 4);
    CHECK_FALSE(generate_beamspace_channel(cfg, e).matrix == hc.matrix);
}

TEST_CASE("drawn directions and gains follow the configuration")
{
    ChannelConfig cfg;
    cfg.angle_low = -0.2;
    cfg.angle_high = 0.1;
    Rng rng(1);
    for (int rep = 0; rep < 200; ++rep) {
        const auto paths = draw_paths(cfg, rng);
        CHECK(paths.scattered.size() == static_cast<std::size_t>(cfg.clusters * cfg.rays));
        CHECK(paths.los.direction >= -0.2);
        CHECK(paths.los.direction <= 0.1);
        for (const auto &s : paths.scattered) {
            CHECK(s.direction >= -0.2);
            CHECK(s.direction <= 0.1);
        }
    }
}

TEST_CASE("mean channel power equals the sum of gain variances")
{
    ChannelConfig cfg;
    cfg.antennas = 16;
    cfg.users = 1;
    Rng rng(2024);
    constexpr int draws = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double p = spatial_channel(cfg, rng).squaredNorm();
        sum += p;
        sum2 += p * p;
    }
    const double mean = sum / draws;
    const double var = (sum2 - draws * mean * mean) / (draws - 1);
    const double stderr_mean = std::sqrt(var / draws);
    CHECK(std::abs(mean - (cfg.los_gain_var + cfg.nlos_gain_var)) <= 3.0 * stderr_mean);
}

TEST_CASE("beamspace transform")
{
    std::mt19937_64 gen(6);
    const ComplexMatrix g = oracle::random_matrix(8, 3, gen);

    auto h = beamspace_transform(ComplexMatrix::Identity(8, 8), g);
    CHECK(h.matrix == g);
    REQUIRE(h.beam_ids.size() == 8);
    for (int m = 0; m < 8; ++m)
        CHECK(h.beam_ids[static_cast<std::size_t>(m)] == m + 1);

    const ComplexMatrix u = dft_codebook(8);
    h = beamspace_transform(u, g);
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(h.matrix.col(k).norm() - g.col(k).norm()) <= 1e-12);

    // A steering vector on grid point m lands on beam m only.
    for (int m = 1; m <= 8; ++m) {
        const double phi = (m - 4.5) / 8.0;
        const auto e = beamspace_transform(u, steering_vector(8, phi));
        for (int r = 0; r < 8; ++r)
            CHECK(std::abs(e.matrix(r, 0) - Complex(r == m - 1 ? 1.0 : 0.0)) < 1e-12);
    }

    CHECK_THROWS_AS(beamspace_transform(u, oracle::random_matrix(7, 2, gen)), DimensionMismatch);
}

TEST_CASE("generated channels preserve energy")
{
    ChannelConfig cfg;
    cfg.antennas = 64;
    cfg.users = 8;
    for (std::uint64_t t = 0; t < 50; ++t) {
        Rng a = Rng::for_trial(7, t);
        Rng b = Rng::for_trial(7, t);
        const ComplexMatrix g = spatial_channels(cfg, a);
        const auto h = generate_beamspace_channel(cfg, b);
        CHECK(std::abs(h.matrix.squaredNorm() - g.squaredNorm()) <= 1e-12 * std::max(1.0, g.squaredNorm()));
    }
}

TEST_CASE("LoS energy concentrates on a few beams")
{
    ChannelConfig cfg;
    cfg.antennas = 64;
    cfg.users = 1;
    cfg.clusters = 0;
    const int top = (cfg.antennas + 15) / 16;
    double share = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng = Rng::for_trial(31, t);
        const auto h = generate_beamspace_channel(cfg, rng);
        std::vector<double> e(static_cast<std::size_t>(cfg.antennas));
        for (int m = 0; m < cfg.antennas; ++m)
            e[static_cast<std::size_t>(m)] = std::norm(h.matrix(m, 0));
        std::sort(e.begin(), e.end(), std::greater<>());
        double total = 0.0;
        double head = 0.0;
        for (std::size_t m = 0; m < e.size(); ++m) {
            total += e[m];
            if (m < static_cast<std::size_t>(top))
                head += e[m];
        }
        share += head / total;
    }
    CHECK(share / 100.0 >= 0.8);
}

TEST_CASE("invalid channel configurations")
{
    ChannelConfig cfg;
    cfg.antennas = 4;
    cfg.users = 5;
    CHECK_THROWS_AS(cfg.validate(), ConstraintError);
    cfg = {};
    cfg.angle_low = 0.2;
    cfg.angle_high = 0.1;
    CHECK_THROWS_AS(cfg.validate(), ConstraintError);
    cfg = {};
    cfg.angle_high = 0.7;
    CHECK_THROWS_AS(cfg.validate(), ConstraintError);
    cfg = {};
    cfg.rays = 0;
    CHECK_THROWS_AS(cfg.validate(), ConstraintError);
    cfg.clusters = 0;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("complex normal draws have the requested variance")
{
    Rng rng(17);
    double re2 = 0.0;
    double im2 = 0.0;
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i) {
        const auto z = rng.complex_normal(0.1);
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
    }
    // Each part has variance 0.05; the standard error of its mean square is 0.05 * sqrt(2 / n).
    CHECK(std::abs(re2 / n - 0.05) < 4 * 0.05 * std::sqrt(2.0 / n));
    CHECK(std::abs(im2 / n - 0.05) < 4 * 0.05 * std::sqrt(2.0 / n));
}

}

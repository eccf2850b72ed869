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

#include <cmath>
#include <numbers>
#include <algorithm>
#include <string>

namespace beamsel {

void ChannelConfig::validate() const
{
    if (users < 1)
        throw ConstraintError("K >= 1 violated (K=" + std::to_string(users) + ")");
    if (antennas < users)
        throw ConstraintError("M >= K violated (M=" + std::to_string(antennas) + ", K=" + std::to_string(users) + ")");
    if (clusters < 0)
        throw ConstraintError("N_cl >= 0 violated");
    if (clusters >= 1 && rays < 1)
        throw ConstraintError("N_ray >= 1 required when N_cl >= 1");
    if (!(los_gain_var >= 0.0) || !(nlos_gain_var >= 0.0))
        throw ConstraintError("gain variances must be non-negative");
    if (!(angle_low < angle_high))
        throw ConstraintError("angle_low < angle_high violated");
    if (angle_low < -0.5 || angle_high > 0.5)
        throw ConstraintError("angle range must lie within [-0.5, 0.5]");
}

ComplexVector steering_vector(int antennas, double phi)
{
    const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
    const double centre = 0.5 * (antennas - 1);
    ComplexVector a(antennas);
    for (int n = 0; n < antennas; ++n) {
        const double idx = n - centre;
        a[n] = scale * std::polar(1.0, -2.0 * std::numbers::pi * phi * idx);
    }
    return a;
}

ComplexMatrix dft_codebook(int antennas)
{
    ComplexMatrix u(antennas, antennas);
    for (int m = 1; m <= antennas; ++m) {
        const double phi = (m - 0.5 * (antennas + 1)) / antennas;
        u.row(m - 1) = steering_vector(antennas, phi).adjoint();
    }
    return u;
}

ComplexVector channel_from_paths(int antennas, const UserPaths &paths)
{
    ComplexVector g = paths.los.gain * steering_vector(antennas, paths.los.direction);
    if (!paths.scattered.empty()) {
        ComplexVector sum = ComplexVector::Zero(antennas);
        for (const auto &p : paths.scattered)
            sum += p.gain * steering_vector(antennas, p.direction);
        g += sum / std::sqrt(static_cast<double>(paths.scattered.size()));
    }
    return g;
}

UserPaths draw_paths(const ChannelConfig &cfg, Rng &rng)
{
    UserPaths paths;
    paths.los.gain = rng.complex_normal(cfg.los_gain_var);
    paths.los.direction = rng.uniform(cfg.angle_low, cfg.angle_high);
    const int count = cfg.clusters * cfg.rays;
    paths.scattered.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int c = 0; c < cfg.clusters; ++c) {
        for (int r = 0; r < cfg.rays; ++r) {
            PropagationPath p;
            p.gain = rng.complex_normal(cfg.nlos_gain_var);
            p.direction = rng.uniform(cfg.angle_low, cfg.angle_high);
            paths.scattered.push_back(p);
        }
    }
    return paths;
}

ComplexVector spatial_channel(const ChannelConfig &cfg, Rng &rng)
{
    return channel_from_paths(cfg.antennas, draw_paths(cfg, rng));
}

ComplexMatrix spatial_channels(const ChannelConfig &cfg, Rng &rng)
{
    ComplexMatrix g(cfg.antennas, cfg.users);
    for (int k = 0; k < cfg.users; ++k)
        g.col(k) = spatial_channel(cfg, rng);
    return g;
}

BeamspaceChannel beamspace_transform(const ComplexMatrix &codebook, const ComplexMatrix &spatial)
{
    if (codebook.rows() != codebook.cols() || codebook.cols() != spatial.rows())
        throw DimensionMismatch("beamspace_transform: codebook " + std::to_string(codebook.rows()) + "x" +
                                std::to_string(codebook.cols()) + " vs channel " + std::to_string(spatial.rows()) +
                                "x" + std::to_string(spatial.cols()));
    BeamspaceChannel out;
    out.matrix = codebook * spatial;
    out.beam_ids.resize(static_cast<std::size_t>(codebook.rows()));
    for (std::size_t m = 0; m < out.beam_ids.size(); ++m)
        out.beam_ids[m] = static_cast<BeamId>(m + 1);
    return out;
}

BeamspaceChannel generate_beamspace_channel(const ChannelConfig &cfg, Rng &rng)
{
    cfg.validate();
    return beamspace_transform(dft_codebook(cfg.antennas), spatial_channels(cfg, rng));
}

} // namespace beamsel

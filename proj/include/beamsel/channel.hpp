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

#ifndef BEAMSEL_CHANNEL_HPP
#define BEAMSEL_CHANNEL_HPP

#include "beamsel/linalg.hpp"
#include "beamsel/rng.hpp"

#include <vector>

namespace beamsel {

// 1-based index of a beam (row) in the full M-beam codebook.
using BeamId = int;

// Geometric clustered channel: one LoS path plus clusters x rays scattered
// paths per user. Directions are spatial frequencies phi = (d / lambda) sin(theta).
struct ChannelConfig {
    int antennas = 256;         // M
    int users = 24;             // K
    int clusters = 2;           // N_cl
    int rays = 5;               // N_ray
    double los_gain_var = 1.0;  // LoS gain ~ CN(0, los_gain_var)
    double nlos_gain_var = 0.1; // scattered gains ~ CN(0, nlos_gain_var)
    double angle_low = -0.5;
    double angle_high = 0.5;

    // Throws ConstraintError naming the violated condition.
    void validate() const;
};

struct PropagationPath {
    Complex gain;
    double direction;
};

struct UserPaths {
    PropagationPath los;
    std::vector<PropagationPath> scattered; // clusters * rays entries
};

// Beamspace channel: rows are beams, columns users.
struct BeamspaceChannel {
    ComplexMatrix matrix;
    std::vector<BeamId> beam_ids;
};

/// Array response a(phi) of an M-element uniform linear array, using the
/// centred index set i - (M - 1) / 2 for i = 0..M-1.
ComplexVector steering_vector(int antennas, double phi);

/// Lens-array DFT matrix: row m is a(phi_m)^H with phi_m = (m - (M + 1) / 2) / M
/// for m = 1..M. Unitary.
ComplexMatrix dft_codebook(int antennas);

// LoS term plus scattered sum scaled by 1 / sqrt(#scattered).
ComplexVector channel_from_paths(int antennas, const UserPaths &paths);

UserPaths draw_paths(const ChannelConfig &cfg, Rng &rng);

// One user's spatial channel g_k.
ComplexVector spatial_channel(const ChannelConfig &cfg, Rng &rng);

// M x K matrix [g_1 ... g_K], users drawn in order.
ComplexMatrix spatial_channels(const ChannelConfig &cfg, Rng &rng);

// Columns U g_k; beam ids 1..M. Throws DimensionMismatch.
BeamspaceChannel beamspace_transform(const ComplexMatrix &codebook, const ComplexMatrix &spatial);

BeamspaceChannel generate_beamspace_channel(const ChannelConfig &cfg, Rng &rng);

} // namespace beamsel

#endif

// SPDX-License-Identifier: Apache-2.0
//
// egbsm: extended geometry-based stochastic channel simulator
// Copyright (C) 2026 The egbsm authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "egbsm/antenna.hpp"
#include "egbsm/geometry.hpp"

namespace egbsm {

/// One resolvable ray between a tx element and an rx element. The amplitude already
/// contains element patterns, the polarization matrix and array phase terms.
struct PropagationPath {
    int cluster_id = 0;
    int ray_id = 0;
    double delay = 0.0;  ///< seconds
    cdouble amplitude{0.0, 0.0};
    DirectionPair departure;
    DirectionPair arrival;
    double doppler = 0.0;  ///< Hz

    bool operator==(const PropagationPath &) const = default;
};

struct ClusterInfo {
    int id = 0;
    double power = 0.0;   ///< normalized, pre path loss
    double delay = 0.0;   ///< excess delay of the cluster, seconds
    bool active = true;   ///< false once pruned; inactive clusters carry no paths
    int shared_with = -1; ///< id of the bound communication cluster, -1 if not shared

    bool operator==(const ClusterInfo &) const = default;
};

struct LargeScaleRecord {
    bool los = false;
    double path_loss_db = 0.0;
    double shadow_fading_db = 0.0;
    double k_factor_db = 0.0;
    double delay_spread = 0.0;  ///< s
    double asd = 0.0, asa = 0.0, zsd = 0.0, zsa = 0.0;  ///< degrees
    double distance_3d = 0.0;

    bool operator==(const LargeScaleRecord &) const = default;
};

enum class DelayMode { relative, absolute };

enum class LinkKind : std::uint8_t { communication = 0, tx_node = 1, node_rx = 2, concatenated = 3 };

const char *to_string(LinkKind kind);

struct ChannelRealization {
    LinkKind kind = LinkKind::communication;
    double carrier_hz = 0.0;
    DelayMode delay_mode = DelayMode::relative;
    std::size_t n_tx = 0;
    std::size_t n_rx = 0;
    Position3 tx_position;
    Position3 rx_position;
    std::vector<ClusterInfo> clusters;
    /// paths[rx * n_tx + tx]; every list has the same ray ordering.
    std::vector<std::vector<PropagationPath>> paths;
    LargeScaleRecord large_scale;
    bool large_scale_applied = false;
    std::uint64_t master_seed = 0;
    std::uint64_t drop_index = 0;
    std::vector<std::string> extensions;  ///< extension stages that ran, in order

    std::vector<PropagationPath> &link(std::size_t tx, std::size_t rx) { return paths.at(rx * n_tx + tx); }
    const std::vector<PropagationPath> &link(std::size_t tx, std::size_t rx) const { return paths.at(rx * n_tx + tx); }

    const ClusterInfo *find_cluster(int id) const;
    double cluster_power_sum() const;
    std::size_t path_count() const;

    bool operator==(const ChannelRealization &) const = default;
};

/// Scales every amplitude by one real factor.
void scale_amplitudes(ChannelRealization &r, double factor);

} // namespace egbsm

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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "egbsm/antenna.hpp"
#include "egbsm/channel.hpp"
#include "egbsm/engine.hpp"
#include "egbsm/random.hpp"

namespace egbsm {

enum class ArraySide { tx, rx, both };

struct SnSParams {
    std::size_t sr_length = 8;
    double p_init = 0.8;
    double p_stay_visible = 0.9;
    double p_stay_hidden = 0.7;
    ArraySide side = ArraySide::rx;
    bool smoothing = false;  ///< raised-cosine ramp over one SR at visibility changes

    void validate() const;
};

/// Long-run fraction of visible station regions.
double sns_stationary_visibility(const SnSParams &p);

/// Binary visibility per (station region, cluster).
struct SnSMap {
    std::size_t n_sr = 0;
    std::size_t n_clusters = 0;
    std::vector<std::uint8_t> values;  ///< values[sr * n_clusters + cluster]

    std::uint8_t at(std::size_t sr, std::size_t cluster) const { return values.at(sr * n_clusters + cluster); }
    void set(std::size_t sr, std::size_t cluster, bool visible) { values.at(sr * n_clusters + cluster) = visible ? 1 : 0; }

    static SnSMap filled(std::size_t n_sr, std::size_t n_clusters, bool visible);
};

std::size_t station_region_count(std::size_t elements, std::size_t sr_length);

SnSMap generate_sns_map(const SnSParams &params, std::size_t n_sr, std::size_t n_clusters, RandomStream &stream);

/// Per-element visibility weights of one cluster; binary unless smoothing is on.
std::vector<double> sns_element_weights(const SnSMap &map, std::size_t cluster, std::size_t elements,
                                        std::size_t sr_length, bool smoothing);

/// Zeroes (or attenuates, with smoothing) paths of hidden clusters on the chosen array side.
/// Cluster powers are not renormalized.
void apply_sns(ChannelRealization &r, const SnSMap &map, std::size_t sr_length, ArraySide side = ArraySide::rx,
               bool smoothing = false);

struct ScattererAnchors {
    std::vector<Position3> fbs;
    std::vector<Position3> lbs;
    std::vector<double> split;  ///< fraction of the bounce-path length assigned to the tx leg
};

/// Places first- and last-bounce scatterers on the cluster departure and arrival rays so the
/// path length matches c times the absolute cluster delay. One split fraction per cluster is
/// drawn uniformly in [split_lo, split_hi].
ScattererAnchors place_scatterer_anchors(const ClusterSet &set, const Position3 &tx, const Position3 &rx,
                                         RandomStream &stream, double split_lo = 0.3, double split_hi = 0.7);

/// Deterministic variant with given split fractions (one per cluster).
ScattererAnchors place_scatterer_anchors(const ClusterSet &set, const Position3 &tx, const Position3 &rx,
                                         const std::vector<double> &split);

/// Spherical minus planar phase per element, radians.
std::vector<double> nearfield_phase_offsets(const AntennaArray &array, const Position3 &source, double wavelength);

/// Virtual ray sources for spherical-wave assembly: the LOS ray sees the true opposite end;
/// diffuse rays see a point along the ray at the anchor distance.
NearFieldSources nearfield_sources(const ClusterSet &set, const ScattererAnchors &anchors, const Position3 &tx,
                                   const Position3 &rx, bool tx_side, bool rx_side);

} // namespace egbsm

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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egbsm/antenna.hpp"
#include "egbsm/channel.hpp"
#include "egbsm/lsp.hpp"
#include "egbsm/propagation.hpp"
#include "egbsm/random.hpp"
#include "egbsm/tables.hpp"

namespace egbsm {

/// One cluster. Ray angles are stored as offsets (degrees) from the cluster center so that
/// re-centering a cluster moves all of its rays.
struct Cluster {
    double delay = 0.0;  ///< excess delay, s
    double power = 0.0;  ///< normalized power including any LOS specular share
    double aod = 0.0, zod = 90.0, aoa = 0.0, zoa = 90.0;  ///< centers, degrees
    std::vector<double> ray_aod, ray_zod, ray_aoa, ray_zoa;
    std::vector<double> ray_power;  ///< diffuse ray powers, sum = power - specular_power
    std::vector<double> xpr_db;
    std::vector<std::array<double, 4>> phases;  ///< theta-theta, theta-phi, phi-theta, phi-phi
    double specular_power = 0.0;
    int shared_with = -1;

    std::size_t num_rays() const { return ray_power.size(); }
};

struct ClusterSet {
    bool los = false;
    double k_factor_db = 0.0;
    DirectionPair los_departure;  ///< geometric LOS direction at the tx, radians
    DirectionPair los_arrival;
    std::vector<Cluster> clusters;

    double power_sum() const;
};

/// Delays before min-subtraction and sorting: -r_tau * DS * ln(U).
std::vector<double> draw_raw_cluster_delays(int n, double ds, double r_tau, RandomStream &stream);

/// Sorted excess delays with the first at zero.
std::vector<double> generate_cluster_delays(int n, double ds, double r_tau, RandomStream &stream);

/// LOS delay scaling for a K-factor in dB.
double los_delay_scaling(double k_db);

/// Normalized cluster powers. With a K-factor, the first cluster additionally carries the
/// specular share K/(K+1).
std::vector<double> generate_cluster_powers(std::span<const double> delays, double ds, double r_tau,
                                            double shadow_std_db, std::optional<double> k_db, RandomStream &stream);

/// 20-entry intra-cluster offset table (unit spread).
std::span<const double> ray_offset_table();

/// Spreads and per-cluster statistics feeding the angle draw, degrees.
struct AngleStatistics {
    double asd = 0.0, asa = 0.0, zsd = 0.0, zsa = 0.0;
    double c_asd = 0.0, c_asa = 0.0, c_zsa = 0.0;
    double c_zsd = 0.0;           ///< intra-cluster ZOD spread
    double zod_offset = 0.0;
    int scaling_cluster_count = 0;  ///< cluster count of the table record (before elimination)
    DirectionPair los_departure;    ///< radians
    DirectionPair los_arrival;
};

/// Scaling factors of the angle mapping; interpolated linearly between tabulated counts.
double azimuth_scaling_factor(int n);
double zenith_scaling_factor(int n);

struct ClusterAngles {
    std::vector<double> aod, aoa, zod, zoa;  ///< centers, degrees
    std::vector<std::vector<double>> ray_aod, ray_aoa, ray_zod, ray_zoa;  ///< offsets, degrees
};

/// Cluster centers and coupled ray offsets. `powers` exclude the specular share.
ClusterAngles generate_angles_and_rays(std::span<const double> powers, const AngleStatistics &stats,
                                       std::optional<double> k_db, std::span<const double> offsets, int rays,
                                       RandomStream &stream);

enum class CpmPolicy { random, co_polar };

struct AssemblyOptions {
    double carrier_hz = 0.0;
    Vec3 tx_velocity;
    Vec3 rx_velocity;
    DelayMode delay_mode = DelayMode::relative;
    double los_distance = 0.0;  ///< m, used for absolute delays and the LOS phase
    CpmPolicy cpm = CpmPolicy::random;
    LinkKind kind = LinkKind::communication;
};

/// Per-ray points seen by each array (specular ray last), for spherical wavefronts.
struct NearFieldSources {
    bool tx_side = false;
    bool rx_side = false;
    std::vector<std::vector<Vec3>> tx_view;  ///< [cluster][ray] point the tx array radiates toward
    std::vector<std::vector<Vec3>> rx_view;  ///< [cluster][ray] point the rx array receives from
};

/// Builds the multi-antenna realization from a cluster set. Amplitudes carry no path loss.
ChannelRealization assemble_paths(const ClusterSet &set, const AntennaArray &tx, const AntennaArray &rx,
                                  const AssemblyOptions &options, const NearFieldSources *near_field = nullptr);

/// Scales amplitudes by 10^(-(PL + SF)/20) and records the values.
void apply_large_scale(ChannelRealization &r, double path_loss_db, double shadow_fading_db);

/// Removes clusters weaker than `threshold_db` relative to the strongest, renumbers and renormalizes.
void eliminate_weak_clusters(ClusterSet &set, double threshold_db = -25.0);

enum class StateMode { automatic, los, nlos };
enum class PathLossMode { scenario, fspl, none };

struct LinkRequest {
    std::string scenario = "InH";
    double carrier_hz = 3.5e9;
    AntennaArray tx;
    AntennaArray rx;
    Vec3 tx_velocity;
    Vec3 rx_velocity;
    StateMode state_mode = StateMode::automatic;
    bool los_only = false;  ///< keep only the specular LOS ray
    PathLossMode path_loss = PathLossMode::scenario;
    bool shadow_fading = true;
    DelayMode delay_mode = DelayMode::relative;
    bool eliminate_weak = true;
    CpmPolicy cpm = CpmPolicy::random;
    LinkKind kind = LinkKind::communication;
};

/// A link after the large-scale and small-scale draws, before assembly. Extensions edit the
/// cluster set between `draft_link` and `finish_link`.
struct LinkDraft {
    LinkRequest request;
    ScenarioRecord record;
    LinkDistances distances;
    LspRealization lsp;
    ClusterSet clusters;
    double path_loss_db = 0.0;
    double shadow_fading_db = 0.0;
    std::uint64_t master_seed = 0;
};

LinkDistances link_distances(const Position3 &tx, const Position3 &rx);

LinkDraft draft_link(const LinkRequest &request, const TableSet &tables, const SeedTree &seeds);
ChannelRealization finish_link(const LinkDraft &draft, const NearFieldSources *near_field = nullptr);

/// Pure baseline link: draft then finish, no extension hooks.
ChannelRealization generate_baseline_link(const LinkRequest &request, const TableSet &tables, const SeedTree &seeds);

} // namespace egbsm

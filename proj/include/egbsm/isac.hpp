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

#include <optional>
#include <utility>
#include <vector>

#include "egbsm/engine.hpp"
#include "egbsm/node.hpp"
#include "egbsm/random.hpp"

namespace egbsm {

enum class B1Kind { isotropic, azimuth_table };
enum class B2Kind { degenerate, gaussian_db };

/// sigma = A * B1(angle) * B2, with B2 drawn per realization.
struct RcsModel {
    double a_dbsm = 0.0;
    B1Kind b1 = B1Kind::isotropic;
    std::vector<double> b1_azimuth_deg;  ///< table abscissae in [0, 360), increasing
    std::vector<double> b1_values;       ///< linear, >= 0; normalized to circular mean 1
    B2Kind b2 = B2Kind::degenerate;
    double b2_std_db = 0.0;
    std::optional<std::pair<double, double>> xpr_db;  ///< (mean, std) of an optional target XPR

    /// Checks the table and rescales it to mean 1 over the azimuth circle.
    void normalize();
};

/// Periodic piecewise-linear B1 at a global azimuth (radians).
double b1_gain(const RcsModel &model, double azimuth);

/// Azimuth at which B1 is evaluated: the bistatic bisector of the two directions leaving the target.
double bistatic_azimuth(const DirectionPair &in, const DirectionPair &out);

/// Per-realization random state of a target: B2 in dB and optional cross-polar terms.
struct RcsDraw {
    double b2_db = 0.0;
    PolarizationMatrix jones;  ///< unit co-polar diagonal unless a target XPR is configured
};

RcsDraw draw_rcs_state(const RcsModel &model, RandomStream &stream);

double rcs_dbsm(const RcsModel &model, const DirectionPair &in, const DirectionPair &out, const RcsDraw &draw);

/// Jones matrix in meters: sqrt(sigma) times the drawn polarization state.
PolarizationMatrix rcs_gain(const RcsModel &model, const DirectionPair &in, const DirectionPair &out,
                            RandomStream &stream);

/// Target as a node: sqrt(4 pi sigma) / lambda converts sqrt(sigma) to a dimensionless gain.
class TargetNode : public NodeResponse {
  public:
    TargetNode(RcsModel model, RcsDraw draw, double carrier_hz);
    PolarizationMatrix response(const DirectionPair &in, const DirectionPair &out) const override;

  private:
    RcsModel model_;
    RcsDraw draw_;
    double scale_;
};

/// Bistatic Doppler of the target, Hz.
double target_doppler(const Vec3 &velocity, const Position3 &tx, const Position3 &rx, const Position3 &target,
                      double wavelength);

struct TargetConfig {
    Position3 position;
    Vec3 velocity;
    Vec3 extent;  ///< metadata
    RcsModel rcs;
};

struct SharedClusterPolicy {
    int ns = 0;
    double delay_jitter_s = 0.0;
    double angle_jitter_deg = 0.0;
    bool bind_tx_leg = true;
    bool bind_rx_leg = true;
};

struct SharedBinding {
    int sensing_cluster = 0;
    int comm_cluster = 0;
};

/// Copies delay and angles of the Ns strongest non-LOS communication clusters onto the
/// strongest unassigned non-LOS sensing clusters, plus Gaussian jitter.
std::vector<SharedBinding> bind_shared_clusters(const ClusterSet &comm, ClusterSet &sensing,
                                                const SharedClusterPolicy &policy, RandomStream &stream);

struct SensingRequest {
    LinkRequest link;  ///< tx/rx arrays, scenario, carrier and large-scale switches
    TargetConfig target;
    PruneConfig prune;
    SharedClusterPolicy shared;
};

struct SensingChannel {
    ChannelRealization tx_target;
    ChannelRealization target_rx;
    ChannelRealization concatenated;
    RcsDraw rcs;
    std::vector<SharedBinding> tx_bindings;
    std::vector<SharedBinding> rx_bindings;
};

/// Tx-target and target-rx sub-links, shared-cluster binding against `comm` (when given),
/// pruning, concatenation through the target and target Doppler.
SensingChannel build_sensing_channel(const SensingRequest &request, const TableSet &tables, const SeedTree &drop_seeds,
                                     const ClusterSet *comm);

} // namespace egbsm

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

#include <span>
#include <vector>

#include "egbsm/antenna.hpp"
#include "egbsm/channel.hpp"

namespace egbsm {

enum class ConcatMode { reference_point, coherent_element };

/// Polarimetric gain of an intermediate node. `in` is the direction (at the node) toward the
/// incoming wave's origin, `out` the direction toward which the node re-radiates. The result
/// is dimensionless; target adapters fold the RCS units in.
class NodeResponse {
  public:
    virtual ~NodeResponse() = default;

    virtual PolarizationMatrix response(const DirectionPair &in, const DirectionPair &out) const = 0;

    /// out[i * outs.size() + j] = response(ins[i], outs[j]).
    virtual void response_grid(std::span<const DirectionPair> ins, std::span<const DirectionPair> outs,
                               std::vector<PolarizationMatrix> &out) const;

    virtual ConcatMode mode() const { return ConcatMode::reference_point; }
};

/// Direction-independent node gain.
class ConstantNode : public NodeResponse {
  public:
    explicit ConstantNode(PolarizationMatrix gain) : gain_(gain) {}
    PolarizationMatrix response(const DirectionPair &, const DirectionPair &) const override { return gain_; }

  private:
    PolarizationMatrix gain_;
};

struct PruneConfig {
    double threshold_db = -25.0;
    int max_clusters = 8;

    void validate() const;
    bool operator==(const PruneConfig &) const = default;
};

/// Deactivates clusters below the relative threshold, then keeps the strongest `max_clusters`
/// (ties to the lower id). Paths of inactive clusters are removed; powers are not renormalized.
void prune_clusters(ChannelRealization &r, const PruneConfig &config);

/// Pairwise product of every path of `a` with every path of `b` through the node response.
/// Both inputs must use absolute delays and meet at the same node position.
ChannelRealization concatenate(const ChannelRealization &a, const NodeResponse &node, const ChannelRealization &b,
                               ConcatMode mode);

/// pl_a + pl_b - 10 log10(4 pi sigma / lambda^2), dB.
double concatenated_path_loss(double pl_a_db, double pl_b_db, double sigma_m2, double carrier_hz);

} // namespace egbsm

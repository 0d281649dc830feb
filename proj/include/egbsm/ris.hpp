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

#include <vector>

#include "egbsm/antenna.hpp"
#include "egbsm/engine.hpp"
#include "egbsm/node.hpp"

namespace egbsm {

/// Reflecting panel. The normal is the local +x axis; elements sit on a y-z grid.
struct RisPanel {
    Position3 position;
    Orientation orientation;
    std::size_t rows = 1;
    std::size_t cols = 1;
    double spacing = 0.0;     ///< m
    double q = 1.0;           ///< cos-q exponent of each element
    double element_gain = 1.0;  ///< linear boresight power gain

    void validate() const;
    std::size_t size() const { return rows * cols; }
    Vec3 normal() const;
    AntennaArray elements() const;
};

enum class CodebookKind { specular, one_bit, continuous };

struct CodebookSpec {
    CodebookKind kind = CodebookKind::specular;
    Position3 source;
    Position3 destination;
};

const char *to_string(CodebookKind kind);

/// Element phases in [0, 2 pi). Phase-matched kinds co-phase the source-element-destination
/// paths and require both focus points in front of the panel.
std::vector<double> compute_codebook(const RisPanel &panel, const CodebookSpec &spec, double wavelength);

/// Co-polar gain sum_k sqrt(G(in)) sqrt(G(out)) exp(j[phi_k + k0 d_k . (u_in + u_out)]), with d_k
/// the element offset from the panel reference.
cdouble ris_pattern(const RisPanel &panel, const std::vector<double> &phases, const DirectionPair &in,
                    const DirectionPair &out, double wavelength);

class RisNode : public NodeResponse {
  public:
    RisNode(const RisPanel &panel, std::vector<double> phases, double wavelength);

    PolarizationMatrix response(const DirectionPair &in, const DirectionPair &out) const override;
    void response_grid(std::span<const DirectionPair> ins, std::span<const DirectionPair> outs,
                       std::vector<PolarizationMatrix> &out) const override;
    ConcatMode mode() const override { return ConcatMode::coherent_element; }

  private:
    double element_amplitude(const DirectionPair &dir) const;

    AntennaArray array_;
    std::vector<Vec3> offsets_;
    std::vector<double> phases_;
    double k0_;
};

struct RisRequest {
    LinkRequest link;  ///< tx/rx arrays, scenario, carrier and large-scale switches
    RisPanel panel;
    CodebookSpec codebook;
    PruneConfig prune;
};

struct RisChannel {
    ChannelRealization tx_ris;
    ChannelRealization ris_rx;
    ChannelRealization concatenated;
    std::vector<double> phases;
};

/// Independent tx-RIS and RIS-rx sub-links, pruning, coherent-element concatenation.
RisChannel build_ris_channel(const RisRequest &request, const TableSet &tables, const SeedTree &drop_seeds);

} // namespace egbsm

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
#include <string_view>
#include <vector>

#include "egbsm/engine.hpp"
#include "egbsm/random.hpp"
#include "egbsm/tables.hpp"

namespace egbsm {

/// Cluster count N1 of the band containing the frequency.
int frequency_cluster_count(const TableSet &set, std::string_view scenario, LinkState state, double carrier_hz);

/// Moves the fraction `ick` of the cluster power onto the strongest ray (lowest index on ties)
/// and spreads the rest evenly over the other rays. Requires ick in [1/M, 1].
std::vector<double> apply_ick(std::span<const double> ray_powers, double ick);

/// Clipped-normal draw within [1/M, 1].
double draw_ick(const IckParams &params, int rays_per_cluster, RandomStream &stream);

/// Draws one ICK per cluster and redistributes the diffuse ray powers. A draw equal to 1/M
/// leaves the cluster untouched so the uniform case stays bit-identical.
void apply_ick_to_clusters(ClusterSet &set, const IckParams &params, RandomStream &stream);

} // namespace egbsm

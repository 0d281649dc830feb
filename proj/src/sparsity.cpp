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

#include "egbsm/sparsity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace egbsm {

int frequency_cluster_count(const TableSet &set, std::string_view scenario, LinkState state, double carrier_hz)
{
    return lookup_table(set, scenario, state, carrier_hz).num_clusters;
}

std::vector<double> apply_ick(std::span<const double> ray_powers, double ick)
{
    const std::size_t m = ray_powers.size();
    if (m == 0)
        throw std::invalid_argument("apply_ick: empty cluster");
    const double lo = 1.0 / static_cast<double>(m);
    if (!(ick >= lo - 1e-15 && ick <= 1.0))
        throw std::out_of_range("apply_ick: ick must lie in [1/M, 1]");
    const double total = std::accumulate(ray_powers.begin(), ray_powers.end(), 0.0);
    const auto dominant = static_cast<std::size_t>(std::max_element(ray_powers.begin(), ray_powers.end()) - ray_powers.begin());
    if (m == 1)
        return {total};
    std::vector<double> out(m, (1.0 - ick) * total / static_cast<double>(m - 1));
    out[dominant] = ick * total;
    return out;
}

double draw_ick(const IckParams &params, int rays_per_cluster, RandomStream &stream)
{
    if (rays_per_cluster < 1)
        throw std::invalid_argument("draw_ick: need at least one ray");
    const double lo = 1.0 / static_cast<double>(rays_per_cluster);
    if (rays_per_cluster == 1)
        return 1.0;
    return stream.clipped_normal(params.mean, params.std, lo, 1.0);
}

void apply_ick_to_clusters(ClusterSet &set, const IckParams &params, RandomStream &stream)
{
    for (auto &c : set.clusters) {
        const int m = static_cast<int>(c.num_rays());
        if (m == 0)
            continue;
        const double ick = draw_ick(params, m, stream);
        if (ick == 1.0 / static_cast<double>(m))
            continue;
        c.ray_power = apply_ick(c.ray_power, ick);
    }
}

} // namespace egbsm

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

#include "egbsm/channel.hpp"
#include "egbsm/cir.hpp"

#include <cmath>
#include <stdexcept>

namespace egbsm {

const char *to_string(LinkKind kind)
{
    switch (kind) {
    case LinkKind::communication:
        return "comm";
    case LinkKind::tx_node:
        return "tx_node";
    case LinkKind::node_rx:
        return "node_rx";
    case LinkKind::concatenated:
        return "concat";
    }
    return "unknown";
}

const ClusterInfo *ChannelRealization::find_cluster(int id) const
{
    for (const auto &c : clusters)
        if (c.id == id)
            return &c;
    return nullptr;
}

double ChannelRealization::cluster_power_sum() const
{
    double s = 0.0;
    for (const auto &c : clusters)
        s += c.power;
    return s;
}

std::size_t ChannelRealization::path_count() const
{
    std::size_t n = 0;
    for (const auto &l : paths)
        n += l.size();
    return n;
}

void scale_amplitudes(ChannelRealization &r, double factor)
{
    for (auto &l : r.paths)
        for (auto &p : l)
            p.amplitude *= factor;
}

TapGrid synthesize_cir_samples(const ChannelRealization &r, std::span<const double> sample_times,
                               double bandwidth, std::size_t num_taps)
{
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("synthesize_cir_samples: bandwidth must be positive");
    if (num_taps < 1)
        throw std::invalid_argument("synthesize_cir_samples: need at least one tap");
    if (sample_times.empty())
        throw std::invalid_argument("synthesize_cir_samples: no sample times");
    for (std::size_t i = 1; i < sample_times.size(); ++i)
        if (!(sample_times[i] > sample_times[i - 1]))
            throw std::invalid_argument("synthesize_cir_samples: sample times must be strictly increasing");

    TapGrid g;
    g.n_tx = r.n_tx;
    g.n_rx = r.n_rx;
    g.num_times = sample_times.size();
    g.num_taps = num_taps;
    g.tap_spacing = 1.0 / bandwidth;
    g.taps.assign(r.paths.size(), std::vector<cdouble>(g.num_times * num_taps));

    for (std::size_t l = 0; l < r.paths.size(); ++l) {
        auto &grid = g.taps[l];
        for (const auto &p : r.paths[l]) {
            const double bin = std::round(p.delay * bandwidth);
            if (bin < 0.0 || bin >= static_cast<double>(num_taps)) {
                ++g.dropped_paths;
                continue;
            }
            const auto tap = static_cast<std::size_t>(bin);
            for (std::size_t t = 0; t < g.num_times; ++t)
                grid[t * num_taps + tap] += p.amplitude * std::polar(1.0, 2.0 * pi * p.doppler * sample_times[t]);
        }
    }
    return g;
}

std::vector<cdouble> frequency_response(const ChannelRealization &r, std::size_t tx, std::size_t rx,
                                        std::span<const double> frequencies)
{
    std::vector<cdouble> h(frequencies.size());
    for (const auto &p : r.link(tx, rx))
        for (std::size_t k = 0; k < frequencies.size(); ++k)
            h[k] += p.amplitude * std::polar(1.0, -2.0 * pi * frequencies[k] * p.delay);
    return h;
}

std::vector<double> baseband_grid(double bandwidth, std::size_t count)
{
    std::vector<double> f(count);
    if (count == 1)
        return {0.0};
    const double step = bandwidth / static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k)
        f[k] = (static_cast<double>(k) - 0.5 * static_cast<double>(count - 1)) * step;
    return f;
}

} // namespace egbsm

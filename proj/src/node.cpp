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

#include "egbsm/node.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace egbsm {

void NodeResponse::response_grid(std::span<const DirectionPair> ins, std::span<const DirectionPair> outs,
                                 std::vector<PolarizationMatrix> &out) const
{
    out.resize(ins.size() * outs.size());
    for (std::size_t i = 0; i < ins.size(); ++i)
        for (std::size_t j = 0; j < outs.size(); ++j)
            out[i * outs.size() + j] = response(ins[i], outs[j]);
}

void PruneConfig::validate() const
{
    if (threshold_db > 0.0)
        throw std::invalid_argument("prune: threshold_db must be <= 0");
    if (max_clusters < 1)
        throw std::invalid_argument("prune: max_clusters must be >= 1");
}

void prune_clusters(ChannelRealization &r, const PruneConfig &config)
{
    config.validate();
    if (r.clusters.empty())
        throw std::invalid_argument("prune_clusters: realization has no clusters");

    std::vector<std::size_t> active;
    double pmax = 0.0;
    for (std::size_t i = 0; i < r.clusters.size(); ++i)
        if (r.clusters[i].active) {
            active.push_back(i);
            pmax = std::max(pmax, r.clusters[i].power);
        }
    if (active.empty())
        throw std::invalid_argument("prune_clusters: no active clusters");

    const double floor = pmax * std::pow(10.0, config.threshold_db / 10.0);
    std::vector<std::size_t> keep;
    for (std::size_t i : active)
        if (r.clusters[i].power >= floor)
            keep.push_back(i);
    std::stable_sort(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) {
        if (r.clusters[x].power != r.clusters[y].power)
            return r.clusters[x].power > r.clusters[y].power;
        return r.clusters[x].id < r.clusters[y].id;
    });
    if (keep.size() > static_cast<std::size_t>(config.max_clusters))
        keep.resize(static_cast<std::size_t>(config.max_clusters));

    std::vector<bool> alive(r.clusters.size(), false);
    for (std::size_t i : keep)
        alive[i] = true;
    std::vector<int> dead_ids;
    for (std::size_t i = 0; i < r.clusters.size(); ++i)
        if (!alive[i] && r.clusters[i].active) {
            r.clusters[i].active = false;
            dead_ids.push_back(r.clusters[i].id);
        }
    if (!dead_ids.empty()) {
        for (auto &list : r.paths)
            std::erase_if(list, [&](const PropagationPath &p) {
                return std::find(dead_ids.begin(), dead_ids.end(), p.cluster_id) != dead_ids.end();
            });
    }
    r.extensions.push_back("prune");
}

ChannelRealization concatenate(const ChannelRealization &a, const NodeResponse &node, const ChannelRealization &b,
                               ConcatMode mode)
{
    if (a.delay_mode != DelayMode::absolute || b.delay_mode != DelayMode::absolute)
        throw std::invalid_argument("concatenate: both sub-links must use absolute delays");
    const double tol = 1e-9 * std::max(1.0, a.rx_position.norm());
    if ((a.rx_position - b.tx_position).norm() > tol)
        throw std::invalid_argument("concatenate: sub-links do not meet at the same node position");
    if (a.n_rx != b.n_tx)
        throw std::invalid_argument("concatenate: node port counts differ between sub-links");
    if (mode != node.mode())
        throw std::invalid_argument("concatenate: concatenation mode does not match the node type");
    if (a.carrier_hz != b.carrier_hz)
        throw std::invalid_argument("concatenate: carrier frequencies differ");

    const std::size_t ports = a.n_rx;
    const auto &ref_a = a.link(0, 0);
    const auto &ref_b = b.link(0, 0);
    for (const auto &l : a.paths)
        if (l.size() != ref_a.size())
            throw std::invalid_argument("concatenate: sub-link a path lists differ in length");
    for (const auto &l : b.paths)
        if (l.size() != ref_b.size())
            throw std::invalid_argument("concatenate: sub-link b path lists differ in length");

    ChannelRealization out;
    out.kind = LinkKind::concatenated;
    out.carrier_hz = a.carrier_hz;
    out.delay_mode = DelayMode::absolute;
    out.n_tx = a.n_tx;
    out.n_rx = b.n_rx;
    out.tx_position = a.tx_position;
    out.rx_position = b.rx_position;
    out.master_seed = a.master_seed;
    out.drop_index = a.drop_index;
    out.large_scale_applied = a.large_scale_applied && b.large_scale_applied;
    out.large_scale.path_loss_db = a.large_scale.path_loss_db + b.large_scale.path_loss_db;
    out.large_scale.shadow_fading_db = a.large_scale.shadow_fading_db + b.large_scale.shadow_fading_db;
    out.large_scale.los = a.large_scale.los && b.large_scale.los;
    out.large_scale.distance_3d = a.large_scale.distance_3d + b.large_scale.distance_3d;

    const std::size_t nb = b.clusters.size();
    for (std::size_t i = 0; i < a.clusters.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            ClusterInfo c;
            c.id = static_cast<int>(i * nb + j);
            c.power = a.clusters[i].power * b.clusters[j].power;
            c.delay = a.clusters[i].delay + b.clusters[j].delay;
            c.active = a.clusters[i].active && b.clusters[j].active;
            c.shared_with = a.clusters[i].shared_with >= 0 ? a.clusters[i].shared_with : b.clusters[j].shared_with;
            out.clusters.push_back(c);
        }

    auto index_of = [](const ChannelRealization &r, int id) {
        for (std::size_t k = 0; k < r.clusters.size(); ++k)
            if (r.clusters[k].id == id)
                return k;
        throw std::invalid_argument("concatenate: path refers to an unknown cluster");
    };
    std::vector<std::size_t> ca(ref_a.size()), cb(ref_b.size());
    for (std::size_t i = 0; i < ref_a.size(); ++i)
        ca[i] = index_of(a, ref_a[i].cluster_id);
    for (std::size_t j = 0; j < ref_b.size(); ++j)
        cb[j] = index_of(b, ref_b[j].cluster_id);
    int ray_stride = 1;
    for (const auto &p : ref_b)
        ray_stride = std::max(ray_stride, p.ray_id + 1);

    std::vector<DirectionPair> ins(ref_a.size()), outs(ref_b.size());
    for (std::size_t i = 0; i < ref_a.size(); ++i)
        ins[i] = ref_a[i].arrival;
    for (std::size_t j = 0; j < ref_b.size(); ++j)
        outs[j] = ref_b[j].departure;
    std::vector<PolarizationMatrix> g;
    node.response_grid(ins, outs, g);

    out.paths.assign(out.n_tx * out.n_rx, {});
    for (auto &l : out.paths)
        l.reserve(ref_a.size() * ref_b.size());
    for (std::size_t q = 0; q < out.n_rx; ++q) {
        for (std::size_t p = 0; p < out.n_tx; ++p) {
            auto &dst = out.paths[q * out.n_tx + p];
            for (std::size_t i = 0; i < ref_a.size(); ++i) {
                for (std::size_t j = 0; j < ref_b.size(); ++j) {
                    const PolarizationMatrix &gij = g[i * ref_b.size() + j];
                    cdouble c{0.0, 0.0};
                    for (std::size_t v = 0; v < ports; ++v) {
                        cdouble inner{0.0, 0.0};
                        for (std::size_t u = 0; u < ports; ++u)
                            inner += gij.entry(v, u) * a.link(p, u)[i].amplitude;
                        c += b.link(v, q)[j].amplitude * inner;
                    }
                    PropagationPath path;
                    path.cluster_id = static_cast<int>(ca[i] * nb + cb[j]);
                    path.ray_id = ref_a[i].ray_id * ray_stride + ref_b[j].ray_id;
                    path.delay = ref_a[i].delay + ref_b[j].delay;
                    path.amplitude = c;
                    path.departure = a.link(p, 0)[i].departure;
                    path.arrival = b.link(0, q)[j].arrival;
                    path.doppler = ref_a[i].doppler + ref_b[j].doppler;
                    dst.push_back(path);
                }
            }
        }
    }
    out.extensions = {"concatenate"};
    return out;
}

double concatenated_path_loss(double pl_a_db, double pl_b_db, double sigma_m2, double carrier_hz)
{
    if (!(sigma_m2 > 0.0))
        throw std::invalid_argument("concatenated_path_loss: cross-section must be positive");
    const double lambda = wavelength(carrier_hz);
    return pl_a_db + pl_b_db - 10.0 * std::log10(sigma_m2 * 4.0 * pi / (lambda * lambda));
}

} // namespace egbsm

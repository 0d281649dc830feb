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

#include "egbsm/pipeline.hpp"

#include <algorithm>

#include "egbsm/sparsity.hpp"
#include "egbsm/xlmimo.hpp"

namespace egbsm {

SeedTree drop_seed_tree(std::uint64_t master_seed, std::uint64_t index)
{
    return SeedTree(master_seed).child("drop", index);
}

ChannelRealization generate_comm_link(const Config &c, const LinkRequest &req, const TableSet &tables,
                                      const SeedTree &drop_seeds, SnSMap *sns_map_out, ClusterSet *clusters_out)
{
    const SeedTree seeds = drop_seeds.child("link", 0);
    LinkDraft draft = draft_link(req, tables, seeds);
    std::vector<std::string> stages;

    if (c.extensions.sparsity && draft.record.ick && !req.los_only) {
        auto s = seeds.stream("ick");
        apply_ick_to_clusters(draft.clusters, *draft.record.ick, s);
        stages.emplace_back("sparsity");
    }

    std::optional<NearFieldSources> nf;
    if (c.extensions.near_field) {
        auto s = seeds.stream("anchors");
        const auto anchors = place_scatterer_anchors(draft.clusters, req.tx.position, req.rx.position, s,
                                                     c.near_field.split_range[0], c.near_field.split_range[1]);
        nf = nearfield_sources(draft.clusters, anchors, req.tx.position, req.rx.position, c.near_field.tx_side,
                               c.near_field.rx_side);
        stages.emplace_back("near_field");
    }

    ChannelRealization r = finish_link(draft, nf ? &*nf : nullptr);
    r.extensions.insert(r.extensions.begin(), stages.begin(), stages.end());

    if (c.extensions.sns) {
        const SnSParams p = build_sns_params(c.sns);
        p.validate();
        const std::size_t n = p.side == ArraySide::tx ? r.n_tx : r.n_rx;
        auto s = seeds.stream("sns");
        SnSMap map = generate_sns_map(p, station_region_count(n, p.sr_length), r.clusters.size(), s);
        apply_sns(r, map, p.sr_length, p.side, p.smoothing);
        if (sns_map_out)
            *sns_map_out = std::move(map);
    }
    if (clusters_out)
        *clusters_out = draft.clusters;
    return r;
}

DropOutput run_drop(const Config &c, const TableSet &tables, std::uint64_t index)
{
    DropOutput out;
    out.index = index;
    const SeedTree seeds = drop_seed_tree(c.seed, index);
    const LinkRequest req = build_link_request(c);
    const bool monostatic = req.tx.position == req.rx.position;

    ClusterSet comm_clusters;
    if (!monostatic) {
        SnSMap map;
        out.comm = generate_comm_link(c, req, tables, seeds, &map, &comm_clusters);
        out.comm->drop_index = index;
        if (c.extensions.sns)
            out.sns_map = std::move(map);
    }

    if (c.extensions.isac) {
        for (std::size_t t = 0; t < c.targets.size(); ++t) {
            const TargetEntry &e = c.targets[t];
            SensingRequest s;
            s.link = req;
            s.link.delay_mode = DelayMode::absolute;
            s.target.position = {e.position[0], e.position[1], e.position[2]};
            s.target.velocity = {e.velocity[0], e.velocity[1], e.velocity[2]};
            s.target.extent = {e.extent[0], e.extent[1], e.extent[2]};
            s.target.rcs = build_rcs_model(e.rcs);
            s.prune = c.prune;
            // Weak-cluster elimination can leave the communication link with fewer non-LOS
            // clusters than requested; the binding count is capped per drop.
            const auto available = std::count_if(comm_clusters.clusters.begin(), comm_clusters.clusters.end(),
                                                 [](const Cluster &cl) { return cl.specular_power == 0.0; });
            s.shared.ns = std::min<int>(e.shared.ns, static_cast<int>(available));
            s.shared.delay_jitter_s = e.shared.delay_jitter_s;
            s.shared.angle_jitter_deg = e.shared.angle_jitter_deg;
            s.shared.bind_tx_leg = e.shared.bind != "rx";
            s.shared.bind_rx_leg = e.shared.bind != "tx";
            SensingChannel ch =
                build_sensing_channel(s, tables, seeds.child("target", t), out.comm ? &comm_clusters : nullptr);
            ch.tx_target.drop_index = ch.target_rx.drop_index = ch.concatenated.drop_index = index;
            out.sensing.push_back(std::move(ch));
        }
    }

    if (c.extensions.ris && c.ris) {
        RisRequest r;
        r.link = req;
        r.panel = build_ris_panel(*c.ris, c.carrier_hz);
        r.codebook.kind = parse_codebook(c.ris->codebook);
        r.codebook.source = req.tx.position;
        r.codebook.destination = req.rx.position;
        r.prune = c.prune;
        out.ris = build_ris_channel(r, tables, seeds.child("ris", 0));
        out.ris->tx_ris.drop_index = out.ris->ris_rx.drop_index = out.ris->concatenated.drop_index = index;
    }
    return out;
}

} // namespace egbsm

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

#include "egbsm/isac.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace egbsm {

namespace {

std::vector<std::size_t> strongest_non_los(const ClusterSet &set)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < set.clusters.size(); ++i)
        if (set.clusters[i].specular_power == 0.0)
            idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return set.clusters[a].power > set.clusters[b].power; });
    return idx;
}

} // namespace

void RcsModel::normalize()
{
    if (b1 == B1Kind::isotropic)
        return;
    const std::size_t n = b1_azimuth_deg.size();
    if (n < 2 || b1_values.size() != n)
        throw std::invalid_argument("rcs: B1 table needs at least two (azimuth, value) points");
    for (std::size_t i = 0; i < n; ++i) {
        if (b1_values[i] < 0.0 || !std::isfinite(b1_values[i]))
            throw std::invalid_argument("rcs: B1 values must be finite and non-negative");
        if (b1_azimuth_deg[i] < 0.0 || b1_azimuth_deg[i] >= 360.0 || (i > 0 && !(b1_azimuth_deg[i] > b1_azimuth_deg[i - 1])))
            throw std::invalid_argument("rcs: B1 azimuths must increase within [0, 360)");
    }
    // Exact mean of the periodic piecewise-linear curve (trapezoids incl. the wrap segment).
    double area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + 1) % n;
        const double width = k == 0 ? b1_azimuth_deg[0] + 360.0 - b1_azimuth_deg[i] : b1_azimuth_deg[k] - b1_azimuth_deg[i];
        area += 0.5 * (b1_values[i] + b1_values[k]) * width;
    }
    const double mean = area / 360.0;
    if (!(mean > 0.0))
        throw std::invalid_argument("rcs: B1 table is identically zero");
    for (auto &v : b1_values)
        v /= mean;
}

double b1_gain(const RcsModel &model, double azimuth)
{
    if (model.b1 == B1Kind::isotropic)
        return 1.0;
    const auto &x = model.b1_azimuth_deg;
    const auto &y = model.b1_values;
    const std::size_t n = x.size();
    double a = std::fmod(rad2deg(azimuth), 360.0);
    if (a < 0.0)
        a += 360.0;
    const auto it = std::upper_bound(x.begin(), x.end(), a);
    const std::size_t hi = it == x.end() ? 0 : static_cast<std::size_t>(it - x.begin());
    const std::size_t lo = hi == 0 ? n - 1 : hi - 1;
    double x0 = x[lo], x1 = x[hi];
    if (x1 <= x0)
        x1 += 360.0;
    if (a < x0)
        a += 360.0;
    const double t = (a - x0) / (x1 - x0);
    return y[lo] + t * (y[hi] - y[lo]);
}

double bistatic_azimuth(const DirectionPair &in, const DirectionPair &out)
{
    const Vec3 s = unit_vector(in) + unit_vector(out);
    if (s.norm_xy() < 1e-12)
        return in.azimuth;
    return std::atan2(s.y, s.x);
}

RcsDraw draw_rcs_state(const RcsModel &model, RandomStream &stream)
{
    RcsDraw d;
    d.b2_db = model.b2 == B2Kind::gaussian_db ? stream.normal(0.0, model.b2_std_db) : 0.0;
    if (model.xpr_db) {
        const double kappa = std::pow(10.0, stream.normal(model.xpr_db->first, model.xpr_db->second) / 10.0);
        const double inv = std::sqrt(1.0 / kappa);
        const double ph_tp = stream.uniform(-pi, pi);
        const double ph_pt = stream.uniform(-pi, pi);
        d.jones = {1.0, inv * std::polar(1.0, ph_tp), inv * std::polar(1.0, ph_pt), 1.0};
    }
    return d;
}

double rcs_dbsm(const RcsModel &model, const DirectionPair &in, const DirectionPair &out, const RcsDraw &draw)
{
    return model.a_dbsm + 10.0 * std::log10(b1_gain(model, bistatic_azimuth(in, out))) + draw.b2_db;
}

PolarizationMatrix rcs_gain(const RcsModel &model, const DirectionPair &in, const DirectionPair &out,
                            RandomStream &stream)
{
    const RcsDraw d = draw_rcs_state(model, stream);
    const double amp = std::sqrt(std::pow(10.0, rcs_dbsm(model, in, out, d) / 10.0));
    return {amp * d.jones.tt, amp * d.jones.tp, amp * d.jones.pt, amp * d.jones.pp};
}

TargetNode::TargetNode(RcsModel model, RcsDraw draw, double carrier_hz)
    : model_(std::move(model)), draw_(draw), scale_(std::sqrt(4.0 * pi) / wavelength(carrier_hz))
{
}

PolarizationMatrix TargetNode::response(const DirectionPair &in, const DirectionPair &out) const
{
    const double amp = scale_ * std::sqrt(std::pow(10.0, rcs_dbsm(model_, in, out, draw_) / 10.0));
    return {amp * draw_.jones.tt, amp * draw_.jones.tp, amp * draw_.jones.pt, amp * draw_.jones.pp};
}

double target_doppler(const Vec3 &velocity, const Position3 &tx, const Position3 &rx, const Position3 &target,
                      double lambda)
{
    const Vec3 a = target - tx;
    const Vec3 b = target - rx;
    if (!(a.norm() > 0.0) || !(b.norm() > 0.0))
        throw std::invalid_argument("target_doppler: target coincides with tx or rx");
    return -velocity.dot(a.normalized() + b.normalized()) / lambda;
}

std::vector<SharedBinding> bind_shared_clusters(const ClusterSet &comm, ClusterSet &sensing,
                                                const SharedClusterPolicy &policy, RandomStream &stream)
{
    if (policy.ns < 0)
        throw std::invalid_argument("bind_shared_clusters: Ns must be >= 0");
    std::vector<SharedBinding> out;
    if (policy.ns == 0)
        return out;
    const auto comm_idx = strongest_non_los(comm);
    const auto sens_idx = strongest_non_los(sensing);
    const auto ns = static_cast<std::size_t>(policy.ns);
    if (ns > comm_idx.size() || ns > sens_idx.size())
        throw std::invalid_argument("bind_shared_clusters: Ns = " + std::to_string(policy.ns) +
                                    " exceeds the available non-LOS clusters (" +
                                    std::to_string(comm_idx.size()) + " communication, " +
                                    std::to_string(sens_idx.size()) + " sensing)");
    for (std::size_t k = 0; k < ns; ++k) {
        const Cluster &src = comm.clusters[comm_idx[k]];
        Cluster &dst = sensing.clusters[sens_idx[k]];
        dst.delay = std::max(0.0, src.delay + stream.normal(0.0, policy.delay_jitter_s));
        dst.aod = src.aod + stream.normal(0.0, policy.angle_jitter_deg);
        dst.zod = src.zod + stream.normal(0.0, policy.angle_jitter_deg);
        dst.aoa = src.aoa + stream.normal(0.0, policy.angle_jitter_deg);
        dst.zoa = src.zoa + stream.normal(0.0, policy.angle_jitter_deg);
        dst.shared_with = static_cast<int>(comm_idx[k]);
        out.push_back({static_cast<int>(sens_idx[k]), static_cast<int>(comm_idx[k])});
    }
    return out;
}

SensingChannel build_sensing_channel(const SensingRequest &req, const TableSet &tables, const SeedTree &drop_seeds,
                                     const ClusterSet *comm)
{
    SensingChannel out;
    const Position3 at = req.target.position;
    if ((at - req.link.tx.position).norm() == 0.0 || (at - req.link.rx.position).norm() == 0.0)
        throw std::invalid_argument("sensing: target coincides with tx or rx");

    LinkRequest a = req.link;
    a.rx = make_dual_port_node(at);
    a.rx_velocity = {};
    a.delay_mode = DelayMode::absolute;
    a.eliminate_weak = false;
    a.kind = LinkKind::tx_node;

    LinkRequest b = req.link;
    b.tx = make_dual_port_node(at);
    b.tx_velocity = {};
    b.delay_mode = DelayMode::absolute;
    b.eliminate_weak = false;
    b.kind = LinkKind::node_rx;

    const SeedTree seeds_a = drop_seeds.child("link", 1);
    const SeedTree seeds_b = drop_seeds.child("link", 2);
    LinkDraft da = draft_link(a, tables, seeds_a);
    LinkDraft db = draft_link(b, tables, seeds_b);
    if (comm && req.shared.ns > 0) {
        if (req.shared.bind_tx_leg) {
            auto s = seeds_a.stream("shared");
            out.tx_bindings = bind_shared_clusters(*comm, da.clusters, req.shared, s);
        }
        if (req.shared.bind_rx_leg) {
            auto s = seeds_b.stream("shared");
            out.rx_bindings = bind_shared_clusters(*comm, db.clusters, req.shared, s);
        }
    }
    out.tx_target = finish_link(da);
    out.target_rx = finish_link(db);
    prune_clusters(out.tx_target, req.prune);
    prune_clusters(out.target_rx, req.prune);

    auto rcs_stream = drop_seeds.stream("rcs");
    out.rcs = draw_rcs_state(req.target.rcs, rcs_stream);
    const TargetNode node(req.target.rcs, out.rcs, req.link.carrier_hz);
    out.concatenated = concatenate(out.tx_target, node, out.target_rx, ConcatMode::reference_point);

    const double fd = target_doppler(req.target.velocity, req.link.tx.position, req.link.rx.position, at,
                                     wavelength(req.link.carrier_hz));
    for (auto &l : out.concatenated.paths)
        for (auto &p : l)
            p.doppler += fd;
    out.concatenated.extensions.push_back("isac");
    return out;
}

} // namespace egbsm

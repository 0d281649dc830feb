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

#include "egbsm/xlmimo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace egbsm {

namespace {

bool in_unit(double p)
{
    return p >= 0.0 && p <= 1.0;
}

Vec3 cluster_direction(double az_deg, double zen_deg)
{
    return unit_vector(canonical_direction(deg2rad(az_deg), deg2rad(zen_deg)));
}

} // namespace

void SnSParams::validate() const
{
    if (sr_length < 1)
        throw std::invalid_argument("sns: sr_length must be >= 1");
    if (!in_unit(p_init) || !in_unit(p_stay_visible) || !in_unit(p_stay_hidden))
        throw std::invalid_argument("sns: probabilities must lie in [0, 1]");
}

double sns_stationary_visibility(const SnSParams &p)
{
    const double leave_v = 1.0 - p.p_stay_visible;
    const double leave_h = 1.0 - p.p_stay_hidden;
    if (leave_v + leave_h == 0.0)
        return p.p_init;
    return leave_h / (leave_v + leave_h);
}

SnSMap SnSMap::filled(std::size_t n_sr, std::size_t n_clusters, bool visible)
{
    SnSMap m;
    m.n_sr = n_sr;
    m.n_clusters = n_clusters;
    m.values.assign(n_sr * n_clusters, visible ? 1 : 0);
    return m;
}

std::size_t station_region_count(std::size_t elements, std::size_t sr_length)
{
    if (sr_length == 0)
        throw std::invalid_argument("station_region_count: sr_length must be >= 1");
    return (elements + sr_length - 1) / sr_length;
}

SnSMap generate_sns_map(const SnSParams &params, std::size_t n_sr, std::size_t n_clusters, RandomStream &stream)
{
    params.validate();
    if (n_sr < 1)
        throw std::invalid_argument("generate_sns_map: need at least one station region");
    SnSMap m = SnSMap::filled(n_sr, n_clusters, false);
    for (std::size_t c = 0; c < n_clusters; ++c)
        m.set(0, c, stream.bernoulli(params.p_init));
    for (std::size_t s = 1; s < n_sr; ++s) {
        for (std::size_t c = 0; c < n_clusters; ++c) {
            const bool prev = m.at(s - 1, c) != 0;
            const bool stay = stream.bernoulli(prev ? params.p_stay_visible : params.p_stay_hidden);
            m.set(s, c, stay ? prev : !prev);
        }
    }
    return m;
}

std::vector<double> sns_element_weights(const SnSMap &map, std::size_t cluster, std::size_t elements,
                                        std::size_t sr_length, bool smoothing)
{
    std::vector<double> w(elements);
    const double len = static_cast<double>(sr_length);
    for (std::size_t e = 0; e < elements; ++e) {
        const std::size_t sr = e / sr_length;
        if (!smoothing) {
            w[e] = map.at(sr, cluster);
            continue;
        }
        // Position relative to SR centers; blend with the neighbour on the near side.
        const double x = (static_cast<double>(e) + 0.5) / len - 0.5;
        const double lo_sr = std::floor(x);
        const double t = x - lo_sr;
        const auto a = static_cast<std::ptrdiff_t>(lo_sr);
        const auto clamp_sr = [&](std::ptrdiff_t s) {
            return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(s, 0, static_cast<std::ptrdiff_t>(map.n_sr) - 1));
        };
        const double va = map.at(clamp_sr(a), cluster);
        const double vb = map.at(clamp_sr(a + 1), cluster);
        const double ramp = 0.5 * (1.0 - std::cos(pi * t));
        w[e] = va + (vb - va) * ramp;
    }
    return w;
}

void apply_sns(ChannelRealization &r, const SnSMap &map, std::size_t sr_length, ArraySide side, bool smoothing)
{
    if (map.n_clusters != r.clusters.size())
        throw std::invalid_argument("apply_sns: map has " + std::to_string(map.n_clusters) + " clusters, realization has " +
                                    std::to_string(r.clusters.size()));
    const bool on_rx = side != ArraySide::tx;
    const bool on_tx = side != ArraySide::rx;
    if ((on_rx && station_region_count(r.n_rx, sr_length) != map.n_sr) ||
        (on_tx && station_region_count(r.n_tx, sr_length) != map.n_sr))
        throw std::invalid_argument("apply_sns: station-region count does not match the array size");

    std::vector<std::vector<double>> w_rx(map.n_clusters), w_tx(map.n_clusters);
    for (std::size_t c = 0; c < map.n_clusters; ++c) {
        if (on_rx)
            w_rx[c] = sns_element_weights(map, c, r.n_rx, sr_length, smoothing);
        if (on_tx)
            w_tx[c] = sns_element_weights(map, c, r.n_tx, sr_length, smoothing);
    }
    for (std::size_t q = 0; q < r.n_rx; ++q) {
        for (std::size_t p = 0; p < r.n_tx; ++p) {
            for (auto &path : r.link(p, q)) {
                const auto c = static_cast<std::size_t>(path.cluster_id);
                if (c >= map.n_clusters)
                    throw std::invalid_argument("apply_sns: path refers to a cluster outside the map");
                double g = 1.0;
                if (on_rx)
                    g *= w_rx[c][q];
                if (on_tx)
                    g *= w_tx[c][p];
                if (g != 1.0)
                    path.amplitude *= g;
            }
        }
    }
    r.extensions.push_back("sns");
}

ScattererAnchors place_scatterer_anchors(const ClusterSet &set, const Position3 &tx, const Position3 &rx,
                                         RandomStream &stream, double split_lo, double split_hi)
{
    if (!(split_lo >= 0.0 && split_hi <= 1.0 && split_lo <= split_hi))
        throw std::invalid_argument("place_scatterer_anchors: split range must lie inside [0, 1]");
    std::vector<double> split(set.clusters.size());
    for (auto &f : split)
        f = stream.uniform(split_lo, split_hi);
    return place_scatterer_anchors(set, tx, rx, split);
}

ScattererAnchors place_scatterer_anchors(const ClusterSet &set, const Position3 &tx, const Position3 &rx,
                                         const std::vector<double> &split)
{
    if (split.size() != set.clusters.size())
        throw std::invalid_argument("place_scatterer_anchors: one split fraction per cluster required");
    ScattererAnchors a;
    a.split = split;
    const Vec3 direct = rx - tx;
    const double d = direct.norm();
    for (std::size_t n = 0; n < set.clusters.size(); ++n) {
        const Cluster &c = set.clusters[n];
        const double f = split[n];
        const double length = d + speed_of_light * c.delay;
        const bool los_cluster = c.specular_power > 0.0;
        if (los_cluster || !(length > d)) {
            const Position3 p = tx + direct * f;
            a.fbs.push_back(p);
            a.lbs.push_back(p);
            continue;
        }
        const Vec3 u_dep = cluster_direction(c.aod, c.zod);
        const Vec3 u_arr = cluster_direction(c.aoa, c.zoa);
        auto total = [&](double s) {
            const Position3 fb = tx + u_dep * (f * s);
            const Position3 lb = rx + u_arr * ((1.0 - f) * s);
            return s + (lb - fb).norm();
        };
        // total(s) is non-decreasing with total(0) = d < length <= total(length).
        double lo = 0.0, hi = length;
        for (int it = 0; it < 200 && hi - lo > 1e-12 * length; ++it) {
            const double mid = 0.5 * (lo + hi);
            (total(mid) < length ? lo : hi) = mid;
        }
        const double s = 0.5 * (lo + hi);
        a.fbs.push_back(tx + u_dep * (f * s));
        a.lbs.push_back(rx + u_arr * ((1.0 - f) * s));
    }
    return a;
}

std::vector<double> nearfield_phase_offsets(const AntennaArray &array, const Position3 &source, double lambda)
{
    const Vec3 to_src = source - array.position;
    const double r_ref = to_src.norm();
    if (!(r_ref > 0.0))
        throw std::invalid_argument("nearfield_phase_offsets: source coincides with the array reference");
    const Vec3 u = to_src / r_ref;
    std::vector<double> a(array.size());
    for (std::size_t e = 0; e < array.size(); ++e) {
        const Vec3 pe = array.element_position(e);
        const double r_e = (pe - source).norm();
        if (!(r_e > 0.0))
            throw std::invalid_argument("nearfield_phase_offsets: source coincides with an element");
        a[e] = 2.0 * pi / lambda * (r_e - (r_ref - (pe - array.position).dot(u)));
    }
    return a;
}

NearFieldSources nearfield_sources(const ClusterSet &set, const ScattererAnchors &anchors, const Position3 &tx,
                                   const Position3 &rx, bool tx_side, bool rx_side)
{
    NearFieldSources s;
    s.tx_side = tx_side;
    s.rx_side = rx_side;
    s.tx_view.resize(set.clusters.size());
    s.rx_view.resize(set.clusters.size());
    for (std::size_t n = 0; n < set.clusters.size(); ++n) {
        const Cluster &c = set.clusters[n];
        const double r_tx = std::max((anchors.fbs.at(n) - tx).norm(), 1e-3);
        const double r_rx = std::max((anchors.lbs.at(n) - rx).norm(), 1e-3);
        for (std::size_t m = 0; m < c.num_rays(); ++m) {
            const Vec3 u_dep = cluster_direction(c.aod + c.ray_aod[m], c.zod + c.ray_zod[m]);
            const Vec3 u_arr = cluster_direction(c.aoa + c.ray_aoa[m], c.zoa + c.ray_zoa[m]);
            s.tx_view[n].push_back(tx + u_dep * r_tx);
            s.rx_view[n].push_back(rx + u_arr * r_rx);
        }
        if (c.specular_power > 0.0) {
            s.tx_view[n].push_back(rx);
            s.rx_view[n].push_back(tx);
        }
    }
    return s;
}

} // namespace egbsm

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

#include "egbsm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace egbsm {

namespace {

constexpr double offset_table[20] = {0.0447,  -0.0447, 0.1413,  -0.1413, 0.2492,  -0.2492, 0.3715,
                                     -0.3715, 0.5129,  -0.5129, 0.6797,  -0.6797, 0.8844,  -0.8844,
                                     1.1481,  -1.1481, 1.5195,  -1.5195, 2.1551,  -2.1551};

struct ScalingPoint {
    int n;
    double c;
};

constexpr ScalingPoint azimuth_points[] = {{2, 0.501},  {3, 0.680},  {4, 0.779},  {5, 0.860},  {8, 1.018},
                                           {10, 1.090}, {11, 1.123}, {12, 1.146}, {14, 1.190}, {15, 1.211},
                                           {16, 1.226}, {19, 1.273}, {20, 1.289}, {25, 1.358}};
constexpr ScalingPoint zenith_points[] = {{2, 0.430},  {3, 0.594},  {4, 0.697},  {8, 0.889},
                                          {10, 0.957}, {11, 1.031}, {12, 1.104}, {15, 1.1088},
                                          {19, 1.184}, {20, 1.178}, {25, 1.282}};

template <std::size_t N>
double interpolate(const ScalingPoint (&pts)[N], int n)
{
    if (n <= pts[0].n)
        return pts[0].c;
    if (n >= pts[N - 1].n)
        return pts[N - 1].c;
    for (std::size_t i = 1; i < N; ++i) {
        if (n <= pts[i].n) {
            const double t = static_cast<double>(n - pts[i - 1].n) / static_cast<double>(pts[i].n - pts[i - 1].n);
            return pts[i - 1].c + t * (pts[i].c - pts[i - 1].c);
        }
    }
    return pts[N - 1].c;
}

double wrap_deg(double deg)
{
    return rad2deg(wrap_azimuth(deg2rad(deg)));
}

DirectionPair ray_direction(double az_deg, double zen_deg)
{
    return canonical_direction(deg2rad(az_deg), deg2rad(zen_deg));
}

/// Diffuse ray of one cluster, resolved to global directions.
struct RayGeometry {
    DirectionPair departure;
    DirectionPair arrival;
    double power = 0.0;
    PolarizationMatrix cpm;
    int ray_id = 0;
};

bool uniform_elements(const AntennaArray &a)
{
    for (const auto &e : a.elements) {
        const auto &f = a.elements.front();
        if (e.pattern != f.pattern || e.q != f.q || e.peak_gain != f.peak_gain || e.slant != f.slant)
            return false;
    }
    return true;
}

/// Per-element field patterns for one direction; computed once when all elements are alike.
void fields_for(const AntennaArray &a, bool uniform, const DirectionPair &dir, std::vector<FieldPattern> &out)
{
    out.resize(a.size());
    if (uniform) {
        const FieldPattern f = global_field_pattern(a, 0, dir);
        std::fill(out.begin(), out.end(), f);
        return;
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = global_field_pattern(a, i, dir);
}

} // namespace

double ClusterSet::power_sum() const
{
    double s = 0.0;
    for (const auto &c : clusters)
        s += c.power;
    return s;
}

std::vector<double> draw_raw_cluster_delays(int n, double ds, double r_tau, RandomStream &stream)
{
    std::vector<double> tau(static_cast<std::size_t>(std::max(n, 0)));
    for (auto &t : tau)
        t = -r_tau * ds * std::log(1.0 - stream.uniform01());
    return tau;
}

std::vector<double> generate_cluster_delays(int n, double ds, double r_tau, RandomStream &stream)
{
    if (n < 1)
        throw std::invalid_argument("generate_cluster_delays: need at least one cluster");
    if (!(ds > 0.0))
        throw std::invalid_argument("generate_cluster_delays: delay spread must be positive");
    auto tau = draw_raw_cluster_delays(n, ds, r_tau, stream);
    const double lo = *std::min_element(tau.begin(), tau.end());
    for (auto &t : tau)
        t -= lo;
    std::sort(tau.begin(), tau.end());
    return tau;
}

double los_delay_scaling(double k)
{
    return 0.7705 - 0.0433 * k + 0.0002 * k * k + 0.000017 * k * k * k;
}

std::vector<double> generate_cluster_powers(std::span<const double> delays, double ds, double r_tau,
                                            double shadow_std_db, std::optional<double> k_db, RandomStream &stream)
{
    std::vector<double> p(delays.size());
    for (std::size_t n = 0; n < delays.size(); ++n) {
        const double z = stream.normal(0.0, shadow_std_db);
        p[n] = std::exp(-delays[n] * (r_tau - 1.0) / (r_tau * ds)) * std::pow(10.0, -z / 10.0);
    }
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto &v : p)
        v /= sum;
    if (k_db && !p.empty()) {
        const double k = std::pow(10.0, *k_db / 10.0);
        for (auto &v : p)
            v /= (k + 1.0);
        p[0] += k / (k + 1.0);
    }
    return p;
}

std::span<const double> ray_offset_table()
{
    return offset_table;
}

double azimuth_scaling_factor(int n)
{
    return interpolate(azimuth_points, n);
}

double zenith_scaling_factor(int n)
{
    return interpolate(zenith_points, n);
}

ClusterAngles generate_angles_and_rays(std::span<const double> powers, const AngleStatistics &s,
                                       std::optional<double> k_db, std::span<const double> offsets, int rays,
                                       RandomStream &stream)
{
    const std::size_t n = powers.size();
    if (rays < 1 || static_cast<std::size_t>(rays) > offsets.size())
        throw std::invalid_argument("generate_angles_and_rays: ray count exceeds the offset table");
    ClusterAngles out;
    if (n == 0)
        return out;
    const double pmax = *std::max_element(powers.begin(), powers.end());

    double c_phi = azimuth_scaling_factor(s.scaling_cluster_count);
    double c_theta = zenith_scaling_factor(s.scaling_cluster_count);
    if (k_db) {
        const double k = *k_db;
        c_phi *= 1.1035 - 0.028 * k - 2e-3 * k * k + 1e-4 * k * k * k;
        c_theta *= 1.3086 + 0.0339 * k - 0.0077 * k * k + 2e-4 * k * k * k;
    }

    const double los_aod = rad2deg(s.los_departure.azimuth);
    const double los_zod = rad2deg(s.los_departure.zenith);
    const double los_aoa = rad2deg(s.los_arrival.azimuth);
    const double los_zoa = rad2deg(s.los_arrival.zenith);

    auto draw_centers = [&](double spread, bool zenith, double jitter_div) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ratio = std::max(powers[i] / pmax, 1e-300);
            const double base = zenith ? -spread * std::log(ratio) / c_theta
                                       : 2.0 * (spread / 1.4) * std::sqrt(-std::log(ratio)) / c_phi;
            const double x = stream.bernoulli(0.5) ? 1.0 : -1.0;
            const double y = stream.normal(0.0, spread / jitter_div);
            v[i] = x * base + y;
        }
        if (k_db) {
            const double first = v[0];
            for (auto &a : v)
                a -= first;
        }
        return v;
    };

    out.aoa = draw_centers(s.asa, false, 7.0);
    out.aod = draw_centers(s.asd, false, 7.0);
    out.zoa = draw_centers(s.zsa, true, 7.0);
    out.zod = draw_centers(s.zsd, true, 7.0);
    for (std::size_t i = 0; i < n; ++i) {
        out.aoa[i] = wrap_deg(out.aoa[i] + los_aoa);
        out.aod[i] = wrap_deg(out.aod[i] + los_aod);
        out.zoa[i] += los_zoa;
        out.zod[i] += los_zod + (k_db ? 0.0 : s.zod_offset);
    }

    const auto m = static_cast<std::size_t>(rays);
    const std::span<const double> alpha = offsets.first(m);
    out.ray_aoa.resize(n);
    out.ray_aod.resize(n);
    out.ray_zoa.resize(n);
    out.ray_zod.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto p_aod = stream.permutation(m);
        const auto p_zoa = stream.permutation(m);
        const auto p_zod = stream.permutation(m);
        for (std::size_t r = 0; r < m; ++r) {
            out.ray_aoa[i].push_back(s.c_asa * alpha[r]);
            out.ray_aod[i].push_back(s.c_asd * alpha[p_aod[r]]);
            out.ray_zoa[i].push_back(s.c_zsa * alpha[p_zoa[r]]);
            out.ray_zod[i].push_back(s.c_zsd * alpha[p_zod[r]]);
        }
    }
    return out;
}

ChannelRealization assemble_paths(const ClusterSet &set, const AntennaArray &tx, const AntennaArray &rx,
                                  const AssemblyOptions &o, const NearFieldSources *nf)
{
    if (!(o.carrier_hz > 0.0))
        throw std::invalid_argument("assemble_paths: carrier frequency must be positive");
    if (tx.size() == 0 || rx.size() == 0)
        throw std::invalid_argument("assemble_paths: empty antenna array");
    const double lambda = wavelength(o.carrier_hz);
    const double k0 = 2.0 * pi / lambda;

    ChannelRealization r;
    r.kind = o.kind;
    r.carrier_hz = o.carrier_hz;
    r.delay_mode = o.delay_mode;
    r.n_tx = tx.size();
    r.n_rx = rx.size();
    r.tx_position = tx.position;
    r.rx_position = rx.position;
    r.paths.assign(r.n_tx * r.n_rx, {});

    const double delay_offset = o.delay_mode == DelayMode::absolute ? o.los_distance / speed_of_light : 0.0;
    const bool tx_uniform = uniform_elements(tx);
    const bool rx_uniform = uniform_elements(rx);

    std::vector<Vec3> tx_offsets(tx.size()), rx_offsets(rx.size());
    for (std::size_t i = 0; i < tx.size(); ++i)
        tx_offsets[i] = tx.element_position(i) - tx.position;
    for (std::size_t i = 0; i < rx.size(); ++i)
        rx_offsets[i] = rx.element_position(i) - rx.position;

    std::vector<FieldPattern> f_tx, f_rx;
    std::vector<cdouble> ph_tx(tx.size()), ph_rx(rx.size());

    for (std::size_t n = 0; n < set.clusters.size(); ++n) {
        const Cluster &c = set.clusters[n];
        ClusterInfo info;
        info.id = static_cast<int>(n);
        info.power = c.power;
        info.delay = c.delay;
        info.shared_with = c.shared_with;
        r.clusters.push_back(info);

        std::vector<RayGeometry> rays;
        for (std::size_t m = 0; m < c.num_rays(); ++m) {
            RayGeometry g;
            g.departure = ray_direction(c.aod + c.ray_aod[m], c.zod + c.ray_zod[m]);
            g.arrival = ray_direction(c.aoa + c.ray_aoa[m], c.zoa + c.ray_zoa[m]);
            g.power = c.ray_power[m];
            g.ray_id = static_cast<int>(m);
            if (o.cpm == CpmPolicy::random) {
                const double inv = std::sqrt(1.0 / std::pow(10.0, c.xpr_db[m] / 10.0));
                const auto &ph = c.phases[m];
                g.cpm = {std::polar(1.0, ph[0]), inv * std::polar(1.0, ph[1]), inv * std::polar(1.0, ph[2]),
                         std::polar(1.0, ph[3])};
            }
            else {
                g.cpm = PolarizationMatrix::diagonal(std::polar(1.0, c.phases[m][0]), std::polar(1.0, c.phases[m][3]));
            }
            rays.push_back(g);
        }
        if (c.specular_power > 0.0) {
            RayGeometry g;
            g.departure = set.los_departure;
            g.arrival = set.los_arrival;
            g.power = c.specular_power;
            g.ray_id = static_cast<int>(c.num_rays());
            const cdouble los_phase = std::polar(1.0, -k0 * o.los_distance);
            g.cpm = PolarizationMatrix::diagonal(los_phase, -los_phase);
            rays.push_back(g);
        }

        for (std::size_t ri = 0; ri < rays.size(); ++ri) {
            const RayGeometry &g = rays[ri];
            fields_for(tx, tx_uniform, g.departure, f_tx);
            fields_for(rx, rx_uniform, g.arrival, f_rx);
            const Vec3 u_tx = unit_vector(g.departure);
            const Vec3 u_rx = unit_vector(g.arrival);
            const double doppler = (u_rx.dot(o.rx_velocity) + u_tx.dot(o.tx_velocity)) / lambda;

            for (std::size_t p = 0; p < tx.size(); ++p) {
                if (nf && nf->tx_side) {
                    const Vec3 &src = nf->tx_view.at(n).at(ri);
                    ph_tx[p] = std::polar(1.0, -k0 * ((tx.position + tx_offsets[p] - src).norm() - (tx.position - src).norm()));
                }
                else {
                    ph_tx[p] = std::polar(1.0, k0 * u_tx.dot(tx_offsets[p]));
                }
            }
            for (std::size_t q = 0; q < rx.size(); ++q) {
                if (nf && nf->rx_side) {
                    const Vec3 &src = nf->rx_view.at(n).at(ri);
                    ph_rx[q] = std::polar(1.0, -k0 * ((rx.position + rx_offsets[q] - src).norm() - (rx.position - src).norm()));
                }
                else {
                    ph_rx[q] = std::polar(1.0, k0 * u_rx.dot(rx_offsets[q]));
                }
            }

            const double amp = std::sqrt(g.power);
            for (std::size_t q = 0; q < rx.size(); ++q) {
                for (std::size_t p = 0; p < tx.size(); ++p) {
                    const FieldPattern &a = f_tx[p];
                    const FieldPattern &b = f_rx[q];
                    const cdouble pol = b.f_theta * (g.cpm.tt * a.f_theta + g.cpm.tp * a.f_phi) +
                                        b.f_phi * (g.cpm.pt * a.f_theta + g.cpm.pp * a.f_phi);
                    PropagationPath path;
                    path.cluster_id = static_cast<int>(n);
                    path.ray_id = g.ray_id;
                    path.delay = c.delay + delay_offset;
                    path.amplitude = amp * pol * ph_tx[p] * ph_rx[q];
                    path.departure = g.departure;
                    path.arrival = g.arrival;
                    path.doppler = doppler;
                    r.paths[q * r.n_tx + p].push_back(path);
                }
            }
        }
    }
    return r;
}

void apply_large_scale(ChannelRealization &r, double path_loss_db, double shadow_fading_db)
{
    if (r.large_scale_applied)
        throw std::logic_error("apply_large_scale: already applied");
    scale_amplitudes(r, std::pow(10.0, -(path_loss_db + shadow_fading_db) / 20.0));
    r.large_scale.path_loss_db = path_loss_db;
    r.large_scale.shadow_fading_db = shadow_fading_db;
    r.large_scale_applied = true;
}

void eliminate_weak_clusters(ClusterSet &set, double threshold_db)
{
    if (set.clusters.empty())
        return;
    double pmax = 0.0;
    for (const auto &c : set.clusters)
        pmax = std::max(pmax, c.power);
    const double floor = pmax * std::pow(10.0, threshold_db / 10.0);
    std::erase_if(set.clusters, [&](const Cluster &c) { return c.power < floor; });
    const double sum = set.power_sum();
    for (auto &c : set.clusters) {
        const double s = 1.0 / sum;
        c.power *= s;
        c.specular_power *= s;
        for (auto &p : c.ray_power)
            p *= s;
    }
}

LinkDistances link_distances(const Position3 &tx, const Position3 &rx)
{
    LinkDistances d;
    const Vec3 v = rx - tx;
    d.d2d = v.norm_xy();
    d.d3d = v.norm();
    d.h_bs = std::max(tx.z, rx.z);
    d.h_ut = std::min(tx.z, rx.z);
    return d;
}

LinkDraft draft_link(const LinkRequest &req, const TableSet &tables, const SeedTree &seeds)
{
    LinkDraft d;
    d.request = req;
    d.master_seed = seeds.master_seed();
    d.distances = link_distances(req.tx.position, req.rx.position);
    if (!(d.distances.d3d > 0.0))
        throw std::invalid_argument("draft_link: tx and rx positions coincide");

    // LOS state; the draw is always taken so forced states do not shift other streams.
    auto los_stream = seeds.stream("los");
    const double u = los_stream.uniform01();
    bool los = u < los_probability(req.scenario, d.distances.d2d, d.distances.h_ut);
    if (req.state_mode == StateMode::los || req.los_only)
        los = true;
    else if (req.state_mode == StateMode::nlos)
        los = false;

    d.record = lookup_table(tables, req.scenario, los ? LinkState::los : LinkState::nlos, req.carrier_hz);
    auto lsp_stream = seeds.stream("lsp");
    d.lsp = generate_lsps(d.record, lsp_stream);

    const ScenarioRecord &rec = d.record;
    const std::optional<double> k_db = los ? std::optional<double>(d.lsp.k_db) : std::nullopt;
    ClusterSet &set = d.clusters;
    set.los = los;
    set.k_factor_db = los ? d.lsp.k_db : 0.0;
    set.los_departure = direction_of(req.rx.position - req.tx.position);
    set.los_arrival = direction_of(req.tx.position - req.rx.position);

    auto delay_stream = seeds.stream("delays");
    const auto delays = generate_cluster_delays(rec.num_clusters, d.lsp.ds, rec.r_tau, delay_stream);
    auto power_stream = seeds.stream("powers");
    const auto powers =
        generate_cluster_powers(delays, d.lsp.ds, rec.r_tau, rec.cluster_shadow_std_db, k_db, power_stream);
    const double c_tau = los ? los_delay_scaling(d.lsp.k_db) : 1.0;
    const double k_lin = los ? std::pow(10.0, d.lsp.k_db / 10.0) : 0.0;

    set.clusters.resize(delays.size());
    for (std::size_t n = 0; n < delays.size(); ++n) {
        auto &c = set.clusters[n];
        c.delay = delays[n] / c_tau;
        c.power = powers[n];
        c.specular_power = (los && n == 0) ? k_lin / (k_lin + 1.0) : 0.0;
    }
    if (req.eliminate_weak)
        eliminate_weak_clusters(set);

    // Angles use the diffuse (NLOS-form) powers.
    std::vector<double> diffuse(set.clusters.size());
    for (std::size_t n = 0; n < diffuse.size(); ++n)
        diffuse[n] = set.clusters[n].power - set.clusters[n].specular_power;

    AngleStatistics st;
    st.asd = d.lsp.asd;
    st.asa = d.lsp.asa;
    st.zsd = d.lsp.zsd;
    st.zsa = d.lsp.zsa;
    st.c_asd = rec.c_asd_deg;
    st.c_asa = rec.c_asa_deg;
    st.c_zsa = rec.c_zsa_deg;
    st.c_zsd = 0.375 * std::pow(10.0, rec.lg_zsd.mu);
    st.zod_offset = rec.zod_offset_deg;
    st.scaling_cluster_count = rec.num_clusters;
    st.los_departure = set.los_departure;
    st.los_arrival = set.los_arrival;
    auto angle_stream = seeds.stream("angles");
    const auto ang = generate_angles_and_rays(diffuse, st, k_db, ray_offset_table(), rec.rays_per_cluster, angle_stream);

    auto xpr_stream = seeds.stream("xpr");
    auto phase_stream = seeds.stream("phases");
    const auto m = static_cast<std::size_t>(rec.rays_per_cluster);
    for (std::size_t n = 0; n < set.clusters.size(); ++n) {
        auto &c = set.clusters[n];
        c.aod = ang.aod[n];
        c.aoa = ang.aoa[n];
        c.zod = ang.zod[n];
        c.zoa = ang.zoa[n];
        c.ray_aod = ang.ray_aod[n];
        c.ray_aoa = ang.ray_aoa[n];
        c.ray_zod = ang.ray_zod[n];
        c.ray_zoa = ang.ray_zoa[n];
        c.ray_power.assign(m, diffuse[n] / static_cast<double>(m));
        c.xpr_db.resize(m);
        c.phases.resize(m);
        for (std::size_t r = 0; r < m; ++r) {
            c.xpr_db[r] = xpr_stream.normal(rec.xpr_mu_db, rec.xpr_sigma_db);
            for (auto &ph : c.phases[r])
                ph = phase_stream.uniform(-pi, pi);
        }
    }

    if (req.los_only) {
        Cluster c;
        c.power = 1.0;
        c.specular_power = 1.0;
        c.aod = rad2deg(set.los_departure.azimuth);
        c.zod = rad2deg(set.los_departure.zenith);
        c.aoa = rad2deg(set.los_arrival.azimuth);
        c.zoa = rad2deg(set.los_arrival.zenith);
        set.clusters = {c};
    }

    switch (req.path_loss) {
    case PathLossMode::scenario:
        d.path_loss_db = path_loss_db(req.scenario, rec.state, d.distances, req.carrier_hz);
        break;
    case PathLossMode::fspl:
        d.path_loss_db = fspl_db(d.distances.d3d, req.carrier_hz);
        break;
    case PathLossMode::none:
        d.path_loss_db = 0.0;
        break;
    }
    d.shadow_fading_db = req.shadow_fading ? d.lsp.sf_db : 0.0;
    return d;
}

ChannelRealization finish_link(const LinkDraft &d, const NearFieldSources *near_field)
{
    AssemblyOptions o;
    o.carrier_hz = d.request.carrier_hz;
    o.tx_velocity = d.request.tx_velocity;
    o.rx_velocity = d.request.rx_velocity;
    o.delay_mode = d.request.delay_mode;
    o.los_distance = d.distances.d3d;
    o.cpm = d.request.cpm;
    o.kind = d.request.kind;
    ChannelRealization r = assemble_paths(d.clusters, d.request.tx, d.request.rx, o, near_field);
    r.master_seed = d.master_seed;
    r.large_scale.los = d.clusters.los;
    r.large_scale.k_factor_db = d.clusters.los ? d.lsp.k_db : 0.0;
    r.large_scale.delay_spread = d.lsp.ds;
    r.large_scale.asd = d.lsp.asd;
    r.large_scale.asa = d.lsp.asa;
    r.large_scale.zsd = d.lsp.zsd;
    r.large_scale.zsa = d.lsp.zsa;
    r.large_scale.distance_3d = d.distances.d3d;
    apply_large_scale(r, d.path_loss_db, d.shadow_fading_db);
    return r;
}

ChannelRealization generate_baseline_link(const LinkRequest &request, const TableSet &tables, const SeedTree &seeds)
{
    return finish_link(draft_link(request, tables, seeds));
}

} // namespace egbsm

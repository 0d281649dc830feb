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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "egbsm/engine.hpp"

using namespace egbsm;

namespace {

const TableSet &baseline()
{
    static const TableSet t = load_table_set(resolve_table_path("baseline"));
    return t;
}

Cluster single_ray_cluster(double aoa_deg, double zoa_deg, double power = 1.0)
{
    Cluster c;
    c.power = power;
    c.aoa = aoa_deg;
    c.zoa = zoa_deg;
    c.aod = 0.0;
    c.zod = 90.0;
    c.ray_aod = {0.0};
    c.ray_zod = {0.0};
    c.ray_aoa = {0.0};
    c.ray_zoa = {0.0};
    c.ray_power = {power};
    c.xpr_db = {300.0};
    c.phases = {{0.7, -1.1, 2.0, 0.4}};
    return c;
}

LinkRequest request(const std::string &scenario, double fc)
{
    LinkRequest r;
    r.scenario = scenario;
    r.carrier_hz = fc;
    r.tx = make_ula(2, 0.5 * wavelength(fc), {});
    r.tx.position = {0, 0, 10};
    r.rx = make_ula(4, 0.5 * wavelength(fc), {});
    r.rx.position = {60, 25, 1.5};
    return r;
}

} // namespace

TEST_CASE("cluster delays")
{
    auto s = SeedTree(1).stream("delays");
    CHECK(generate_cluster_delays(1, 50e-9, 3.0, s) == std::vector<double>{0.0});
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = generate_cluster_delays(12, 40e-9, 2.3, s);
        CHECK(d.front() == 0.0);
        CHECK(std::is_sorted(d.begin(), d.end()));
    }
    double sum = 0.0;
    int count = 0;
    for (int trial = 0; trial < 5000; ++trial) {
        for (double v : draw_raw_cluster_delays(10, 30e-9, 3.0, s)) {
            sum += v;
            ++count;
        }
    }
    CHECK(sum / count == doctest::Approx(3.0 * 30e-9).epsilon(0.02));
}

TEST_CASE("cluster powers")
{
    auto s = SeedTree(2).stream("powers");
    const std::vector<double> same(5, 0.0);
    for (double p : generate_cluster_powers(same, 30e-9, 3.0, 0.0, std::nullopt, s))
        CHECK(p == doctest::Approx(0.2));
    const std::vector<double> d{0.0, 10e-9, 30e-9, 90e-9};
    const auto k60 = generate_cluster_powers(d, 30e-9, 3.0, 3.0, 60.0, s);
    CHECK(k60[0] >= 0.999);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto p = generate_cluster_powers(d, 30e-9, 3.0, 3.0, trial % 2 ? std::optional<double>(9.0) : std::nullopt, s);
        CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("los delay scaling")
{
    CHECK(los_delay_scaling(0.0) == doctest::Approx(0.7705));
    CHECK(los_delay_scaling(10.0) == doctest::Approx(0.7705 - 0.433 + 0.0002 * 100.0 + 0.000017 * 1000.0));
}

TEST_CASE("scaling factors interpolate the tabulated values")
{
    CHECK(azimuth_scaling_factor(20) == doctest::Approx(1.289));
    CHECK(azimuth_scaling_factor(8) == doctest::Approx(1.018));
    CHECK(zenith_scaling_factor(12) == doctest::Approx(1.104));
    CHECK(azimuth_scaling_factor(9) == doctest::Approx(0.5 * (1.018 + 1.090)));
}

TEST_CASE("angles and rays")
{
    AngleStatistics st;
    st.asd = 10;
    st.asa = 30;
    st.zsd = 5;
    st.zsa = 10;
    st.c_asd = 5;
    st.c_asa = 11;
    st.c_zsa = 7;
    st.c_zsd = 3;
    st.scaling_cluster_count = 12;
    st.los_departure = {0.3, 1.4};
    st.los_arrival = {0.3 - pi, pi - 1.4};
    const std::vector<double> p{0.4, 0.25, 0.2, 0.1, 0.05};
    auto s = SeedTree(3).stream("angles");

    SUBCASE("ray coupling is a permutation of the scaled offsets")
    {
        const auto a = generate_angles_and_rays(p, st, std::nullopt, ray_offset_table(), 20, s);
        std::vector<double> ref(ray_offset_table().begin(), ray_offset_table().end());
        for (auto &v : ref)
            v *= st.c_zsa;
        std::sort(ref.begin(), ref.end());
        for (std::size_t n = 0; n < p.size(); ++n) {
            auto z = a.ray_zoa[n];
            std::sort(z.begin(), z.end());
            for (std::size_t m = 0; m < 20; ++m)
                CHECK(z[m] == doctest::Approx(ref[m]));
            // Symmetric table: the circular mean of the ray azimuths is the cluster center.
            double ss = 0.0, cc = 0.0;
            for (double off : a.ray_aoa[n]) {
                ss += std::sin(deg2rad(a.aoa[n] + off));
                cc += std::cos(deg2rad(a.aoa[n] + off));
            }
            CHECK(std::abs(wrap_azimuth(std::atan2(ss, cc) - deg2rad(a.aoa[n]))) < 1e-9);
        }
    }
    SUBCASE("zero spreads collapse onto the LOS direction")
    {
        AngleStatistics z = st;
        z.asd = z.asa = z.zsd = z.zsa = 0.0;
        z.c_asd = z.c_asa = z.c_zsa = z.c_zsd = 0.0;
        const auto a = generate_angles_and_rays(p, z, 9.0, ray_offset_table(), 20, s);
        for (std::size_t n = 0; n < p.size(); ++n) {
            CHECK(a.aoa[n] == doctest::Approx(rad2deg(z.los_arrival.azimuth)));
            CHECK(a.zod[n] == doctest::Approx(rad2deg(z.los_departure.zenith)));
            for (double off : a.ray_aod[n])
                CHECK(off == 0.0);
        }
    }
    SUBCASE("first cluster sits on the LOS direction in LOS mode")
    {
        const auto a = generate_angles_and_rays(p, st, 7.0, ray_offset_table(), 20, s);
        CHECK(a.aoa[0] == doctest::Approx(rad2deg(st.los_arrival.azimuth)));
        CHECK(a.aod[0] == doctest::Approx(rad2deg(st.los_departure.azimuth)));
        CHECK(a.zoa[0] == doctest::Approx(rad2deg(st.los_arrival.zenith)));
    }
    CHECK_THROWS(generate_angles_and_rays(p, st, std::nullopt, ray_offset_table(), 21, s));
}

TEST_CASE("assembly oracles")
{
    const double fc = 6e9;
    const double lambda = wavelength(fc);
    AssemblyOptions o;
    o.carrier_hz = fc;
    AntennaArray tx = make_ula(1, 0.0, {});
    AntennaArray rx = make_ula(2, 0.5 * lambda, {});

    SUBCASE("unit single ray with infinite XPR")
    {
        ClusterSet set;
        set.clusters = {single_ray_cluster(0.0, 90.0)};
        const auto r = assemble_paths(set, tx, make_ula(1, 0.0, {}), o);
        CHECK(std::abs(r.link(0, 0).at(0).amplitude) == doctest::Approx(1.0));
        CHECK(r.cluster_power_sum() == doctest::Approx(1.0));
    }
    SUBCASE("broadside and endfire phase")
    {
        ClusterSet set;
        set.clusters = {single_ray_cluster(0.0, 90.0)};
        auto r = assemble_paths(set, tx, rx, o);
        CHECK(std::abs(std::arg(r.link(0, 1)[0].amplitude / r.link(0, 0)[0].amplitude)) < 1e-12);
        set.clusters = {single_ray_cluster(90.0, 90.0)};
        r = assemble_paths(set, tx, rx, o);
        CHECK(std::abs(std::abs(std::arg(r.link(0, 1)[0].amplitude / r.link(0, 0)[0].amplitude)) - pi) < 1e-9);
    }
    SUBCASE("doppler toward the arrival direction")
    {
        ClusterSet set;
        set.clusters = {single_ray_cluster(0.0, 90.0)};
        o.rx_velocity = {5.0, 0.0, 0.0};
        const auto r = assemble_paths(set, tx, rx, o);
        CHECK(r.link(0, 0)[0].doppler == doctest::Approx(5.0 / lambda));
    }
    SUBCASE("absolute delays add the LOS flight time")
    {
        ClusterSet set;
        set.clusters = {single_ray_cluster(0.0, 90.0)};
        set.clusters[0].delay = 10e-9;
        o.delay_mode = DelayMode::absolute;
        o.los_distance = 30.0;
        const auto r = assemble_paths(set, tx, rx, o);
        CHECK(r.link(0, 0)[0].delay == doctest::Approx(10e-9 + 30.0 / speed_of_light));
    }
}

TEST_CASE("large-scale scaling applies once")
{
    ChannelRealization r;
    r.n_tx = r.n_rx = 1;
    PropagationPath p;
    p.amplitude = {1.0, 0.0};
    r.paths = {{p}};
    apply_large_scale(r, 20.0, 0.0);
    CHECK(std::abs(r.link(0, 0)[0].amplitude) == doctest::Approx(0.1));
    CHECK_THROWS(apply_large_scale(r, 20.0, 0.0));
}

TEST_CASE("weak-cluster elimination renormalizes")
{
    ClusterSet set;
    for (double p : {0.7, 0.2999, 0.0001})
        set.clusters.push_back(single_ray_cluster(0.0, 90.0, p));
    eliminate_weak_clusters(set, -25.0);
    REQUIRE(set.clusters.size() == 2);
    CHECK(set.power_sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("baseline link properties")
{
    for (const char *scn : {"InH", "UMi", "UMa"}) {
        LinkRequest req = request(scn, 3.5e9);
        if (std::string(scn) == "InH")
            req.rx.position = {12, 5, 1.5};
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto r = generate_baseline_link(req, baseline(), SeedTree(seed).child("drop", 0).child("link", 0));
            CHECK(r.cluster_power_sum() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(r.large_scale_applied);
            for (const auto &l : r.paths)
                for (const auto &p : l) {
                    CHECK(r.find_cluster(p.cluster_id) != nullptr);
                    CHECK(p.delay >= 0.0);
                }
            if (r.large_scale.los) {
                // The specular ray: delay 0 and geometric angles.
                const auto &l = r.link(0, 0);
                const auto it = std::find_if(l.begin(), l.end(), [](const PropagationPath &p) {
                    return p.cluster_id == 0 && p.ray_id == 20;
                });
                REQUIRE(it != l.end());
                CHECK(it->delay == 0.0);
                const DirectionPair geo = direction_of(req.rx.position - req.tx.position);
                CHECK(it->departure.azimuth == doctest::Approx(geo.azimuth));
                CHECK(it->departure.zenith == doctest::Approx(geo.zenith));
            }
        }
    }
}

TEST_CASE("forced states and los-only")
{
    LinkRequest req = request("UMi", 28e9);
    req.state_mode = StateMode::nlos;
    const SeedTree seeds(5);
    CHECK_FALSE(draft_link(req, baseline(), seeds).clusters.los);
    req.state_mode = StateMode::los;
    CHECK(draft_link(req, baseline(), seeds).clusters.los);
    // Forcing the state leaves the LSP stream untouched.
    req.state_mode = StateMode::automatic;
    const auto a = draft_link(req, baseline(), seeds);
    req.state_mode = a.clusters.los ? StateMode::los : StateMode::nlos;
    const auto b = draft_link(req, baseline(), seeds);
    CHECK(a.lsp.standardized == b.lsp.standardized);

    req.los_only = true;
    req.path_loss = PathLossMode::fspl;
    req.shadow_fading = false;
    const auto r = generate_baseline_link(req, baseline(), seeds);
    REQUIRE(r.clusters.size() == 1);
    for (const auto &l : r.paths)
        CHECK(l.size() == 1);
    const double d = (req.rx.position - req.tx.position).norm();
    CHECK(r.large_scale.path_loss_db == doctest::Approx(fspl_db(d, 28e9)));
    CHECK(std::norm(r.link(0, 0)[0].amplitude) == doctest::Approx(std::pow(10.0, -fspl_db(d, 28e9) / 10.0)));
}

TEST_CASE("frequency within a band changes no random draws")
{
    LinkRequest req = request("UMi", 3.5e9);
    const SeedTree seeds(8);
    const auto a = draft_link(req, baseline(), seeds);
    req.carrier_hz = 5e9;
    const auto b = draft_link(req, baseline(), seeds);
    CHECK(a.lsp.standardized == b.lsp.standardized);
    CHECK(a.clusters.los == b.clusters.los);
}

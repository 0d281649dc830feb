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

#include "egbsm/xlmimo.hpp"

using namespace egbsm;

namespace {

// One tx element, `n_rx` rx elements, one unit path per cluster on every element.
ChannelRealization flat_channel(std::size_t n_rx, std::size_t n_clusters)
{
    ChannelRealization r;
    r.n_tx = 1;
    r.n_rx = n_rx;
    for (std::size_t c = 0; c < n_clusters; ++c)
        r.clusters.push_back({static_cast<int>(c), 1.0 / n_clusters, 0.0, true, -1});
    r.paths.resize(n_rx);
    for (auto &list : r.paths)
        for (std::size_t c = 0; c < n_clusters; ++c) {
            PropagationPath p;
            p.cluster_id = static_cast<int>(c);
            p.amplitude = {0.6, -0.8};
            list.push_back(p);
        }
    return r;
}

double deg(double rad) { return rad2deg(rad); }

} // namespace

TEST_CASE("sns parameters")
{
    SnSParams p;
    CHECK_NOTHROW(p.validate());
    p.p_init = 1.2;
    CHECK_THROWS(p.validate());
    p = {};
    p.sr_length = 0;
    CHECK_THROWS(p.validate());
    CHECK(station_region_count(64, 8) == 8);
    CHECK(station_region_count(65, 8) == 9);
    CHECK(station_region_count(1, 8) == 1);
}

TEST_CASE("sns map chains")
{
    auto s = SeedTree(3).stream("sns");
    SnSParams p;
    p.p_init = 1.0;
    p.p_stay_visible = 1.0;
    const auto ones = generate_sns_map(p, 16, 10, s);
    CHECK(std::all_of(ones.values.begin(), ones.values.end(), [](auto v) { return v == 1; }));

    p = {};
    p.p_stay_visible = p.p_stay_hidden = 1.0;
    const auto frozen = generate_sns_map(p, 12, 30, s);
    for (std::size_t sr = 1; sr < frozen.n_sr; ++sr)
        for (std::size_t c = 0; c < frozen.n_clusters; ++c)
            CHECK(frozen.at(sr, c) == frozen.at(0, c));

    const auto m = generate_sns_map(SnSParams{}, 5, 7, s);
    CHECK(m.values.size() == 35);
    CHECK(std::all_of(m.values.begin(), m.values.end(), [](auto v) { return v <= 1; }));
    CHECK_THROWS(generate_sns_map(SnSParams{}, 0, 3, s));
}

TEST_CASE("sns stationary visibility")
{
    for (auto [sv, sh] : {std::pair{0.9, 0.7}, {0.5, 0.5}, {0.95, 0.2}}) {
        SnSParams p;
        p.p_stay_visible = sv;
        p.p_stay_hidden = sh;
        auto s = SeedTree(11).stream("chain");
        const auto m = generate_sns_map(p, 100000, 1, s);
        const double frac = static_cast<double>(std::count(m.values.begin(), m.values.end(), 1)) / m.values.size();
        CHECK(std::abs(frac - sns_stationary_visibility(p)) < 0.02);
    }
    SnSParams p;
    CHECK(sns_stationary_visibility(p) == doctest::Approx(0.3 / 0.4));
}

TEST_CASE("apply_sns")
{
    auto r = flat_channel(32, 3);
    const auto orig = r;
    apply_sns(r, SnSMap::filled(4, 3, true), 8);
    CHECK(r.paths == orig.paths);

    auto zero = orig;
    apply_sns(zero, SnSMap::filled(4, 3, false), 8);
    for (const auto &list : zero.paths)
        for (const auto &p : list)
            CHECK(std::abs(p.amplitude) == 0.0);

    auto one = orig;
    auto map = SnSMap::filled(4, 3, true);
    map.set(1, 2, false);
    apply_sns(one, map, 8);
    for (std::size_t e = 0; e < 32; ++e)
        for (const auto &p : one.link(0, e)) {
            const bool hidden = p.cluster_id == 2 && e >= 8 && e <= 15;
            CHECK(std::abs(p.amplitude) == doctest::Approx(hidden ? 0.0 : 1.0));
        }
    CHECK(one.clusters == orig.clusters);

    // smoothing and random maps never raise an amplitude
    auto s = SeedTree(5).stream("sns");
    for (int trial = 0; trial < 20; ++trial) {
        auto x = orig;
        apply_sns(x, generate_sns_map(SnSParams{}, 4, 3, s), 8, ArraySide::rx, trial % 2 == 0);
        for (std::size_t e = 0; e < 32; ++e)
            for (const auto &p : x.link(0, e))
                CHECK(std::abs(p.amplitude) <= 1.0 + 1e-15);
    }

    auto bad = orig;
    CHECK_THROWS(apply_sns(bad, SnSMap::filled(4, 2, true), 8));
    CHECK_THROWS(apply_sns(bad, SnSMap::filled(3, 3, true), 8));
}

TEST_CASE("sns smoothing weights")
{
    auto map = SnSMap::filled(4, 1, true);
    map.set(2, 0, false);
    const auto w = sns_element_weights(map, 0, 32, 8, true);
    CHECK(w[0] == 1.0);
    CHECK(w[31] == doctest::Approx(1.0));
    for (std::size_t e = 0; e < 32; ++e)
        CHECK((w[e] >= 0.0 && w[e] <= 1.0));
    CHECK(w[19] < 0.1);
    CHECK(w[12] < 1.0);
    CHECK(w[12] > 0.0);
}

TEST_CASE("scatterer anchors")
{
    const Position3 tx{0, 0, 10}, rx{80, 20, 1.5};
    const Position3 sc{30, 45, 6};

    ClusterSet set;
    Cluster c;
    const auto dep = direction_of(sc - tx), arr = direction_of(sc - rx);
    c.aod = deg(dep.azimuth);
    c.zod = deg(dep.zenith);
    c.aoa = deg(arr.azimuth);
    c.zoa = deg(arr.zenith);
    const double a = (sc - tx).norm(), b = (sc - rx).norm();
    c.delay = (a + b - (rx - tx).norm()) / speed_of_light;
    set.clusters.push_back(c);

    Cluster los;
    los.specular_power = 0.5;
    set.clusters.push_back(los);

    const auto anchors = place_scatterer_anchors(set, tx, rx, {a / (a + b), 0.4});
    CHECK((anchors.fbs[0] - sc).norm() < 1e-6);
    CHECK((anchors.lbs[0] - sc).norm() < 1e-6);
    // LOS cluster collapses onto the direct segment
    CHECK(anchors.fbs[1] == anchors.lbs[1]);
    CHECK(((anchors.fbs[1] - tx).cross(rx - tx)).norm() < 1e-9);

    auto s = SeedTree(8).stream("anchors");
    for (int trial = 0; trial < 200; ++trial) {
        Cluster r;
        r.aod = s.uniform(-180, 180);
        r.zod = s.uniform(20, 160);
        r.aoa = s.uniform(-180, 180);
        r.zoa = s.uniform(20, 160);
        r.delay = s.uniform(1e-9, 800e-9);
        ClusterSet one;
        one.clusters.push_back(r);
        const auto x = place_scatterer_anchors(one, tx, rx, s);
        CHECK((x.split[0] >= 0.3 && x.split[0] <= 0.7));
        const Vec3 ud = unit_vector(canonical_direction(deg2rad(r.aod), deg2rad(r.zod)));
        const Vec3 ua = unit_vector(canonical_direction(deg2rad(r.aoa), deg2rad(r.zoa)));
        CHECK((x.fbs[0] - tx).cross(ud).norm() < 1e-9 * (1.0 + (x.fbs[0] - tx).norm()));
        CHECK((x.lbs[0] - rx).cross(ua).norm() < 1e-9 * (1.0 + (x.lbs[0] - rx).norm()));
        CHECK((x.fbs[0] - tx).dot(ud) >= 0.0);
        const double length = (x.fbs[0] - tx).norm() + (x.lbs[0] - x.fbs[0]).norm() + (rx - x.lbs[0]).norm();
        CHECK(length / speed_of_light == doctest::Approx((rx - tx).norm() / speed_of_light + r.delay).epsilon(1e-9));
    }
}

TEST_CASE("near-field phase offsets")
{
    const double lambda = 0.05;
    AntennaArray arr = make_ula(3, 1.0, {});
    const auto a = nearfield_phase_offsets(arr, {10, 0, 0}, lambda);
    CHECK(a[1] == 0.0);
    const double oracle = 2.0 * pi / lambda * (std::sqrt(101.0) - 10.0);
    CHECK(std::abs(a[2] - oracle) < 1e-9);
    CHECK(std::abs(a[0] - oracle) < 1e-9);
    CHECK(oracle == doctest::Approx(6.2676).epsilon(1e-4));

    // far field: beyond the Rayleigh distance the offsets shrink monotonically
    AntennaArray xl = make_ula(64, lambda / 2, {});
    const double aperture = 63 * lambda / 2;
    const double rayleigh = 2 * aperture * aperture / lambda;
    const Vec3 u = unit_vector(canonical_direction(deg2rad(30), deg2rad(80)));
    double prev = 1e300;
    for (double k : {1.0, 2.0, 5.0, 10.0, 100.0, 1000.0}) {
        const auto off = nearfield_phase_offsets(xl, u * (k * rayleigh), lambda);
        double worst = 0.0;
        for (double v : off)
            worst = std::max(worst, std::abs(v));
        CHECK(worst < prev);
        prev = worst;
    }
    CHECK(prev < 0.01);

    CHECK_THROWS(nearfield_phase_offsets(arr, arr.position, lambda));
    CHECK_THROWS(nearfield_phase_offsets(arr, arr.element_position(0), lambda));
}

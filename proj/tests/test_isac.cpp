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

#include <cmath>

#include "egbsm/isac.hpp"

using namespace egbsm;

namespace {

const TableSet &tables()
{
    static const TableSet t = load_table_set(resolve_table_path("baseline"));
    return t;
}

ClusterSet synthetic(int n, RandomStream &s, bool los = false)
{
    ClusterSet set;
    set.los = los;
    for (int i = 0; i < n; ++i) {
        Cluster c;
        c.power = 1.0 / (1 + i);
        c.delay = s.uniform(0, 500e-9);
        c.aod = s.uniform(-180, 180);
        c.aoa = s.uniform(-180, 180);
        c.zod = s.uniform(60, 120);
        c.zoa = s.uniform(60, 120);
        set.clusters.push_back(c);
    }
    if (los)
        set.clusters[0].specular_power = 0.5;
    return set;
}

SensingRequest los_request(const Position3 &tx, const Position3 &rx, const Position3 &target, double fc)
{
    SensingRequest r;
    r.link.scenario = "UMi";
    r.link.carrier_hz = fc;
    r.link.tx = make_ula(1, 0.0, {});
    r.link.tx.position = tx;
    r.link.rx = make_ula(1, 0.0, {});
    r.link.rx.position = rx;
    r.link.los_only = true;
    r.link.path_loss = PathLossMode::fspl;
    r.link.shadow_fading = false;
    r.link.cpm = CpmPolicy::co_polar;
    r.target.position = target;
    return r;
}

} // namespace

TEST_CASE("rcs gain of a unit target")
{
    RcsModel m;
    auto s = SeedTree(1).stream("rcs");
    const auto g = rcs_gain(m, {0.3, 1.2}, {-2.0, 1.0}, s);
    CHECK(std::abs(g.tt) == doctest::Approx(1.0));
    CHECK(std::abs(g.pp) == doctest::Approx(1.0));
    CHECK(std::abs(g.tp) == 0.0);
    CHECK(std::abs(g.pt) == 0.0);

    m.a_dbsm = 20.0;
    CHECK(std::abs(rcs_gain(m, {}, {}, s).tt) == doctest::Approx(10.0));
}

TEST_CASE("rcs gaussian fluctuation")
{
    RcsModel m;
    m.a_dbsm = -12.0;
    m.b2 = B2Kind::gaussian_db;
    m.b2_std_db = 3.5;
    auto s = SeedTree(2).stream("rcs");
    const int n = 100000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        const double v = rcs_dbsm(m, {}, {}, draw_rcs_state(m, s));
        sum += v;
        sq += v * v;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - m.a_dbsm) < 0.05);
    CHECK(std::abs(std::sqrt(sq / n - mean * mean) - m.b2_std_db) < 0.05);
}

TEST_CASE("rcs azimuth table")
{
    RcsModel m;
    m.b1 = B1Kind::azimuth_table;
    m.b1_azimuth_deg = {0, 45, 90, 135, 180, 225, 270, 315};
    m.b1_values = {8, 1, 8, 1, 8, 1, 8, 1};
    m.normalize();

    // mean over the circle is one
    double mean = 0.0;
    const int n = 36000;
    for (int i = 0; i < n; ++i)
        mean += b1_gain(m, deg2rad(i * 0.01));
    CHECK(mean / n == doctest::Approx(1.0).epsilon(1e-6));

    // four peaks at the table sides
    for (double side : {0.0, 90.0, 180.0, 270.0}) {
        const double peak = b1_gain(m, deg2rad(side));
        CHECK(peak > b1_gain(m, deg2rad(side + 5)));
        CHECK(peak > b1_gain(m, deg2rad(side - 5)));
    }
    CHECK(b1_gain(m, deg2rad(-90)) == doctest::Approx(b1_gain(m, deg2rad(270))));

    RcsModel bad = m;
    bad.b1_values[2] = -1;
    CHECK_THROWS(bad.normalize());
    bad = m;
    bad.b1_azimuth_deg[3] = 10;
    CHECK_THROWS(bad.normalize());

    // monostatic bisector is the look direction
    CHECK(bistatic_azimuth({0.7, 1.0}, {0.7, 1.0}) == doctest::Approx(0.7));
    CHECK(bistatic_azimuth({0.0, pi / 2}, {pi / 2, pi / 2}) == doctest::Approx(pi / 4));
}

TEST_CASE("target doppler")
{
    const double lambda = 0.1;
    const Position3 radar{0, 0, 0}, target{100, 0, 0};
    CHECK(target_doppler({-5, 0, 0}, radar, radar, target, lambda) == doctest::Approx(2 * 5 / lambda));
    CHECK(target_doppler({0, 0, 7}, radar, radar, target, lambda) == doctest::Approx(0.0));

    // tx leg along +x, rx leg along +y: velocity toward the tx
    const Position3 tx{-100, 0, 0}, rx{0, -100, 0}, at{0, 0, 0};
    CHECK(target_doppler({-3, 0, 0}, tx, rx, at, lambda) == doctest::Approx(3 / lambda));
    CHECK_THROWS(target_doppler({1, 0, 0}, tx, rx, tx, lambda));
}

TEST_CASE("shared cluster binding")
{
    auto s = SeedTree(3).stream("shared");
    const ClusterSet comm = synthetic(6, s, true);
    ClusterSet sens = synthetic(8, s);
    const ClusterSet orig = sens;

    CHECK(bind_shared_clusters(comm, sens, {}, s).empty());
    for (std::size_t i = 0; i < sens.clusters.size(); ++i)
        CHECK(sens.clusters[i].delay == orig.clusters[i].delay);

    SharedClusterPolicy p;
    p.ns = 3;
    const auto b = bind_shared_clusters(comm, sens, p, s);
    REQUIRE(b.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const Cluster &c = comm.clusters[static_cast<std::size_t>(b[k].comm_cluster)];
        const Cluster &d = sens.clusters[static_cast<std::size_t>(b[k].sensing_cluster)];
        CHECK(c.specular_power == 0.0);
        CHECK(d.delay == c.delay);
        CHECK(d.aod == c.aod);
        CHECK(d.zod == c.zod);
        CHECK(d.aoa == c.aoa);
        CHECK(d.zoa == c.zoa);
        CHECK(d.power == orig.clusters[static_cast<std::size_t>(b[k].sensing_cluster)].power);
        CHECK(d.shared_with == b[k].comm_cluster);
    }
    // strongest non-LOS first on both sides
    CHECK(b[0].comm_cluster == 1);
    CHECK(b[0].sensing_cluster == 0);

    p.ns = 6;
    ClusterSet again = orig;
    CHECK_THROWS(bind_shared_clusters(comm, again, p, s));
}

TEST_CASE("shared binding delay jitter")
{
    auto s = SeedTree(4).stream("shared");
    ClusterSet comm = synthetic(1, s);
    comm.clusters[0].delay = 1e-6;
    SharedClusterPolicy p;
    p.ns = 1;
    p.delay_jitter_s = 5e-9;
    double total = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        ClusterSet sens = synthetic(1, s);
        bind_shared_clusters(comm, sens, p, s);
        total += std::abs(sens.clusters[0].delay - comm.clusters[0].delay);
    }
    const double expect = 5e-9 * std::sqrt(2.0 / pi);
    CHECK(std::abs(total / n - expect) < 0.05 * expect);
}

TEST_CASE("los sensing channel geometry and power")
{
    const double fc = 28e9;
    const Position3 tx{0, 0, 10}, rx{60, 20, 1.5}, at{30, 40, 25};
    auto req = los_request(tx, rx, at, fc);
    req.target.velocity = {3, -1, 0.5};
    const auto ch = build_sensing_channel(req, tables(), SeedTree(5).child("target", 0), nullptr);
    REQUIRE(ch.concatenated.path_count() == 1);
    const auto &p = ch.concatenated.paths[0][0];
    const double d1 = (at - tx).norm(), d2 = (rx - at).norm();
    CHECK(p.delay == doctest::Approx((d1 + d2) / speed_of_light).epsilon(1e-12));
    CHECK(p.doppler == doctest::Approx(target_doppler(req.target.velocity, tx, rx, at, wavelength(fc))));

    const double pl = concatenated_path_loss(fspl_db(d1, fc), fspl_db(d2, fc), 1.0, fc);
    CHECK(std::abs(-10 * std::log10(std::norm(p.amplitude)) - pl) < 0.1);
}

TEST_CASE("sensing path count and causality")
{
    const double fc = 6e9;
    const Position3 tx{0, 0, 10}, rx{80, -20, 1.5}, at{40, 25, 30};
    auto req = los_request(tx, rx, at, fc);
    req.link.los_only = false;
    req.link.path_loss = PathLossMode::scenario;
    req.link.tx = make_ula(2, wavelength(fc) / 2, {});
    req.link.tx.position = tx;
    req.prune = {-25.0, 3};
    for (std::uint64_t drop = 0; drop < 10; ++drop) {
        const auto ch = build_sensing_channel(req, tables(), SeedTree(6).child("drop", drop), nullptr);
        const std::size_t m = ch.tx_target.link(0, 0).size(), n = ch.target_rx.link(0, 0).size();
        for (const auto &list : ch.concatenated.paths) {
            CHECK(list.size() == m * n);
            for (const auto &p : list)
                CHECK(p.delay >= ((at - tx).norm() + (rx - at).norm()) / speed_of_light - 1e-12);
        }
    }
}

TEST_CASE("monostatic sensing")
{
    const double fc = 28e9;
    const Position3 radar{0, 0, 10}, at{40, 30, 50};
    auto req = los_request(radar, radar, at, fc);
    req.target.velocity = (radar - at).normalized() * 4.0;
    const auto ch = build_sensing_channel(req, tables(), SeedTree(7).child("target", 0), nullptr);
    const auto &p = ch.concatenated.paths[0][0];
    CHECK(p.delay == doctest::Approx(2 * (at - radar).norm() / speed_of_light));
    CHECK(p.doppler == doctest::Approx(2 * 4.0 / wavelength(fc)));
    req.target.position = radar;
    CHECK_THROWS(build_sensing_channel(req, tables(), SeedTree(7), nullptr));
}

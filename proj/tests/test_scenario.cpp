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

#include <json.hpp>

#include "egbsm/lsp.hpp"
#include "egbsm/propagation.hpp"
#include "egbsm/tables.hpp"

using namespace egbsm;
using nlohmann::json;

namespace {

const TableSet &baseline()
{
    static const TableSet t = load_table_set(resolve_table_path("baseline"));
    return t;
}

const TableSet &extended()
{
    static const TableSet t = load_table_set(resolve_table_path("egbsm"));
    return t;
}

json small_los_band()
{
    return json::parse(R"({
      "schema": "egbsm-tables/1", "name": "t", "provenance": "unit test",
      "scenarios": {"X": {"LOS": [{
        "f_min_ghz": 1, "f_max_ghz": 10, "num_clusters": 4, "rays_per_cluster": 20,
        "lg_ds": {"mu": -7.5, "sigma": 0.0}, "lg_asd": {"mu": 1.0, "sigma": 0.0},
        "lg_asa": {"mu": 1.2, "sigma": 0.0}, "lg_zsa": {"mu": 0.8, "sigma": 0.0},
        "lg_zsd": {"mu": 0.5, "sigma": 0.0}, "k_db": {"mu": 9, "sigma": 0},
        "sf_std_db": 0, "cluster_shadow_std_db": 3, "r_tau": 3, "xpr_db": {"mu": 9, "sigma": 3},
        "c_asd_deg": 3, "c_asa_deg": 17, "c_zsa_deg": 7
      }], "NLOS": []}}})");
}

json small_table()
{
    json t = small_los_band();
    json nlos = t["scenarios"]["X"]["LOS"][0];
    nlos.erase("k_db");
    t["scenarios"]["X"]["NLOS"].push_back(nlos);
    return t;
}

} // namespace

TEST_CASE("shipped tables load")
{
    CHECK(baseline().name == "baseline");
    CHECK(extended().name == "egbsm");
    for (const char *s : {"InH", "UMi", "UMa"})
        for (auto st : {LinkState::los, LinkState::nlos})
            for (double f : {0.5e9, 3.5e9, 6e9, 13e9, 28e9, 99e9}) {
                const auto r = lookup_table(baseline(), s, st, f);
                CHECK(r.num_clusters >= 1);
                CHECK(r.rays_per_cluster == 20);
                CHECK(r.r_tau > 1.0);
            }
}

TEST_CASE("baseline record at 3.5 GHz")
{
    const auto r = lookup_table(baseline(), "InH", LinkState::los, 3.5e9);
    CHECK(r.num_clusters == 15);
    CHECK(r.lg_ds.mu == doctest::Approx(-0.01 * std::log10(4.5) - 7.692));
    CHECK(r.lg_asa.mu == doctest::Approx(-0.19 * std::log10(4.5) + 1.781));
    CHECK(r.r_tau == doctest::Approx(3.6));
    CHECK(r.k_mu_db == doctest::Approx(7.0));
    const auto n = lookup_table(baseline(), "UMi", LinkState::nlos, 3.5e9);
    CHECK(n.num_clusters == 19);
    CHECK(n.r_tau == doctest::Approx(2.1));
}

TEST_CASE("extended tables: fewer clusters at higher bands")
{
    for (auto st : {LinkState::los, LinkState::nlos}) {
        const auto lo = lookup_table(extended(), "InH", st, 6e9);
        const auto hi = lookup_table(extended(), "InH", st, 13e9);
        CHECK(hi.num_clusters < lo.num_clusters);
        REQUIRE(lo.ick);
        REQUIRE(hi.ick);
        CHECK(hi.ick->mean > lo.ick->mean);
    }
    // Step lookup at a band edge.
    const auto below = lookup_table(extended(), "UMi", LinkState::nlos, 7.124e9);
    const auto at = lookup_table(extended(), "UMi", LinkState::nlos, 7.125e9);
    CHECK(below.f_max_hz == doctest::Approx(7.125e9));
    CHECK(at.f_min_hz == doctest::Approx(7.125e9));
    CHECK(lookup_table(extended(), "InH", LinkState::los, 330e9).f_max_hz == doctest::Approx(330e9));
}

TEST_CASE("lookup errors")
{
    CHECK_THROWS_AS(lookup_table(baseline(), "InH", LinkState::los, 0.0), std::out_of_range);
    CHECK_THROWS_AS(lookup_table(baseline(), "InH", LinkState::los, 200e9), std::out_of_range);
    CHECK_THROWS(lookup_table(baseline(), "RMa", LinkState::los, 3e9));
    CHECK_THROWS(resolve_table_path("no_such_set"));
}

TEST_CASE("table validation collects every problem")
{
    CHECK_NOTHROW(parse_table_set(small_table()));

    json bad = small_table();
    auto &band = bad["scenarios"]["X"]["LOS"][0];
    band["num_clusters"] = 0;
    band["r_tau"] = 0.5;
    band["correlation"] = {{"ds_asa", 0.99}, {"ds_asd", 0.99}, {"asd_asa", -0.99}};
    try {
        parse_table_set(bad);
        FAIL("expected ConfigError");
    }
    catch (const ConfigError &e) {
        CHECK(e.messages().size() >= 3);
    }

    json overlap = small_table();
    auto b2 = overlap["scenarios"]["X"]["LOS"][0];
    b2["f_min_ghz"] = 5;
    b2["f_max_ghz"] = 20;
    overlap["scenarios"]["X"]["LOS"].push_back(b2);
    CHECK_THROWS_AS(parse_table_set(overlap), ConfigError);

    json rising = small_table();
    auto b3 = rising["scenarios"]["X"]["LOS"][0];
    b3["f_min_ghz"] = 10;
    b3["f_max_ghz"] = 20;
    b3["num_clusters"] = 9;
    rising["scenarios"]["X"]["LOS"].push_back(b3);
    CHECK_THROWS_AS(parse_table_set(rising), ConfigError);
}

TEST_CASE("correlation square root")
{
    LspMatrix c{};
    for (int i = 0; i < lsp_count; ++i)
        c[i][i] = 1.0;
    c[lsp_ds][lsp_asa] = c[lsp_asa][lsp_ds] = 0.8;
    c[lsp_sf][lsp_ds] = c[lsp_ds][lsp_sf] = -0.4;
    const LspMatrix s = correlation_sqrt(c);
    for (int i = 0; i < lsp_count; ++i)
        for (int j = 0; j < lsp_count; ++j) {
            double v = 0.0;
            for (int k = 0; k < lsp_count; ++k)
                v += s[i][k] * s[k][j];
            CHECK(v == doctest::Approx(c[i][j]).epsilon(1e-12));
        }
    c[lsp_ds][lsp_asd] = c[lsp_asd][lsp_ds] = 0.9;
    c[lsp_asd][lsp_asa] = c[lsp_asa][lsp_asd] = -0.9;
    CHECK_THROWS_AS(correlation_sqrt(c), ConfigError);
}

TEST_CASE("los probability")
{
    for (const char *s : {"InH", "UMi", "UMa"}) {
        CHECK(los_probability(s, 0.0) == 1.0);
        double prev = 1.0;
        for (double d = 0.0; d <= 500.0; d += 0.5) {
            const double p = los_probability(s, d);
            CHECK(p >= 0.0);
            CHECK(p <= prev + 1e-15);
            prev = p;
        }
    }
    CHECK(los_probability("InH", 1.2) == 1.0);
    CHECK(los_probability("InH", 4.0) == doctest::Approx(std::exp(-(4.0 - 1.2) / 4.7)));
    CHECK(los_probability("InH", 20.0) == doctest::Approx(0.32 * std::exp(-(20.0 - 6.5) / 32.6)));
    CHECK(los_probability("UMi", 50.0) == doctest::Approx(0.36 + std::exp(-50.0 / 36.0) * 0.64));
    CHECK(los_probability("UMa", 100.0) == doctest::Approx(0.18 + std::exp(-100.0 / 63.0) * 0.82));
}

TEST_CASE("path loss against independent evaluations")
{
    CHECK(fspl_db(1.0, 1e9) == doctest::Approx(32.45).epsilon(0.01 / 32.45));
    CHECK(fspl_db(2.0, 1e9) - fspl_db(1.0, 1e9) == doctest::Approx(6.0206).epsilon(1e-4));

    auto geo = [](double d2d, double h_bs, double h_ut) {
        return LinkDistances{d2d, std::hypot(d2d, h_bs - h_ut), h_bs, h_ut};
    };
    // Reference values computed separately from the published piecewise formulas.
    CHECK(path_loss_db("UMi", LinkState::los, geo(100, 10, 1.5), 3.5e9) == doctest::Approx(85.31418910250133));
    CHECK(path_loss_db("UMi", LinkState::los, geo(500, 10, 1.5), 3.5e9) == doctest::Approx(107.10804931582909));
    CHECK(path_loss_db("UMi", LinkState::nlos, geo(100, 10, 1.5), 3.5e9) == doctest::Approx(104.64383201166098));
    CHECK(path_loss_db("UMi", LinkState::nlos, geo(500, 10, 1.5), 3.5e9) == doctest::Approx(129.26450544868536));
    CHECK(path_loss_db("UMa", LinkState::los, geo(200, 25, 1.5), 6e9) == doctest::Approx(94.25118951926834));
    CHECK(path_loss_db("UMa", LinkState::los, geo(1500, 25, 1.5), 6e9) == doctest::Approx(116.92017664480514));
    CHECK(path_loss_db("UMa", LinkState::nlos, geo(200, 25, 1.5), 6e9) == doctest::Approx(119.14363724008882));
    CHECK(path_loss_db("UMa", LinkState::nlos, geo(1500, 25, 1.5), 6e9) == doctest::Approx(153.22675402557584));
    const LinkDistances inh{std::sqrt(400.0 - 2.25), 20.0, 3.0, 1.5};
    CHECK(path_loss_db("InH", LinkState::los, inh, 28e9) == doctest::Approx(83.85097955183126));
    CHECK(path_loss_db("InH", LinkState::nlos, inh, 28e9) == doctest::Approx(103.16368381435174));

    CHECK_THROWS(path_loss_db("UMi", LinkState::los, LinkDistances{0, 0, 10, 1.5}, 3.5e9));
    CHECK_THROWS(path_loss_db("Unknown", LinkState::los, geo(10, 10, 1.5), 3.5e9));
}

TEST_CASE("lsp generation")
{
    TableSet t = parse_table_set(small_table());
    ScenarioRecord r = lookup_table(t, "X", LinkState::los, 3e9);

    SUBCASE("zero spreads give the means")
    {
        auto s = SeedTree(1).stream("lsp");
        const auto l = generate_lsps(r, s);
        CHECK(l.ds == doctest::Approx(std::pow(10.0, -7.5)));
        CHECK(l.asa == doctest::Approx(std::pow(10.0, 1.2)));
        CHECK(l.k_db == doctest::Approx(9.0));
        CHECK(l.sf_db == 0.0);
    }
    SUBCASE("rank-one correlation")
    {
        for (auto &row : r.sqrt_correlation)
            for (auto &v : row)
                v = 1.0 / std::sqrt(7.0);
        auto s = SeedTree(2).stream("lsp");
        for (int i = 0; i < 20; ++i) {
            const auto l = generate_lsps(r, s);
            for (int k = 1; k < lsp_count; ++k)
                CHECK(l.standardized[k] == doctest::Approx(l.standardized[0]));
        }
    }
    SUBCASE("empirical correlation matches the table")
    {
        const auto rec = lookup_table(baseline(), "UMi", LinkState::nlos, 3.5e9);
        auto s = SeedTree(3).stream("lsp");
        const int n = 10000;
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            const auto l = generate_lsps(rec, s);
            const double x = std::log10(l.ds), y = std::log10(l.asa);
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
            CHECK(l.asa <= max_azimuth_spread_deg);
            CHECK(l.zsa <= max_zenith_spread_deg);
        }
        const double cov = sxy / n - sx / n * sy / n;
        const double rho = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
        CHECK(std::abs(rho - rec.correlation[lsp_ds][lsp_asa]) < 0.05);
    }
}

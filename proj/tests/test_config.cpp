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
#include <filesystem>

#include "egbsm/config.hpp"

using namespace egbsm;
using nlohmann::json;

namespace {

json minimal()
{
    return json::parse(R"({
      "schema": "egbsm-config/1",
      "tx": {"position": [0, 0, 3]},
      "rx": {"position": [12, 5, 1.5]}
    })");
}

std::vector<std::string> errors_of(const json &doc)
{
    try {
        parse_config(doc);
    }
    catch (const ConfigError &e) {
        return e.messages();
    }
    return {};
}

bool mentions(const std::vector<std::string> &errs, const std::string &needle)
{
    return std::any_of(errs.begin(), errs.end(), [&](const auto &m) { return m.find(needle) != std::string::npos; });
}

} // namespace

TEST_CASE("minimal config takes defaults")
{
    const Config c = parse_config(minimal());
    const Config defaults;
    CHECK(c.scenario == defaults.scenario);
    CHECK(c.carrier_hz == defaults.carrier_hz);
    CHECK(c.tables == "baseline");
    CHECK(c.extensions == ExtensionToggles{});
    CHECK(c.prune == PruneConfig{});
    CHECK(c.tx.position == std::array<double, 3>{0, 0, 3});
    CHECK(validate_config(c).empty());
}

TEST_CASE("shipped configs load")
{
    for (const auto &entry : std::filesystem::directory_iterator(EGBSM_CONFIG_DIR)) {
        CAPTURE(entry.path().string());
        if (entry.path().extension() == ".json")
            CHECK_NOTHROW(load_config(entry.path()));
    }
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("parse errors are collected")
{
    auto doc = minimal();
    doc["bogus"] = 1;
    doc["carrier_hz"] = "fast";
    doc["tx"]["array"] = {{"layout", "ring"}};
    const auto errs = errors_of(doc);
    CHECK(mentions(errs, "bogus"));
    CHECK(mentions(errs, "carrier_hz"));

    auto missing = minimal();
    missing.erase("rx");
    CHECK(mentions(errors_of(missing), "rx"));

    auto schema = minimal();
    schema["schema"] = "other/2";
    CHECK(mentions(errors_of(schema), "schema"));

    auto layout = minimal();
    layout["tx"]["array"] = {{"layout", "ring"}};
    CHECK(mentions(errors_of(layout), "layout"));
}

TEST_CASE("cross-field validation")
{
    auto both = minimal();
    both["targets"] = json::array({{{"position", {10, 10, 10}}}});
    both["ris"] = {{"position", {5, 0, 5}}};
    both["extensions"] = {{"isac", true}};
    const auto errs = errors_of(both);
    CHECK(mentions(errs, "targets"));
    CHECK(mentions(errs, "ris"));

    auto isac = minimal();
    isac["extensions"] = {{"isac", true}};
    CHECK_FALSE(errors_of(isac).empty());

    auto mono = minimal();
    mono["rx"]["position"] = {0, 0, 3};
    CHECK_FALSE(errors_of(mono).empty());
    mono["extensions"] = {{"isac", true}};
    mono["targets"] = json::array({{{"position", {10, 10, 10}}}});
    CHECK(errors_of(mono).empty());
    mono["targets"][0]["shared"] = {{"ns", 2}};
    CHECK_FALSE(errors_of(mono).empty());

    auto sns = minimal();
    sns["sns"] = {{"p_init", 1.5}};
    CHECK(mentions(errors_of(sns), "p_init"));

    auto prune = minimal();
    prune["prune"] = {{"threshold_db", 3.0}};
    CHECK(mentions(errors_of(prune), "threshold_db"));

    auto tables = minimal();
    tables["tables"] = "no-such-table-set";
    CHECK(mentions(errors_of(tables), "tables"));
}

TEST_CASE("json round trip and hash")
{
    const Config c = load_config(std::filesystem::path(EGBSM_CONFIG_DIR) / "gen_cir.json");
    const Config back = parse_config(to_json(c));
    CHECK(back == c);
    CHECK(config_hash(back) == config_hash(c));

    Config changed = c;
    changed.seed += 1;
    CHECK(config_hash(changed) != config_hash(c));
    changed = c;
    changed.targets[0].rcs.a_dbsm += 0.5;
    CHECK(config_hash(changed) != config_hash(c));
    changed = c;
    changed.output.dir = "elsewhere";
    CHECK(config_hash(changed) == config_hash(c));
}

TEST_CASE("builders")
{
    Config c = parse_config(minimal());
    c.carrier_hz = 6e9;
    c.tx.array.layout = "upa";
    c.tx.array.rows = 2;
    c.tx.array.cols = 3;
    c.tx.array.element = {"cos_q", 2.0, 3.0, 45.0};
    c.tx.orientation_deg = {90, 10, 0};
    const auto arr = build_array(c.tx, c.carrier_hz);
    CHECK(arr.size() == 6);
    CHECK(arr.elements[0].pattern == PatternKind::cos_q);
    CHECK(arr.elements[0].peak_gain == doctest::Approx(std::pow(10.0, 0.3)));
    CHECK(arr.elements[0].slant == doctest::Approx(pi / 4));
    CHECK(arr.orientation.bearing == doctest::Approx(pi / 2));
    CHECK((arr.elements[1].local_position - arr.elements[0].local_position).norm() ==
          doctest::Approx(0.5 * wavelength(6e9)));

    RcsConfig rc;
    rc.a_dbsm = -5;
    rc.b2 = "gaussian_db";
    rc.b2_std_db = 2;
    const auto m = build_rcs_model(rc);
    CHECK(m.b2 == B2Kind::gaussian_db);
    CHECK(m.a_dbsm == -5);

    RisConfig ris;
    ris.rows = 4;
    ris.cols = 2;
    const auto panel = build_ris_panel(ris, 28e9);
    CHECK(panel.size() == 8);
    CHECK(panel.spacing == doctest::Approx(0.5 * wavelength(28e9)));
    CHECK(parse_codebook("one_bit") == CodebookKind::one_bit);
    CHECK_THROWS(parse_codebook("two_bit"));

    SnsConfig sc;
    sc.side = "both";
    CHECK(build_sns_params(sc).side == ArraySide::both);

    c.link_state = "nlos";
    c.path_loss = "fspl";
    c.delay_mode = "absolute";
    const auto req = build_link_request(c);
    CHECK(req.state_mode == StateMode::nlos);
    CHECK(req.path_loss == PathLossMode::fspl);
    CHECK(req.delay_mode == DelayMode::absolute);
    CHECK(req.tx.size() == 6);
}

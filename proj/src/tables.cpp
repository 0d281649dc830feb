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

#include "egbsm/tables.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace egbsm {

namespace {

using nlohmann::json;

constexpr const char *lsp_names[lsp_count] = {"sf", "k", "ds", "asd", "asa", "zsd", "zsa"};

std::string join_messages(const std::vector<std::string> &messages)
{
    std::string out;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (i)
            out += "; ";
        out += messages[i];
    }
    return out;
}

int lsp_index(std::string_view name)
{
    for (int i = 0; i < lsp_count; ++i)
        if (name == lsp_names[i])
            return i;
    return -1;
}

/// Collects errors while reading one band entry.
class BandReader {
  public:
    BandReader(const json &j, std::string where, std::vector<std::string> &errors)
        : j_(j), where_(std::move(where)), errors_(errors)
    {
    }

    const json *field(const char *key, bool required = true)
    {
        auto it = j_.find(key);
        if (it == j_.end()) {
            if (required)
                fail(std::string("missing field '") + key + "'");
            return nullptr;
        }
        return &*it;
    }

    double number(const char *key, double fallback, bool required = true)
    {
        const json *v = field(key, required);
        if (!v)
            return fallback;
        if (!v->is_number()) {
            fail(std::string("field '") + key + "' must be a number");
            return fallback;
        }
        return v->get<double>();
    }

    int integer(const char *key, int fallback)
    {
        const json *v = field(key);
        if (!v)
            return fallback;
        if (!v->is_number_integer()) {
            fail(std::string("field '") + key + "' must be an integer");
            return fallback;
        }
        return v->get<int>();
    }

    FreqValue freq_value(const json &v, const std::string &name)
    {
        FreqValue f;
        if (v.is_number()) {
            f.c0 = v.get<double>();
            return f;
        }
        if (!v.is_object()) {
            fail("'" + name + "' must be a number or {c0, c1, arg}");
            return f;
        }
        f.c0 = v.value("c0", 0.0);
        f.c1 = v.value("c1", 0.0);
        f.fc_min_ghz = v.value("fc_min_ghz", 0.0);
        const std::string arg = v.value("arg", std::string("1+fc"));
        if (arg == "1+fc")
            f.one_plus = true;
        else if (arg == "fc")
            f.one_plus = false;
        else
            fail("'" + name + ".arg' must be \"1+fc\" or \"fc\"");
        return f;
    }

    void spread(const char *key, FreqValue &mu, FreqValue &sigma)
    {
        const json *v = field(key);
        if (!v)
            return;
        if (!v->is_object() || !v->contains("mu") || !v->contains("sigma")) {
            fail(std::string("field '") + key + "' must be {mu, sigma}");
            return;
        }
        mu = freq_value(v->at("mu"), std::string(key) + ".mu");
        sigma = freq_value(v->at("sigma"), std::string(key) + ".sigma");
    }

    void mu_sigma(const char *key, double &mu, double &sigma)
    {
        const json *v = field(key);
        if (!v)
            return;
        if (!v->is_object() || !v->contains("mu") || !v->contains("sigma") || !v->at("mu").is_number() ||
            !v->at("sigma").is_number()) {
            fail(std::string("field '") + key + "' must be {mu: number, sigma: number}");
            return;
        }
        mu = v->at("mu").get<double>();
        sigma = v->at("sigma").get<double>();
    }

    void fail(const std::string &msg) { errors_.push_back(where_ + ": " + msg); }

  private:
    const json &j_;
    std::string where_;
    std::vector<std::string> &errors_;
};

bool try_sqrt(const LspMatrix &c, LspMatrix &out)
{
    Eigen::Matrix<double, lsp_count, lsp_count> m;
    for (int i = 0; i < lsp_count; ++i)
        for (int k = 0; k < lsp_count; ++k)
            m(i, k) = c[i][k];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, lsp_count, lsp_count>> es(m);
    if (es.info() != Eigen::Success)
        return false;
    auto ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-9)
        return false;
    Eigen::Matrix<double, lsp_count, 1> root = ev.cwiseMax(0.0).cwiseSqrt();
    Eigen::Matrix<double, lsp_count, lsp_count> s = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
    for (int i = 0; i < lsp_count; ++i)
        for (int k = 0; k < lsp_count; ++k)
            out[i][k] = s(i, k);
    return true;
}

BandEntry parse_band(const json &j, const std::string &where, std::vector<std::string> &errors)
{
    BandEntry b;
    if (!j.is_object()) {
        errors.push_back(where + ": band entry must be an object");
        return b;
    }
    BandReader r(j, where, errors);
    b.f_min_hz = r.number("f_min_ghz", 0.0) * 1e9;
    b.f_max_hz = r.number("f_max_ghz", 0.0) * 1e9;
    b.num_clusters = r.integer("num_clusters", 1);
    b.rays_per_cluster = r.integer("rays_per_cluster", 20);
    r.spread("lg_ds", b.lg_ds_mu, b.lg_ds_sigma);
    r.spread("lg_asd", b.lg_asd_mu, b.lg_asd_sigma);
    r.spread("lg_asa", b.lg_asa_mu, b.lg_asa_sigma);
    r.spread("lg_zsa", b.lg_zsa_mu, b.lg_zsa_sigma);
    r.spread("lg_zsd", b.lg_zsd_mu, b.lg_zsd_sigma);
    if (j.contains("k_db"))
        r.mu_sigma("k_db", b.k_mu_db, b.k_sigma_db);
    b.sf_std_db = r.number("sf_std_db", 0.0);
    b.cluster_shadow_std_db = r.number("cluster_shadow_std_db", 3.0);
    b.r_tau = r.number("r_tau", 2.0);
    r.mu_sigma("xpr_db", b.xpr_mu_db, b.xpr_sigma_db);
    b.c_asd_deg = r.number("c_asd_deg", 5.0);
    b.c_asa_deg = r.number("c_asa_deg", 10.0);
    b.c_zsa_deg = r.number("c_zsa_deg", 7.0);
    b.zod_offset_deg = r.number("zod_offset_deg", 0.0, false);

    if (const json *ick = r.field("ick", false)) {
        if (!ick->is_object() || !ick->contains("mean") || !ick->contains("std"))
            r.fail("field 'ick' must be {mean, std}");
        else
            b.ick = IckParams{ick->at("mean").get<double>(), ick->at("std").get<double>()};
    }

    for (int i = 0; i < lsp_count; ++i)
        b.correlation[i][i] = 1.0;
    if (const json *corr = r.field("correlation", false)) {
        if (!corr->is_object()) {
            r.fail("'correlation' must map \"a_b\" pairs to coefficients");
        }
        else {
            for (const auto &[key, value] : corr->items()) {
                const auto us = key.find('_');
                const int a = us == std::string::npos ? -1 : lsp_index(std::string_view(key).substr(0, us));
                const int c = us == std::string::npos ? -1 : lsp_index(std::string_view(key).substr(us + 1));
                if (a < 0 || c < 0 || a == c || !value.is_number()) {
                    r.fail("bad correlation entry '" + key + "'");
                    continue;
                }
                b.correlation[a][c] = b.correlation[c][a] = value.get<double>();
            }
        }
    }

    // range checks
    if (!(b.f_min_hz > 0.0) || !(b.f_max_hz > b.f_min_hz))
        r.fail("frequency range must satisfy 0 < f_min_ghz < f_max_ghz");
    if (b.num_clusters < 1)
        r.fail("num_clusters must be >= 1");
    if (b.rays_per_cluster < 1 || b.rays_per_cluster > 20)
        r.fail("rays_per_cluster must be in [1, 20]");
    if (!(b.r_tau > 1.0))
        r.fail("r_tau must be > 1");
    if (b.sf_std_db < 0.0 || b.cluster_shadow_std_db < 0.0 || b.k_sigma_db < 0.0 || b.xpr_sigma_db < 0.0)
        r.fail("standard deviations must be non-negative");
    if (b.c_asd_deg < 0.0 || b.c_asa_deg < 0.0 || b.c_zsa_deg < 0.0)
        r.fail("intra-cluster spreads must be non-negative");
    if (b.ick && (b.ick->mean < 0.0 || b.ick->mean > 1.0 || b.ick->std < 0.0))
        r.fail("ick.mean must be in [0, 1] and ick.std >= 0");
    for (int i = 0; i < lsp_count; ++i)
        for (int k = 0; k < lsp_count; ++k)
            if (std::abs(b.correlation[i][k]) > 1.0)
                r.fail(std::string("correlation ") + lsp_names[i] + "_" + lsp_names[k] + " outside [-1, 1]");
    if (!try_sqrt(b.correlation, b.sqrt_correlation))
        r.fail("correlation matrix is not positive semi-definite");
    return b;
}

std::vector<BandEntry> parse_bands(const json &j, const std::string &where, std::vector<std::string> &errors)
{
    std::vector<BandEntry> bands;
    if (!j.is_array() || j.empty()) {
        errors.push_back(where + ": expected a non-empty list of bands");
        return bands;
    }
    for (std::size_t i = 0; i < j.size(); ++i)
        bands.push_back(parse_band(j[i], where + "[" + std::to_string(i) + "]", errors));
    std::sort(bands.begin(), bands.end(), [](const BandEntry &a, const BandEntry &b) { return a.f_min_hz < b.f_min_hz; });
    for (std::size_t i = 1; i < bands.size(); ++i) {
        if (bands[i].f_min_hz < bands[i - 1].f_max_hz)
            errors.push_back(where + ": overlapping frequency bands");
        if (bands[i].num_clusters > bands[i - 1].num_clusters)
            errors.push_back(where + ": num_clusters must not increase with frequency");
    }
    return bands;
}

} // namespace

const char *to_string(LinkState s)
{
    return s == LinkState::los ? "LOS" : "NLOS";
}

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::runtime_error(join_messages(messages)), messages_(std::move(messages))
{
}

double FreqValue::at(double carrier_hz) const
{
    if (c1 == 0.0)
        return c0;
    const double fc = std::max(carrier_hz * 1e-9, fc_min_ghz);
    return c0 + c1 * std::log10(one_plus ? 1.0 + fc : fc);
}

LspMatrix correlation_sqrt(const LspMatrix &c)
{
    LspMatrix s{};
    if (!try_sqrt(c, s))
        throw ConfigError({"correlation matrix is not positive semi-definite"});
    return s;
}

TableSet parse_table_set(const json &doc)
{
    std::vector<std::string> errors;
    TableSet set;
    if (!doc.is_object())
        throw ConfigError({"table set: document must be an object"});
    if (doc.value("schema", std::string()) != "egbsm-tables/1")
        errors.push_back("table set: schema must be \"egbsm-tables/1\"");
    set.name = doc.value("name", std::string());
    set.provenance = doc.value("provenance", std::string());
    if (!doc.contains("scenarios") || !doc["scenarios"].is_object() || doc["scenarios"].empty()) {
        errors.push_back("table set: 'scenarios' must be a non-empty object");
        throw ConfigError(errors);
    }
    for (const auto &[id, sc] : doc["scenarios"].items()) {
        ScenarioTables t;
        const std::string where = "scenarios." + id;
        if (!sc.is_object()) {
            errors.push_back(where + ": must be an object");
            continue;
        }
        if (sc.contains("LOS"))
            t.los = parse_bands(sc["LOS"], where + ".LOS", errors);
        if (sc.contains("NLOS"))
            t.nlos = parse_bands(sc["NLOS"], where + ".NLOS", errors);
        else
            errors.push_back(where + ": NLOS bands are required");
        set.scenarios.emplace(id, std::move(t));
    }
    if (!errors.empty())
        throw ConfigError(errors);
    return set;
}

TableSet load_table_set(const std::filesystem::path &file)
{
    std::ifstream in(file);
    if (!in)
        throw ConfigError({"cannot open table file " + file.string()});
    json doc;
    try {
        doc = json::parse(in);
    }
    catch (const json::parse_error &e) {
        throw ConfigError({file.string() + ": " + e.what()});
    }
    return parse_table_set(doc);
}

std::filesystem::path resolve_table_path(std::string_view selector)
{
    std::filesystem::path p(selector);
    if (std::filesystem::exists(p) && std::filesystem::is_regular_file(p))
        return p;
    std::filesystem::path dir;
    if (const char *env = std::getenv("EGBSM_DATA_DIR"))
        dir = env;
    else
        dir = EGBSM_DATA_DIR;
    auto candidate = dir / "tables" / (std::string(selector) + ".json");
    if (std::filesystem::exists(candidate))
        return candidate;
    throw ConfigError({"unknown table set '" + std::string(selector) + "' (looked in " + (dir / "tables").string() + ")"});
}

ScenarioRecord lookup_table(const TableSet &set, std::string_view scenario, LinkState state, double carrier_hz)
{
    auto it = set.scenarios.find(scenario);
    if (it == set.scenarios.end())
        throw std::out_of_range("lookup_table: unknown scenario '" + std::string(scenario) + "' in table set '" +
                                set.name + "'");
    const auto &bands = state == LinkState::los ? it->second.los : it->second.nlos;
    if (bands.empty())
        throw std::out_of_range("lookup_table: no " + std::string(to_string(state)) + " bands for scenario '" +
                                std::string(scenario) + "'");
    const BandEntry *hit = nullptr;
    for (const auto &b : bands) {
        const bool last = &b == &bands.back();
        if (carrier_hz >= b.f_min_hz && (carrier_hz < b.f_max_hz || (last && carrier_hz == b.f_max_hz))) {
            hit = &b;
            break;
        }
    }
    if (!hit) {
        std::ostringstream os;
        os << "lookup_table: frequency " << carrier_hz << " Hz outside all bands of '" << scenario << "'";
        throw std::out_of_range(os.str());
    }
    const BandEntry &b = *hit;
    ScenarioRecord r;
    r.scenario = std::string(scenario);
    r.state = state;
    r.f_min_hz = b.f_min_hz;
    r.f_max_hz = b.f_max_hz;
    r.num_clusters = b.num_clusters;
    r.rays_per_cluster = b.rays_per_cluster;
    r.lg_ds = {b.lg_ds_mu.at(carrier_hz), b.lg_ds_sigma.at(carrier_hz)};
    r.lg_asd = {b.lg_asd_mu.at(carrier_hz), b.lg_asd_sigma.at(carrier_hz)};
    r.lg_asa = {b.lg_asa_mu.at(carrier_hz), b.lg_asa_sigma.at(carrier_hz)};
    r.lg_zsa = {b.lg_zsa_mu.at(carrier_hz), b.lg_zsa_sigma.at(carrier_hz)};
    r.lg_zsd = {b.lg_zsd_mu.at(carrier_hz), b.lg_zsd_sigma.at(carrier_hz)};
    for (auto *p : {&r.lg_ds, &r.lg_asd, &r.lg_asa, &r.lg_zsa, &r.lg_zsd})
        p->sigma = std::max(p->sigma, 0.0);
    r.k_mu_db = b.k_mu_db;
    r.k_sigma_db = b.k_sigma_db;
    r.sf_std_db = b.sf_std_db;
    r.cluster_shadow_std_db = b.cluster_shadow_std_db;
    r.r_tau = b.r_tau;
    r.xpr_mu_db = b.xpr_mu_db;
    r.xpr_sigma_db = b.xpr_sigma_db;
    r.c_asd_deg = b.c_asd_deg;
    r.c_asa_deg = b.c_asa_deg;
    r.c_zsa_deg = b.c_zsa_deg;
    r.zod_offset_deg = b.zod_offset_deg;
    r.correlation = b.correlation;
    r.sqrt_correlation = b.sqrt_correlation;
    r.ick = b.ick;
    return r;
}

} // namespace egbsm

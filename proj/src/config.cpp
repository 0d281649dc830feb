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

#include "egbsm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "egbsm/random.hpp"
#include "egbsm/tables.hpp"

namespace egbsm {

namespace {

using nlohmann::json;

class Reader {
  public:
    std::vector<std::string> errors;

    /// True when `j` is an object; unknown keys are reported.
    bool object(const json &j, const std::string &path, std::initializer_list<const char *> keys)
    {
        if (!j.is_object()) {
            errors.push_back(path + ": expected an object");
            return false;
        }
        for (const auto &[k, v] : j.items()) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char *a) { return k == a; }))
                errors.push_back(path + "." + k + ": unknown field");
        }
        return true;
    }

    template <class T>
    void get(const json &obj, const char *key, T &out, const std::string &path)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            return;
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!it->is_number())
                    throw std::invalid_argument("number");
            }
            else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
                if (!it->is_number_integer())
                    throw std::invalid_argument("integer");
            }
            else if constexpr (std::is_same_v<T, bool>) {
                if (!it->is_boolean())
                    throw std::invalid_argument("boolean");
            }
            else if constexpr (std::is_same_v<T, std::string>) {
                if (!it->is_string())
                    throw std::invalid_argument("string");
            }
            out = it->get<T>();
        }
        catch (const std::exception &) {
            errors.push_back(path + "." + key + ": wrong type");
        }
    }
};

void read_element(Reader &r, const json &j, ElementConfig &e, const std::string &path)
{
    if (!r.object(j, path, {"pattern", "q", "gain_dbi", "slant_deg"}))
        return;
    r.get(j, "pattern", e.pattern, path);
    r.get(j, "q", e.q, path);
    r.get(j, "gain_dbi", e.gain_dbi, path);
    r.get(j, "slant_deg", e.slant_deg, path);
}

void read_array(Reader &r, const json &j, ArrayConfig &a, const std::string &path)
{
    if (!r.object(j, path, {"layout", "n", "rows", "cols", "spacing_wavelengths", "element"}))
        return;
    r.get(j, "layout", a.layout, path);
    r.get(j, "n", a.n, path);
    r.get(j, "rows", a.rows, path);
    r.get(j, "cols", a.cols, path);
    r.get(j, "spacing_wavelengths", a.spacing_wavelengths, path);
    if (j.contains("element"))
        read_element(r, j["element"], a.element, path + ".element");
}

void read_terminal(Reader &r, const json &j, TerminalConfig &t, const std::string &path)
{
    if (!r.object(j, path, {"position", "orientation_deg", "velocity", "array"}))
        return;
    r.get(j, "position", t.position, path);
    r.get(j, "orientation_deg", t.orientation_deg, path);
    r.get(j, "velocity", t.velocity, path);
    if (j.contains("array"))
        read_array(r, j["array"], t.array, path + ".array");
}

void read_rcs(Reader &r, const json &j, RcsConfig &c, const std::string &path)
{
    if (!r.object(j, path, {"a_dbsm", "b1", "b1_azimuth_deg", "b1_values", "b2", "b2_std_db", "xpr_db"}))
        return;
    r.get(j, "a_dbsm", c.a_dbsm, path);
    r.get(j, "b1", c.b1, path);
    r.get(j, "b1_azimuth_deg", c.b1_azimuth_deg, path);
    r.get(j, "b1_values", c.b1_values, path);
    r.get(j, "b2", c.b2, path);
    r.get(j, "b2_std_db", c.b2_std_db, path);
    if (j.contains("xpr_db") && !j["xpr_db"].is_null()) {
        std::array<double, 2> x{};
        r.get(j, "xpr_db", x, path);
        c.xpr_db = x;
    }
}

void read_target(Reader &r, const json &j, TargetEntry &t, const std::string &path)
{
    if (!r.object(j, path, {"position", "velocity", "extent", "rcs", "shared"}))
        return;
    r.get(j, "position", t.position, path);
    r.get(j, "velocity", t.velocity, path);
    r.get(j, "extent", t.extent, path);
    if (j.contains("rcs"))
        read_rcs(r, j["rcs"], t.rcs, path + ".rcs");
    if (j.contains("shared")) {
        const json &s = j["shared"];
        const std::string sp = path + ".shared";
        if (r.object(s, sp, {"ns", "delay_jitter_s", "angle_jitter_deg", "bind"})) {
            r.get(s, "ns", t.shared.ns, sp);
            r.get(s, "delay_jitter_s", t.shared.delay_jitter_s, sp);
            r.get(s, "angle_jitter_deg", t.shared.angle_jitter_deg, sp);
            r.get(s, "bind", t.shared.bind, sp);
        }
    }
}

void read_ris(Reader &r, const json &j, RisConfig &c, const std::string &path)
{
    if (!r.object(j, path,
                  {"position", "orientation_deg", "rows", "cols", "spacing_wavelengths", "q", "element_gain_dbi",
                   "codebook"}))
        return;
    r.get(j, "position", c.position, path);
    r.get(j, "orientation_deg", c.orientation_deg, path);
    r.get(j, "rows", c.rows, path);
    r.get(j, "cols", c.cols, path);
    r.get(j, "spacing_wavelengths", c.spacing_wavelengths, path);
    r.get(j, "q", c.q, path);
    r.get(j, "element_gain_dbi", c.element_gain_dbi, path);
    r.get(j, "codebook", c.codebook, path);
}

void read_experiments(Reader &r, const json &j, Config &c)
{
    const std::string path = "experiments";
    if (!r.object(j, path, {"rcs_cdf", "xl_corr", "ris_snr", "sparsity_gini"}))
        return;
    if (j.contains("rcs_cdf")) {
        const json &e = j["rcs_cdf"];
        const std::string p = path + ".rcs_cdf";
        if (r.object(e, p, {"samples", "series"})) {
            r.get(e, "samples", c.rcs_cdf.samples, p);
            if (e.contains("series")) {
                c.rcs_cdf.series.clear();
                if (!e["series"].is_array())
                    r.errors.push_back(p + ".series: expected a list");
                else
                    for (std::size_t i = 0; i < e["series"].size(); ++i) {
                        const json &s = e["series"][i];
                        const std::string sp = p + ".series[" + std::to_string(i) + "]";
                        RcsSeries rs;
                        if (r.object(s, sp, {"label", "carrier_hz", "a_dbsm", "b2_std_db"})) {
                            r.get(s, "label", rs.label, sp);
                            r.get(s, "carrier_hz", rs.carrier_hz, sp);
                            r.get(s, "a_dbsm", rs.a_dbsm, sp);
                            r.get(s, "b2_std_db", rs.b2_std_db, sp);
                        }
                        c.rcs_cdf.series.push_back(rs);
                    }
            }
        }
    }
    if (j.contains("xl_corr")) {
        const json &e = j["xl_corr"];
        const std::string p = path + ".xl_corr";
        if (r.object(e, p, {"num_freq"}))
            r.get(e, "num_freq", c.xl_corr.num_freq, p);
    }
    if (j.contains("ris_snr")) {
        const json &e = j["ris_snr"];
        const std::string p = path + ".ris_snr";
        if (r.object(e, p, {"panel_sizes", "codebooks", "tx_power_dbm", "noise_dbm"})) {
            r.get(e, "panel_sizes", c.ris_snr.panel_sizes, p);
            r.get(e, "codebooks", c.ris_snr.codebooks, p);
            r.get(e, "tx_power_dbm", c.ris_snr.tx_power_dbm, p);
            r.get(e, "noise_dbm", c.ris_snr.noise_dbm, p);
        }
    }
    if (j.contains("sparsity_gini")) {
        const json &e = j["sparsity_gini"];
        const std::string p = path + ".sparsity_gini";
        if (r.object(e, p, {"frequencies_hz", "model_sets", "granularity"})) {
            r.get(e, "frequencies_hz", c.sparsity_gini.frequencies_hz, p);
            r.get(e, "granularity", c.sparsity_gini.granularity, p);
            if (e.contains("model_sets")) {
                c.sparsity_gini.model_sets.clear();
                if (!e["model_sets"].is_array())
                    r.errors.push_back(p + ".model_sets: expected a list");
                else
                    for (std::size_t i = 0; i < e["model_sets"].size(); ++i) {
                        const json &s = e["model_sets"][i];
                        const std::string sp = p + ".model_sets[" + std::to_string(i) + "]";
                        ModelSet m;
                        if (r.object(s, sp, {"label", "tables", "ick"})) {
                            r.get(s, "label", m.label, sp);
                            r.get(s, "tables", m.tables, sp);
                            r.get(s, "ick", m.ick, sp);
                        }
                        c.sparsity_gini.model_sets.push_back(m);
                    }
            }
        }
    }
}

bool one_of(const std::string &v, std::initializer_list<const char *> options)
{
    return std::any_of(options.begin(), options.end(), [&](const char *o) { return v == o; });
}

void check_array(const ArrayConfig &a, const std::string &path, std::vector<std::string> &e)
{
    if (!one_of(a.layout, {"single", "ula", "upa"}))
        e.push_back(path + ".layout: must be single, ula or upa");
    if (a.n < 1 || a.rows < 1 || a.cols < 1)
        e.push_back(path + ": element counts must be >= 1");
    if (!(a.spacing_wavelengths > 0.0))
        e.push_back(path + ".spacing_wavelengths: must be positive");
    if (!one_of(a.element.pattern, {"isotropic", "sector38901", "cos_q"}))
        e.push_back(path + ".element.pattern: must be isotropic, sector38901 or cos_q");
    if (a.element.q < 0.0)
        e.push_back(path + ".element.q: must be >= 0");
}

bool finite3(const std::array<double, 3> &v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Vec3 vec(const std::array<double, 3> &a)
{
    return {a[0], a[1], a[2]};
}

Orientation orient(const std::array<double, 3> &deg)
{
    return {deg2rad(deg[0]), deg2rad(deg[1]), deg2rad(deg[2])};
}

json element_json(const ElementConfig &e)
{
    return {{"pattern", e.pattern}, {"q", e.q}, {"gain_dbi", e.gain_dbi}, {"slant_deg", e.slant_deg}};
}

json terminal_json(const TerminalConfig &t)
{
    const auto &a = t.array;
    return {{"position", t.position},
            {"orientation_deg", t.orientation_deg},
            {"velocity", t.velocity},
            {"array",
             {{"layout", a.layout},
              {"n", a.n},
              {"rows", a.rows},
              {"cols", a.cols},
              {"spacing_wavelengths", a.spacing_wavelengths},
              {"element", element_json(a.element)}}}};
}

} // namespace

Config parse_config(const json &doc)
{
    Reader r;
    Config c;
    if (!r.object(doc, "config",
                  {"schema", "scenario", "carrier_hz", "bandwidth_hz", "tables", "drops", "seed", "link_state",
                   "los_only", "path_loss", "shadow_fading", "delay_mode", "cpm", "tx", "rx", "extensions", "sns",
                   "near_field", "prune", "targets", "ris", "output", "experiments"}))
        throw ConfigError(r.errors);
    std::string schema;
    r.get(doc, "schema", schema, "config");
    if (schema != "egbsm-config/1")
        r.errors.push_back("config.schema: must be \"egbsm-config/1\"");
    r.get(doc, "scenario", c.scenario, "config");
    r.get(doc, "carrier_hz", c.carrier_hz, "config");
    r.get(doc, "bandwidth_hz", c.bandwidth_hz, "config");
    r.get(doc, "tables", c.tables, "config");
    r.get(doc, "drops", c.drops, "config");
    r.get(doc, "seed", c.seed, "config");
    r.get(doc, "link_state", c.link_state, "config");
    r.get(doc, "los_only", c.los_only, "config");
    r.get(doc, "path_loss", c.path_loss, "config");
    r.get(doc, "shadow_fading", c.shadow_fading, "config");
    r.get(doc, "delay_mode", c.delay_mode, "config");
    r.get(doc, "cpm", c.cpm, "config");
    if (doc.contains("tx"))
        read_terminal(r, doc["tx"], c.tx, "tx");
    else
        r.errors.push_back("config.tx: required");
    if (doc.contains("rx"))
        read_terminal(r, doc["rx"], c.rx, "rx");
    else
        r.errors.push_back("config.rx: required");
    if (doc.contains("extensions")) {
        const json &e = doc["extensions"];
        if (r.object(e, "extensions", {"sparsity", "sns", "near_field", "isac", "ris"})) {
            r.get(e, "sparsity", c.extensions.sparsity, "extensions");
            r.get(e, "sns", c.extensions.sns, "extensions");
            r.get(e, "near_field", c.extensions.near_field, "extensions");
            r.get(e, "isac", c.extensions.isac, "extensions");
            r.get(e, "ris", c.extensions.ris, "extensions");
        }
    }
    if (doc.contains("sns")) {
        const json &e = doc["sns"];
        if (r.object(e, "sns", {"sr_length", "p_init", "p_stay_visible", "p_stay_hidden", "side", "smoothing"})) {
            r.get(e, "sr_length", c.sns.sr_length, "sns");
            r.get(e, "p_init", c.sns.p_init, "sns");
            r.get(e, "p_stay_visible", c.sns.p_stay_visible, "sns");
            r.get(e, "p_stay_hidden", c.sns.p_stay_hidden, "sns");
            r.get(e, "side", c.sns.side, "sns");
            r.get(e, "smoothing", c.sns.smoothing, "sns");
        }
    }
    if (doc.contains("near_field")) {
        const json &e = doc["near_field"];
        if (r.object(e, "near_field", {"split_range", "tx_side", "rx_side"})) {
            r.get(e, "split_range", c.near_field.split_range, "near_field");
            r.get(e, "tx_side", c.near_field.tx_side, "near_field");
            r.get(e, "rx_side", c.near_field.rx_side, "near_field");
        }
    }
    if (doc.contains("prune")) {
        const json &e = doc["prune"];
        if (r.object(e, "prune", {"threshold_db", "max_clusters"})) {
            r.get(e, "threshold_db", c.prune.threshold_db, "prune");
            r.get(e, "max_clusters", c.prune.max_clusters, "prune");
        }
    }
    if (doc.contains("targets")) {
        if (!doc["targets"].is_array())
            r.errors.push_back("config.targets: expected a list");
        else
            for (std::size_t i = 0; i < doc["targets"].size(); ++i) {
                TargetEntry t;
                read_target(r, doc["targets"][i], t, "targets[" + std::to_string(i) + "]");
                c.targets.push_back(t);
            }
    }
    if (doc.contains("ris") && !doc["ris"].is_null()) {
        RisConfig rc;
        read_ris(r, doc["ris"], rc, "ris");
        c.ris = rc;
    }
    if (doc.contains("output")) {
        const json &e = doc["output"];
        if (r.object(e, "output", {"dir", "binary", "tap_grid", "num_taps"})) {
            r.get(e, "dir", c.output.dir, "output");
            r.get(e, "binary", c.output.binary, "output");
            r.get(e, "tap_grid", c.output.tap_grid, "output");
            r.get(e, "num_taps", c.output.num_taps, "output");
        }
    }
    if (doc.contains("experiments"))
        read_experiments(r, doc["experiments"], c);

    if (r.errors.empty()) {
        auto more = validate_config(c);
        r.errors.insert(r.errors.end(), more.begin(), more.end());
    }
    if (!r.errors.empty())
        throw ConfigError(r.errors);
    return c;
}

Config load_config(const std::filesystem::path &file)
{
    std::ifstream in(file);
    if (!in)
        throw ConfigError({"cannot open config file " + file.string()});
    json doc;
    try {
        doc = json::parse(in);
    }
    catch (const json::parse_error &e) {
        throw ConfigError({file.string() + ": " + e.what()});
    }
    return parse_config(doc);
}

std::vector<std::string> validate_config(const Config &c)
{
    std::vector<std::string> e;
    if (c.scenario.empty())
        e.push_back("scenario: must not be empty");
    if (!(c.carrier_hz > 0.0))
        e.push_back("carrier_hz: must be positive");
    if (!(c.bandwidth_hz > 0.0))
        e.push_back("bandwidth_hz: must be positive");
    if (c.drops < 1)
        e.push_back("drops: must be >= 1");
    if (!one_of(c.link_state, {"auto", "los", "nlos"}))
        e.push_back("link_state: must be auto, los or nlos");
    if (!one_of(c.path_loss, {"scenario", "fspl", "none"}))
        e.push_back("path_loss: must be scenario, fspl or none");
    if (!one_of(c.delay_mode, {"relative", "absolute"}))
        e.push_back("delay_mode: must be relative or absolute");
    if (!one_of(c.cpm, {"random", "co_polar"}))
        e.push_back("cpm: must be random or co_polar");
    check_array(c.tx.array, "tx.array", e);
    check_array(c.rx.array, "rx.array", e);
    for (const auto *t : {&c.tx, &c.rx})
        if (!finite3(t->position) || !finite3(t->velocity) || !finite3(t->orientation_deg))
            e.push_back(std::string(t == &c.tx ? "tx" : "rx") + ": position, orientation and velocity must be finite");

    const bool monostatic = c.tx.position == c.rx.position;
    if (monostatic && !(c.extensions.isac && !c.targets.empty()))
        e.push_back("tx.position, rx.position: coincide, which is only allowed for monostatic sensing");

    if (!c.targets.empty() && c.ris)
        e.push_back("targets, ris: a link may carry either a target or a RIS panel, not both");
    if (c.extensions.isac && c.targets.empty())
        e.push_back("extensions.isac: requires at least one entry in targets");
    if (c.extensions.ris && !c.ris)
        e.push_back("extensions.ris: requires a ris section");
    if (c.extensions.isac && c.extensions.ris)
        e.push_back("extensions.isac, extensions.ris: only one intermediate-node kind per link");

    if (c.sns.sr_length < 1)
        e.push_back("sns.sr_length: must be >= 1");
    for (auto [name, p] : {std::pair{"p_init", c.sns.p_init}, {"p_stay_visible", c.sns.p_stay_visible},
                           {"p_stay_hidden", c.sns.p_stay_hidden}})
        if (!(p >= 0.0 && p <= 1.0))
            e.push_back(std::string("sns.") + name + ": must lie in [0, 1]");
    if (!one_of(c.sns.side, {"rx", "tx", "both"}))
        e.push_back("sns.side: must be rx, tx or both");
    if (!(c.near_field.split_range[0] >= 0.0 && c.near_field.split_range[1] <= 1.0 &&
          c.near_field.split_range[0] <= c.near_field.split_range[1]))
        e.push_back("near_field.split_range: must satisfy 0 <= lo <= hi <= 1");
    if (c.prune.threshold_db > 0.0)
        e.push_back("prune.threshold_db: must be <= 0");
    if (c.prune.max_clusters < 1)
        e.push_back("prune.max_clusters: must be >= 1");

    for (std::size_t i = 0; i < c.targets.size(); ++i) {
        const auto &t = c.targets[i];
        const std::string p = "targets[" + std::to_string(i) + "]";
        if (!finite3(t.position) || !finite3(t.velocity))
            e.push_back(p + ": position and velocity must be finite");
        if (vec(t.position) == vec(c.tx.position) || vec(t.position) == vec(c.rx.position))
            e.push_back(p + ".position: coincides with tx or rx");
        if (!one_of(t.rcs.b1, {"isotropic", "azimuth_table"}))
            e.push_back(p + ".rcs.b1: must be isotropic or azimuth_table");
        if (!one_of(t.rcs.b2, {"degenerate", "gaussian_db"}))
            e.push_back(p + ".rcs.b2: must be degenerate or gaussian_db");
        if (t.rcs.b2_std_db < 0.0)
            e.push_back(p + ".rcs.b2_std_db: must be >= 0");
        if (t.rcs.b1 == "azimuth_table") {
            try {
                build_rcs_model(t.rcs);
            }
            catch (const std::exception &ex) {
                e.push_back(p + ".rcs: " + ex.what());
            }
        }
        if (t.shared.ns < 0)
            e.push_back(p + ".shared.ns: must be >= 0");
        if (t.shared.delay_jitter_s < 0.0 || t.shared.angle_jitter_deg < 0.0)
            e.push_back(p + ".shared: jitter must be >= 0");
        if (!one_of(t.shared.bind, {"both", "tx", "rx"}))
            e.push_back(p + ".shared.bind: must be both, tx or rx");
        if (monostatic && t.shared.ns > 0)
            e.push_back(p + ".shared.ns: monostatic setups have no communication link to share with");
    }
    if (c.ris) {
        const auto &r = *c.ris;
        if (r.rows < 1 || r.cols < 1)
            e.push_back("ris: rows and cols must be >= 1");
        if (!(r.spacing_wavelengths > 0.0))
            e.push_back("ris.spacing_wavelengths: must be positive");
        if (r.q < 0.0)
            e.push_back("ris.q: must be >= 0");
        if (!one_of(r.codebook, {"specular", "one_bit", "continuous"}))
            e.push_back("ris.codebook: must be specular, one_bit or continuous");
    }
    if (c.output.num_taps < 1)
        e.push_back("output.num_taps: must be >= 1");

    if (c.rcs_cdf.samples < 1)
        e.push_back("experiments.rcs_cdf.samples: must be >= 1");
    for (const auto &s : c.rcs_cdf.series)
        if (!(s.carrier_hz > 0.0) || s.b2_std_db < 0.0)
            e.push_back("experiments.rcs_cdf.series: carrier must be positive and std >= 0");
    if (c.xl_corr.num_freq < 1)
        e.push_back("experiments.xl_corr.num_freq: must be >= 1");
    for (const auto &ps : c.ris_snr.panel_sizes)
        if (ps[0] < 1 || ps[1] < 1)
            e.push_back("experiments.ris_snr.panel_sizes: entries must be >= 1");
    for (const auto &cb : c.ris_snr.codebooks)
        if (!one_of(cb, {"specular", "one_bit", "continuous"}))
            e.push_back("experiments.ris_snr.codebooks: unknown codebook '" + cb + "'");
    for (double f : c.sparsity_gini.frequencies_hz)
        if (!(f > 0.0))
            e.push_back("experiments.sparsity_gini.frequencies_hz: must be positive");
    if (!one_of(c.sparsity_gini.granularity, {"path", "cluster"}))
        e.push_back("experiments.sparsity_gini.granularity: must be path or cluster");

    std::set<std::string> sets{c.tables};
    for (const auto &m : c.sparsity_gini.model_sets)
        sets.insert(m.tables);
    for (const auto &s : sets) {
        try {
            resolve_table_path(s);
        }
        catch (const ConfigError &ex) {
            e.push_back("tables: " + std::string(ex.what()));
        }
    }
    return e;
}

json to_json(const Config &c)
{
    json j;
    j["schema"] = "egbsm-config/1";
    j["scenario"] = c.scenario;
    j["carrier_hz"] = c.carrier_hz;
    j["bandwidth_hz"] = c.bandwidth_hz;
    j["tables"] = c.tables;
    j["drops"] = c.drops;
    j["seed"] = c.seed;
    j["link_state"] = c.link_state;
    j["los_only"] = c.los_only;
    j["path_loss"] = c.path_loss;
    j["shadow_fading"] = c.shadow_fading;
    j["delay_mode"] = c.delay_mode;
    j["cpm"] = c.cpm;
    j["tx"] = terminal_json(c.tx);
    j["rx"] = terminal_json(c.rx);
    j["extensions"] = {{"sparsity", c.extensions.sparsity},
                       {"sns", c.extensions.sns},
                       {"near_field", c.extensions.near_field},
                       {"isac", c.extensions.isac},
                       {"ris", c.extensions.ris}};
    j["sns"] = {{"sr_length", c.sns.sr_length},         {"p_init", c.sns.p_init},
                {"p_stay_visible", c.sns.p_stay_visible}, {"p_stay_hidden", c.sns.p_stay_hidden},
                {"side", c.sns.side},                     {"smoothing", c.sns.smoothing}};
    j["near_field"] = {{"split_range", c.near_field.split_range},
                       {"tx_side", c.near_field.tx_side},
                       {"rx_side", c.near_field.rx_side}};
    j["prune"] = {{"threshold_db", c.prune.threshold_db}, {"max_clusters", c.prune.max_clusters}};
    j["targets"] = json::array();
    for (const auto &t : c.targets) {
        json rcs = {{"a_dbsm", t.rcs.a_dbsm},
                    {"b1", t.rcs.b1},
                    {"b1_azimuth_deg", t.rcs.b1_azimuth_deg},
                    {"b1_values", t.rcs.b1_values},
                    {"b2", t.rcs.b2},
                    {"b2_std_db", t.rcs.b2_std_db}};
        if (t.rcs.xpr_db)
            rcs["xpr_db"] = *t.rcs.xpr_db;
        j["targets"].push_back({{"position", t.position},
                                {"velocity", t.velocity},
                                {"extent", t.extent},
                                {"rcs", rcs},
                                {"shared",
                                 {{"ns", t.shared.ns},
                                  {"delay_jitter_s", t.shared.delay_jitter_s},
                                  {"angle_jitter_deg", t.shared.angle_jitter_deg},
                                  {"bind", t.shared.bind}}}});
    }
    if (c.ris) {
        const auto &r = *c.ris;
        j["ris"] = {{"position", r.position},
                    {"orientation_deg", r.orientation_deg},
                    {"rows", r.rows},
                    {"cols", r.cols},
                    {"spacing_wavelengths", r.spacing_wavelengths},
                    {"q", r.q},
                    {"element_gain_dbi", r.element_gain_dbi},
                    {"codebook", r.codebook}};
    }
    j["output"] = {{"dir", c.output.dir},
                   {"binary", c.output.binary},
                   {"tap_grid", c.output.tap_grid},
                   {"num_taps", c.output.num_taps}};
    json series = json::array();
    for (const auto &s : c.rcs_cdf.series)
        series.push_back(
            {{"label", s.label}, {"carrier_hz", s.carrier_hz}, {"a_dbsm", s.a_dbsm}, {"b2_std_db", s.b2_std_db}});
    json sets = json::array();
    for (const auto &m : c.sparsity_gini.model_sets)
        sets.push_back({{"label", m.label}, {"tables", m.tables}, {"ick", m.ick}});
    j["experiments"] = {
        {"rcs_cdf", {{"samples", c.rcs_cdf.samples}, {"series", series}}},
        {"xl_corr", {{"num_freq", c.xl_corr.num_freq}}},
        {"ris_snr",
         {{"panel_sizes", c.ris_snr.panel_sizes},
          {"codebooks", c.ris_snr.codebooks},
          {"tx_power_dbm", c.ris_snr.tx_power_dbm},
          {"noise_dbm", c.ris_snr.noise_dbm}}},
        {"sparsity_gini",
         {{"frequencies_hz", c.sparsity_gini.frequencies_hz},
          {"model_sets", sets},
          {"granularity", c.sparsity_gini.granularity}}}};
    return j;
}

std::uint64_t config_hash(const Config &c)
{
    json j = to_json(c);
    j.erase("output");
    return fnv1a64(j.dump());
}

AntennaArray build_array(const TerminalConfig &t, double carrier_hz)
{
    const auto &a = t.array;
    AntennaElement e;
    if (a.element.pattern == "sector38901")
        e.pattern = PatternKind::sector38901;
    else if (a.element.pattern == "cos_q")
        e.pattern = PatternKind::cos_q;
    e.q = a.element.q;
    e.peak_gain = std::pow(10.0, a.element.gain_dbi / 10.0);
    e.slant = deg2rad(a.element.slant_deg);
    const double spacing = a.spacing_wavelengths * wavelength(carrier_hz);
    AntennaArray arr;
    if (a.layout == "ula")
        arr = make_ula(static_cast<std::size_t>(a.n), spacing, e);
    else if (a.layout == "upa")
        arr = make_upa(static_cast<std::size_t>(a.rows), static_cast<std::size_t>(a.cols), spacing, e);
    else
        arr = make_ula(1, spacing, e);
    arr.position = vec(t.position);
    arr.orientation = orient(t.orientation_deg);
    return arr;
}

RcsModel build_rcs_model(const RcsConfig &c)
{
    RcsModel m;
    m.a_dbsm = c.a_dbsm;
    if (c.b1 == "azimuth_table") {
        m.b1 = B1Kind::azimuth_table;
        m.b1_azimuth_deg = c.b1_azimuth_deg;
        m.b1_values = c.b1_values;
    }
    m.b2 = c.b2 == "gaussian_db" ? B2Kind::gaussian_db : B2Kind::degenerate;
    m.b2_std_db = c.b2_std_db;
    if (c.xpr_db)
        m.xpr_db = std::make_pair((*c.xpr_db)[0], (*c.xpr_db)[1]);
    m.normalize();
    return m;
}

CodebookKind parse_codebook(const std::string &name)
{
    if (name == "specular")
        return CodebookKind::specular;
    if (name == "one_bit")
        return CodebookKind::one_bit;
    if (name == "continuous")
        return CodebookKind::continuous;
    throw std::invalid_argument("unknown codebook '" + name + "'");
}

RisPanel build_ris_panel(const RisConfig &c, double carrier_hz)
{
    RisPanel p;
    p.position = vec(c.position);
    p.orientation = orient(c.orientation_deg);
    p.rows = static_cast<std::size_t>(c.rows);
    p.cols = static_cast<std::size_t>(c.cols);
    p.spacing = c.spacing_wavelengths * wavelength(carrier_hz);
    p.q = c.q;
    p.element_gain = std::pow(10.0, c.element_gain_dbi / 10.0);
    return p;
}

SnSParams build_sns_params(const SnsConfig &c)
{
    SnSParams p;
    p.sr_length = static_cast<std::size_t>(std::max(c.sr_length, 1));
    p.p_init = c.p_init;
    p.p_stay_visible = c.p_stay_visible;
    p.p_stay_hidden = c.p_stay_hidden;
    p.side = c.side == "tx" ? ArraySide::tx : (c.side == "both" ? ArraySide::both : ArraySide::rx);
    p.smoothing = c.smoothing;
    return p;
}

LinkRequest build_link_request(const Config &c)
{
    LinkRequest r;
    r.scenario = c.scenario;
    r.carrier_hz = c.carrier_hz;
    r.tx = build_array(c.tx, c.carrier_hz);
    r.rx = build_array(c.rx, c.carrier_hz);
    r.tx_velocity = vec(c.tx.velocity);
    r.rx_velocity = vec(c.rx.velocity);
    r.state_mode = c.link_state == "los" ? StateMode::los : (c.link_state == "nlos" ? StateMode::nlos : StateMode::automatic);
    r.los_only = c.los_only;
    r.path_loss = c.path_loss == "fspl" ? PathLossMode::fspl : (c.path_loss == "none" ? PathLossMode::none : PathLossMode::scenario);
    r.shadow_fading = c.shadow_fading;
    r.delay_mode = c.delay_mode == "absolute" ? DelayMode::absolute : DelayMode::relative;
    r.cpm = c.cpm == "co_polar" ? CpmPolicy::co_polar : CpmPolicy::random;
    return r;
}

} // namespace egbsm

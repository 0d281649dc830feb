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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "egbsm/engine.hpp"
#include "egbsm/isac.hpp"
#include "egbsm/node.hpp"
#include "egbsm/ris.hpp"
#include "egbsm/xlmimo.hpp"

namespace egbsm {

struct ElementConfig {
    std::string pattern = "isotropic";  ///< isotropic | sector38901 | cos_q
    double q = 0.0;
    double gain_dbi = 0.0;
    double slant_deg = 0.0;
    bool operator==(const ElementConfig &) const = default;
};

struct ArrayConfig {
    std::string layout = "single";  ///< single | ula | upa
    int n = 1;
    int rows = 1;
    int cols = 1;
    double spacing_wavelengths = 0.5;
    ElementConfig element;
    bool operator==(const ArrayConfig &) const = default;
};

struct TerminalConfig {
    std::array<double, 3> position{0.0, 0.0, 0.0};
    std::array<double, 3> orientation_deg{0.0, 0.0, 0.0};  ///< bearing, downtilt, slant
    std::array<double, 3> velocity{0.0, 0.0, 0.0};
    ArrayConfig array;
    bool operator==(const TerminalConfig &) const = default;
};

struct ExtensionToggles {
    bool sparsity = false;
    bool sns = false;
    bool near_field = false;
    bool isac = false;
    bool ris = false;
    bool operator==(const ExtensionToggles &) const = default;
};

struct SnsConfig {
    int sr_length = 8;
    double p_init = 0.8;
    double p_stay_visible = 0.9;
    double p_stay_hidden = 0.7;
    std::string side = "rx";  ///< rx | tx | both
    bool smoothing = false;
    bool operator==(const SnsConfig &) const = default;
};

struct NearFieldConfig {
    std::array<double, 2> split_range{0.3, 0.7};
    bool tx_side = false;
    bool rx_side = true;
    bool operator==(const NearFieldConfig &) const = default;
};

struct RcsConfig {
    double a_dbsm = 0.0;
    std::string b1 = "isotropic";  ///< isotropic | azimuth_table
    std::vector<double> b1_azimuth_deg;
    std::vector<double> b1_values;
    std::string b2 = "degenerate";  ///< degenerate | gaussian_db
    double b2_std_db = 0.0;
    std::optional<std::array<double, 2>> xpr_db;
    bool operator==(const RcsConfig &) const = default;
};

struct SharedConfig {
    int ns = 0;
    double delay_jitter_s = 0.0;
    double angle_jitter_deg = 0.0;
    std::string bind = "both";  ///< both | tx | rx
    bool operator==(const SharedConfig &) const = default;
};

struct TargetEntry {
    std::array<double, 3> position{0.0, 0.0, 0.0};
    std::array<double, 3> velocity{0.0, 0.0, 0.0};
    std::array<double, 3> extent{0.0, 0.0, 0.0};
    RcsConfig rcs;
    SharedConfig shared;
    bool operator==(const TargetEntry &) const = default;
};

struct RisConfig {
    std::array<double, 3> position{0.0, 0.0, 0.0};
    std::array<double, 3> orientation_deg{0.0, 0.0, 0.0};
    int rows = 8;
    int cols = 8;
    double spacing_wavelengths = 0.5;
    double q = 1.0;
    double element_gain_dbi = 0.0;
    std::string codebook = "continuous";  ///< specular | one_bit | continuous
    bool operator==(const RisConfig &) const = default;
};

struct OutputConfig {
    std::string dir = "out";
    bool binary = false;
    bool tap_grid = false;
    int num_taps = 64;
    bool operator==(const OutputConfig &) const = default;
};

struct RcsSeries {
    std::string label;
    double carrier_hz = 0.0;
    double a_dbsm = 0.0;
    double b2_std_db = 0.0;
    bool operator==(const RcsSeries &) const = default;
};

struct RcsCdfConfig {
    int samples = 100000;
    std::vector<RcsSeries> series;
    bool operator==(const RcsCdfConfig &) const = default;
};

struct XlCorrConfig {
    int num_freq = 16;
    bool operator==(const XlCorrConfig &) const = default;
};

struct RisSnrConfig {
    std::vector<std::array<int, 2>> panel_sizes{{4, 4}, {8, 8}, {16, 16}};
    std::vector<std::string> codebooks{"specular", "one_bit", "continuous"};
    double tx_power_dbm = 20.0;
    double noise_dbm = -94.0;
    bool operator==(const RisSnrConfig &) const = default;
};

struct ModelSet {
    std::string label;
    std::string tables;
    bool ick = false;
    bool operator==(const ModelSet &) const = default;
};

struct SparsityConfig {
    std::vector<double> frequencies_hz{6e9, 13e9};
    std::vector<ModelSet> model_sets{{"3gpp", "baseline", false}, {"egbsm", "egbsm", true}};
    std::string granularity = "path";  ///< path | cluster
    bool operator==(const SparsityConfig &) const = default;
};

struct Config {
    std::string scenario = "InH";
    double carrier_hz = 3.5e9;
    double bandwidth_hz = 100e6;
    std::string tables = "baseline";
    int drops = 100;
    std::uint64_t seed = 1;
    std::string link_state = "auto";  ///< auto | los | nlos
    bool los_only = false;
    std::string path_loss = "scenario";  ///< scenario | fspl | none
    bool shadow_fading = true;
    std::string delay_mode = "relative";  ///< relative | absolute (communication link)
    std::string cpm = "random";  ///< random | co_polar
    TerminalConfig tx;
    TerminalConfig rx;
    ExtensionToggles extensions;
    SnsConfig sns;
    NearFieldConfig near_field;
    PruneConfig prune;
    std::vector<TargetEntry> targets;
    std::optional<RisConfig> ris;
    OutputConfig output;
    RcsCdfConfig rcs_cdf;
    XlCorrConfig xl_corr;
    RisSnrConfig ris_snr;
    SparsityConfig sparsity_gini;
    bool operator==(const Config &) const = default;
};

/// Parses a config document, applying defaults. Throws ConfigError listing every problem.
Config parse_config(const nlohmann::json &doc);
Config load_config(const std::filesystem::path &file);

/// Cross-field checks; returns all problems found.
std::vector<std::string> validate_config(const Config &c);

nlohmann::json to_json(const Config &c);

/// FNV-1a over the canonical dump of the config without the output section.
std::uint64_t config_hash(const Config &c);

// Conversions into library types.
AntennaArray build_array(const TerminalConfig &t, double carrier_hz);
RcsModel build_rcs_model(const RcsConfig &c);
RisPanel build_ris_panel(const RisConfig &c, double carrier_hz);
CodebookKind parse_codebook(const std::string &name);
SnSParams build_sns_params(const SnsConfig &c);
LinkRequest build_link_request(const Config &c);

} // namespace egbsm

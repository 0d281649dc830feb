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
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace egbsm {

enum class LinkState { los, nlos };

const char *to_string(LinkState s);

/// Intra-cluster K-factor statistics: fraction of a cluster's power carried by its dominant ray.
struct IckParams {
    double mean = 0.0;
    double std = 0.0;
};

/// Log10-domain normal statistics of one spread parameter.
struct LogNormalParam {
    double mu = 0.0;
    double sigma = 0.0;
};

/// LSP order used by the correlation matrices.
enum LspIndex { lsp_sf = 0, lsp_k, lsp_ds, lsp_asd, lsp_asa, lsp_zsd, lsp_zsa, lsp_count };

using LspMatrix = std::array<std::array<double, lsp_count>, lsp_count>;

/// Scenario parameters resolved at one carrier frequency.
struct ScenarioRecord {
    std::string scenario;
    LinkState state = LinkState::nlos;
    double f_min_hz = 0.0;
    double f_max_hz = 0.0;
    int num_clusters = 1;
    int rays_per_cluster = 20;
    LogNormalParam lg_ds;   ///< log10(seconds)
    LogNormalParam lg_asd;  ///< log10(degrees)
    LogNormalParam lg_asa;
    LogNormalParam lg_zsa;
    LogNormalParam lg_zsd;
    double k_mu_db = 0.0;
    double k_sigma_db = 0.0;
    double sf_std_db = 0.0;
    double cluster_shadow_std_db = 3.0;
    double r_tau = 2.0;
    double xpr_mu_db = 10.0;
    double xpr_sigma_db = 0.0;
    double c_asd_deg = 5.0;
    double c_asa_deg = 10.0;
    double c_zsa_deg = 7.0;
    double zod_offset_deg = 0.0;
    LspMatrix correlation{};
    LspMatrix sqrt_correlation{};  ///< symmetric square root of `correlation`
    std::optional<IckParams> ick;
};

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> messages);
    const std::vector<std::string> &messages() const { return messages_; }

  private:
    std::vector<std::string> messages_;
};

/// Frequency-dependent scalar: c0 + c1 * log10(x), x = 1 + f_GHz or f_GHz (clamped below).
struct FreqValue {
    double c0 = 0.0;
    double c1 = 0.0;
    bool one_plus = true;
    double fc_min_ghz = 0.0;

    double at(double carrier_hz) const;
};

struct BandEntry {
    double f_min_hz = 0.0;
    double f_max_hz = 0.0;
    int num_clusters = 1;
    int rays_per_cluster = 20;
    FreqValue lg_ds_mu, lg_ds_sigma, lg_asd_mu, lg_asd_sigma, lg_asa_mu, lg_asa_sigma;
    FreqValue lg_zsa_mu, lg_zsa_sigma, lg_zsd_mu, lg_zsd_sigma;
    double k_mu_db = 0.0, k_sigma_db = 0.0;
    double sf_std_db = 0.0;
    double cluster_shadow_std_db = 3.0;
    double r_tau = 2.0;
    double xpr_mu_db = 10.0, xpr_sigma_db = 0.0;
    double c_asd_deg = 5.0, c_asa_deg = 10.0, c_zsa_deg = 7.0;
    double zod_offset_deg = 0.0;
    LspMatrix correlation{};
    LspMatrix sqrt_correlation{};
    std::optional<IckParams> ick;
};

struct ScenarioTables {
    std::vector<BandEntry> los;
    std::vector<BandEntry> nlos;
};

/// One loaded parameter table set (for example the 38.901-style baseline).
struct TableSet {
    std::string name;
    std::string provenance;
    std::map<std::string, ScenarioTables, std::less<>> scenarios;
};

/// Parses and validates a table set. All problems are reported together.
TableSet parse_table_set(const nlohmann::json &doc);
TableSet load_table_set(const std::filesystem::path &file);

/// Resolves a table-set selector: an existing file path, or a shipped set name looked up
/// in the data directory (`EGBSM_DATA_DIR` environment variable or the build default).
std::filesystem::path resolve_table_path(std::string_view selector);

ScenarioRecord lookup_table(const TableSet &set, std::string_view scenario, LinkState state, double carrier_hz);

/// Symmetric PSD square root. Throws ConfigError when the matrix is not PSD.
LspMatrix correlation_sqrt(const LspMatrix &c);

} // namespace egbsm

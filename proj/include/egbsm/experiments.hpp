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

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "egbsm/config.hpp"
#include "egbsm/pipeline.hpp"

namespace egbsm {

struct RunOptions {
    unsigned threads = 1;
    std::filesystem::path out_dir = "out";
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// First line of every CSV: schema, config hash, seed, drops and table set.
std::string provenance_line(const std::string &schema, const Config &config);

struct RcsSeriesResult {
    std::string label;
    double carrier_hz = 0.0;
    std::vector<double> rcs_dbsm;  ///< samples in draw order
};
/// Monostatic RCS draws per series. Without configured series one series is built from the
/// first target at the config carrier.
std::vector<RcsSeriesResult> rcs_cdf(const Config &config);

struct XlCorrResult {
    std::vector<std::size_t> separation;
    std::vector<double> rho_baseline;
    std::vector<double> rho_sns;
};
/// Paired runs (same seeds) with SnS off and on; correlation of rx element 0 with element s.
XlCorrResult xl_corr(const Config &config, unsigned threads = 1);

struct RisSnrRow {
    int rows = 0;
    int cols = 0;
    std::string codebook;
    double mean_snr_db = 0.0;  ///< 10 log10 of the mean linear SNR over drops
};
std::vector<RisSnrRow> ris_snr(const Config &config, unsigned threads = 1);

struct GiniRow {
    double frequency_hz = 0.0;
    std::string model_set;
    std::string tables;
    double mean_gini = 0.0;
};
std::vector<GiniRow> sparsity_gini(const Config &config, unsigned threads = 1);

/// Writes <out>/<name>.csv and returns the written paths.
std::vector<std::filesystem::path> cmd_rcs_cdf(const Config &config, const RunOptions &options);
std::vector<std::filesystem::path> cmd_xl_corr(const Config &config, const RunOptions &options);
std::vector<std::filesystem::path> cmd_ris_snr(const Config &config, const RunOptions &options);
std::vector<std::filesystem::path> cmd_sparsity_gini(const Config &config, const RunOptions &options);
/// Path lists of every drop (cir.csv), plus cir.bin and taps.csv when enabled in the output section.
std::vector<std::filesystem::path> cmd_gen_cir(const Config &config, const RunOptions &options);

/// One labeled channel of a drop as written by gen-cir.
struct LabeledChannel {
    std::string label;
    const ChannelRealization *channel = nullptr;
};
std::vector<LabeledChannel> drop_channels(const DropOutput &drop);

void write_cir_csv_rows(std::ostream &os, const DropOutput &drop);
void write_cir_binary_header(std::ostream &os, const Config &config);
void write_cir_binary_drop(std::ostream &os, const DropOutput &drop);

} // namespace egbsm

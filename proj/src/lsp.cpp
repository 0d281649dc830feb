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

#include "egbsm/lsp.hpp"

#include <algorithm>
#include <cmath>

namespace egbsm {

LspRealization generate_lsps(const ScenarioRecord &record, RandomStream &stream)
{
    std::array<double, lsp_count> w{};
    for (auto &v : w)
        v = stream.normal(0.0, 1.0);

    LspRealization out;
    for (int i = 0; i < lsp_count; ++i) {
        double s = 0.0;
        for (int k = 0; k < lsp_count; ++k)
            s += record.sqrt_correlation[i][k] * w[k];
        out.standardized[i] = s;
    }
    const auto &z = out.standardized;
    auto lognormal = [](const LogNormalParam &p, double x) { return std::pow(10.0, p.mu + p.sigma * x); };

    out.sf_db = record.sf_std_db * z[lsp_sf];
    out.k_db = record.k_mu_db + record.k_sigma_db * z[lsp_k];
    out.ds = lognormal(record.lg_ds, z[lsp_ds]);
    out.asd = std::min(lognormal(record.lg_asd, z[lsp_asd]), max_azimuth_spread_deg);
    out.asa = std::min(lognormal(record.lg_asa, z[lsp_asa]), max_azimuth_spread_deg);
    out.zsd = std::min(lognormal(record.lg_zsd, z[lsp_zsd]), max_zenith_spread_deg);
    out.zsa = std::min(lognormal(record.lg_zsa, z[lsp_zsa]), max_zenith_spread_deg);
    return out;
}

} // namespace egbsm

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

#include "egbsm/random.hpp"
#include "egbsm/tables.hpp"

namespace egbsm {

struct LspRealization {
    double ds = 0.0;       ///< s
    double asd = 0.0;      ///< degrees
    double asa = 0.0;
    double zsd = 0.0;
    double zsa = 0.0;
    double sf_db = 0.0;
    double k_db = 0.0;
    std::array<double, lsp_count> standardized{};  ///< correlated unit normals, LspIndex order
};

inline constexpr double max_azimuth_spread_deg = 104.0;
inline constexpr double max_zenith_spread_deg = 52.0;

/// Draws the seven standard normals (always, so draws are state independent), correlates them
/// with the record's matrix square root and maps them to the LSP domains.
LspRealization generate_lsps(const ScenarioRecord &record, RandomStream &stream);

} // namespace egbsm

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

#include <string_view>

#include "egbsm/tables.hpp"

namespace egbsm {

/// Heights and distances of one link. h_bs is the higher (infrastructure) end.
struct LinkDistances {
    double d2d = 0.0;
    double d3d = 0.0;
    double h_bs = 10.0;
    double h_ut = 1.5;
};

/// LOS probability for UMi, UMa and InH (mixed office). Unknown scenarios fall back to InH.
double los_probability(std::string_view scenario, double d2d, double h_ut = 1.5);

/// Free-space path loss 20 log10(4 pi d f / c), dB.
double fspl_db(double d3d, double carrier_hz);

/// Scenario path loss, dB. Throws for d3d <= 0.
double path_loss_db(std::string_view scenario, LinkState state, const LinkDistances &geo, double carrier_hz);

} // namespace egbsm

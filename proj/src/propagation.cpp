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

#include "egbsm/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "egbsm/geometry.hpp"

namespace egbsm {

namespace {

double umi_los(const LinkDistances &g, double fc_ghz)
{
    const double pl1 = 32.4 + 21.0 * std::log10(g.d3d) + 20.0 * std::log10(fc_ghz);
    const double d_bp = 4.0 * (g.h_bs - 1.0) * (g.h_ut - 1.0) * fc_ghz * 1e9 / speed_of_light;
    if (d_bp <= 0.0 || g.d2d <= d_bp)
        return pl1;
    const double dh = g.h_bs - g.h_ut;
    return 32.4 + 40.0 * std::log10(g.d3d) + 20.0 * std::log10(fc_ghz) - 9.5 * std::log10(d_bp * d_bp + dh * dh);
}

double uma_los(const LinkDistances &g, double fc_ghz)
{
    const double pl1 = 28.0 + 22.0 * std::log10(g.d3d) + 20.0 * std::log10(fc_ghz);
    const double d_bp = 4.0 * (g.h_bs - 1.0) * (g.h_ut - 1.0) * fc_ghz * 1e9 / speed_of_light;
    if (d_bp <= 0.0 || g.d2d <= d_bp)
        return pl1;
    const double dh = g.h_bs - g.h_ut;
    return 28.0 + 40.0 * std::log10(g.d3d) + 20.0 * std::log10(fc_ghz) - 9.0 * std::log10(d_bp * d_bp + dh * dh);
}

double inh_los(const LinkDistances &g, double fc_ghz)
{
    return 32.4 + 17.3 * std::log10(g.d3d) + 20.0 * std::log10(fc_ghz);
}

} // namespace

double los_probability(std::string_view scenario, double d2d, double h_ut)
{
    if (d2d < 0.0)
        throw std::invalid_argument("los_probability: negative distance");
    if (scenario == "UMi") {
        if (d2d <= 18.0)
            return 1.0;
        return 18.0 / d2d + std::exp(-d2d / 36.0) * (1.0 - 18.0 / d2d);
    }
    if (scenario == "UMa") {
        if (d2d <= 18.0)
            return 1.0;
        const double c = h_ut <= 13.0 ? 0.0 : std::pow((h_ut - 13.0) / 10.0, 1.5);
        const double base = 18.0 / d2d + std::exp(-d2d / 63.0) * (1.0 - 18.0 / d2d);
        return base * (1.0 + c * 1.25 * std::pow(d2d / 100.0, 3.0) * std::exp(-d2d / 150.0));
    }
    if (d2d <= 1.2)
        return 1.0;
    if (d2d < 6.5)
        return std::exp(-(d2d - 1.2) / 4.7);
    return std::exp(-(d2d - 6.5) / 32.6) * 0.32;
}

double fspl_db(double d3d, double carrier_hz)
{
    if (!(d3d > 0.0))
        throw std::invalid_argument("fspl_db: distance must be positive");
    return 20.0 * std::log10(4.0 * pi * d3d * carrier_hz / speed_of_light);
}

double path_loss_db(std::string_view scenario, LinkState state, const LinkDistances &geo, double carrier_hz)
{
    if (!(geo.d3d > 0.0))
        throw std::invalid_argument("path_loss_db: distance must be positive");
    const double fc = carrier_hz * 1e-9;
    const double lg_d = std::log10(geo.d3d);
    if (scenario == "UMi") {
        const double los = umi_los(geo, fc);
        if (state == LinkState::los)
            return los;
        return std::max(los, 35.3 * lg_d + 22.4 + 21.3 * std::log10(fc) - 0.3 * (geo.h_ut - 1.5));
    }
    if (scenario == "UMa") {
        const double los = uma_los(geo, fc);
        if (state == LinkState::los)
            return los;
        return std::max(los, 13.54 + 39.08 * lg_d + 20.0 * std::log10(fc) - 0.6 * (geo.h_ut - 1.5));
    }
    if (scenario == "InH") {
        const double los = inh_los(geo, fc);
        if (state == LinkState::los)
            return los;
        return std::max(los, 17.3 + 38.3 * lg_d + 24.9 * std::log10(fc));
    }
    throw std::out_of_range("path_loss_db: no path-loss model for scenario '" + std::string(scenario) + "'");
}

} // namespace egbsm

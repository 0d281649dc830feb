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

#include <cstddef>
#include <span>
#include <vector>

#include "egbsm/channel.hpp"

namespace egbsm {

/// Tap grid per element pair: taps[link][time * num_taps + tap], link = rx * n_tx + tx.
struct TapGrid {
    std::size_t n_tx = 0;
    std::size_t n_rx = 0;
    std::size_t num_times = 0;
    std::size_t num_taps = 0;
    double tap_spacing = 0.0;  ///< seconds (1 / bandwidth)
    std::vector<std::vector<cdouble>> taps;
    std::size_t dropped_paths = 0;  ///< paths whose delay bin fell outside the grid

    cdouble at(std::size_t tx, std::size_t rx, std::size_t time, std::size_t tap) const
    {
        return taps.at(rx * n_tx + tx).at(time * num_taps + tap);
    }
};

/// Places every path at its nearest delay bin with its Doppler phasor evaluated at each
/// sample time. Sample times must be strictly increasing.
TapGrid synthesize_cir_samples(const ChannelRealization &r, std::span<const double> sample_times,
                               double bandwidth, std::size_t num_taps);

/// Frequency response of one element pair at t = 0.
std::vector<cdouble> frequency_response(const ChannelRealization &r, std::size_t tx, std::size_t rx,
                                        std::span<const double> frequencies);

/// Equally spaced baseband frequencies spanning the bandwidth, centered on zero.
std::vector<double> baseband_grid(double bandwidth, std::size_t count);

} // namespace egbsm

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
#include <utility>
#include <vector>

#include "egbsm/channel.hpp"

namespace egbsm {

struct GiniResult {
    double value = 0.0;
    std::size_t count = 0;
};

/// G = 1 - 2 sum_k (c_k / |c|_1) (N - k + 0.5) / N over the ascending-sorted list.
GiniResult gini_index(std::span<const double> powers);

/// Path powers |a|^2 of one element pair.
std::vector<double> path_powers(const ChannelRealization &r, std::size_t tx = 0, std::size_t rx = 0);

/// Cluster powers of one element pair (sum of its path powers per cluster id, active clusters only).
std::vector<double> cluster_path_powers(const ChannelRealization &r, std::size_t tx = 0, std::size_t rx = 0);

/// Running sums for rho_ij = |sum h_i h_j*| / sqrt(sum |h_i|^2 sum |h_j|^2).
class CorrelationAccumulator {
  public:
    void add(std::span<const cdouble> h_i, std::span<const cdouble> h_j);
    void merge(const CorrelationAccumulator &other);
    double value() const;
    std::size_t samples() const { return samples_; }

  private:
    cdouble cross_{0.0, 0.0};
    double energy_i_ = 0.0;
    double energy_j_ = 0.0;
    std::size_t samples_ = 0;
};

/// Correlation of the frequency responses of elements i and j (rx side, tx element 0),
/// aggregated over all realizations and frequencies.
double spatial_correlation(std::span<const ChannelRealization> drops, std::size_t elem_i, std::size_t elem_j,
                           std::span<const double> frequencies);

enum class Combining { single_antenna, sum };

/// Ptx + 10 log10(sum |a|^2) - N0, dB. Path loss is already inside the amplitudes.
double received_snr(const ChannelRealization &r, double tx_power_dbm, double noise_power_dbm,
                    Combining combining = Combining::single_antenna);

/// Sorted samples with step probabilities k / N.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples);

} // namespace egbsm

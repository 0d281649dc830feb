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

#include "egbsm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "egbsm/cir.hpp"

namespace egbsm {

GiniResult gini_index(std::span<const double> powers)
{
    if (powers.empty())
        throw std::invalid_argument("gini_index: empty input");
    std::vector<double> c(powers.begin(), powers.end());
    double l1 = 0.0;
    for (double v : c) {
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("gini_index: powers must be finite and non-negative");
        l1 += v;
    }
    if (!(l1 > 0.0))
        throw std::invalid_argument("gini_index: all-zero input");
    std::sort(c.begin(), c.end());
    const double n = static_cast<double>(c.size());
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        s += (c[k] / l1) * ((n - static_cast<double>(k + 1) + 0.5) / n);
    return {1.0 - 2.0 * s, c.size()};
}

std::vector<double> path_powers(const ChannelRealization &r, std::size_t tx, std::size_t rx)
{
    std::vector<double> p;
    for (const auto &path : r.link(tx, rx))
        p.push_back(std::norm(path.amplitude));
    return p;
}

std::vector<double> cluster_path_powers(const ChannelRealization &r, std::size_t tx, std::size_t rx)
{
    std::map<int, double> acc;
    for (const auto &c : r.clusters)
        if (c.active)
            acc[c.id] = 0.0;
    for (const auto &path : r.link(tx, rx))
        acc[path.cluster_id] += std::norm(path.amplitude);
    std::vector<double> p;
    for (const auto &[id, v] : acc)
        p.push_back(v);
    return p;
}

void CorrelationAccumulator::add(std::span<const cdouble> h_i, std::span<const cdouble> h_j)
{
    if (h_i.size() != h_j.size())
        throw std::invalid_argument("correlation: response lengths differ");
    for (std::size_t k = 0; k < h_i.size(); ++k) {
        cross_ += h_i[k] * std::conj(h_j[k]);
        energy_i_ += std::norm(h_i[k]);
        energy_j_ += std::norm(h_j[k]);
    }
    ++samples_;
}

void CorrelationAccumulator::merge(const CorrelationAccumulator &o)
{
    cross_ += o.cross_;
    energy_i_ += o.energy_i_;
    energy_j_ += o.energy_j_;
    samples_ += o.samples_;
}

double CorrelationAccumulator::value() const
{
    if (!(energy_i_ > 0.0) || !(energy_j_ > 0.0))
        throw std::domain_error("correlation: zero-energy element");
    return std::min(1.0, std::abs(cross_) / std::sqrt(energy_i_ * energy_j_));
}

double spatial_correlation(std::span<const ChannelRealization> drops, std::size_t elem_i, std::size_t elem_j,
                           std::span<const double> frequencies)
{
    if (drops.size() < 2)
        throw std::invalid_argument("spatial_correlation: need at least two drops");
    CorrelationAccumulator acc;
    for (const auto &r : drops) {
        const auto hi = frequency_response(r, 0, elem_i, frequencies);
        const auto hj = frequency_response(r, 0, elem_j, frequencies);
        acc.add(hi, hj);
    }
    return acc.value();
}

double received_snr(const ChannelRealization &r, double tx_power_dbm, double noise_power_dbm, Combining combining)
{
    double energy = 0.0;
    if (combining == Combining::single_antenna) {
        for (const auto &p : r.link(0, 0))
            energy += std::norm(p.amplitude);
    }
    else {
        for (const auto &l : r.paths)
            for (const auto &p : l)
                energy += std::norm(p.amplitude);
    }
    return tx_power_dbm + 10.0 * std::log10(energy) - noise_power_dbm;
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_cdf: no samples");
    std::sort(samples.begin(), samples.end());
    std::vector<std::pair<double, double>> out(samples.size());
    const double n = static_cast<double>(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k)
        out[k] = {samples[k], static_cast<double>(k + 1) / n};
    return out;
}

} // namespace egbsm

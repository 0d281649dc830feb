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

#include "egbsm/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace egbsm {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

SeedTree SeedTree::child(std::string_view stage, std::uint64_t index) const
{
    SeedTree t = *this;
    t.path_.emplace_back(std::string(stage), index);
    return t;
}

std::uint64_t SeedTree::key() const
{
    std::uint64_t h = splitmix64(master_);
    for (const auto &[stage, index] : path_) {
        h = splitmix64(h ^ fnv1a64(stage));
        h = splitmix64(h ^ index);
    }
    return h;
}

RandomStream SeedTree::stream(std::string_view stage, std::uint64_t index) const
{
    return RandomStream(child(stage, index).key());
}

double RandomStream::uniform01()
{
    // 53 random mantissa bits
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform01();
}

double RandomStream::normal(double mean, double std)
{
    if (std < 0.0)
        throw std::invalid_argument("normal: negative standard deviation");
    if (std == 0.0)
        return mean;
    return mean + std * std_normal_(engine_);
}

bool RandomStream::bernoulli(double p)
{
    return uniform01() < p;
}

double RandomStream::clipped_normal(double mean, double std, double lo, double hi)
{
    if (!(lo < hi))
        throw std::invalid_argument("clipped_normal: empty interval");
    ++clipped_draws_;
    double v = mean;
    for (int attempt = 0; attempt < 64; ++attempt) {
        v = normal(mean, std);
        if (v >= lo && v <= hi)
            return v;
        if (std == 0.0)
            break;
    }
    ++clamped_draws_;
    return std::clamp(v, lo, hi);
}

void RandomStream::check_clamp_fraction(double limit, std::string_view what) const
{
    if (clamp_fraction() > limit)
        throw std::runtime_error(std::string(what) + ": clipped-normal clamping in " +
                                 std::to_string(clamped_draws_) + " of " + std::to_string(clipped_draws_) +
                                 " draws exceeds the configured fraction");
}

std::vector<std::size_t> RandomStream::permutation(std::size_t n)
{
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    // Fisher-Yates with an explicit bounded draw so the result does not depend on the
    // standard library's distribution implementation.
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform01() * static_cast<double>(i));
        std::swap(p[i - 1], p[std::min(j, i - 1)]);
    }
    return p;
}

} // namespace egbsm

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
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace egbsm {

class RandomStream;

/// Hierarchical seed derivation. A stream depends only on the master seed and the
/// (stage, index) path, never on the order in which streams are created.
class SeedTree {
  public:
    explicit SeedTree(std::uint64_t master_seed) : master_(master_seed) {}

    SeedTree child(std::string_view stage, std::uint64_t index) const;
    RandomStream stream(std::string_view stage, std::uint64_t index = 0) const;

    std::uint64_t master_seed() const { return master_; }
    const std::vector<std::pair<std::string, std::uint64_t>> &path() const { return path_; }
    std::uint64_t key() const;

  private:
    std::uint64_t master_;
    std::vector<std::pair<std::string, std::uint64_t>> path_;
};

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi);
    double uniform01();  ///< in [0, 1)
    double normal(double mean, double std);
    bool bernoulli(double p);

    /// Resamples until the value lands in [lo, hi]; after 64 rejected draws it clamps.
    double clipped_normal(double mean, double std, double lo, double hi);

    std::vector<std::size_t> permutation(std::size_t n);

    /// Throws when more than `limit` of the clipped draws had to be clamped.
    void check_clamp_fraction(double limit, std::string_view what) const;

    std::size_t clipped_draws() const { return clipped_draws_; }
    std::size_t clamped_draws() const { return clamped_draws_; }
    double clamp_fraction() const
    {
        return clipped_draws_ == 0 ? 0.0 : static_cast<double>(clamped_draws_) / static_cast<double>(clipped_draws_);
    }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> std_normal_{0.0, 1.0};
    std::size_t clipped_draws_ = 0;
    std::size_t clamped_draws_ = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);

} // namespace egbsm

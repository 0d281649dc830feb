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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "egbsm/config.hpp"
#include "egbsm/isac.hpp"
#include "egbsm/ris.hpp"
#include "egbsm/tables.hpp"

namespace egbsm {

/// Everything generated for one drop.
struct DropOutput {
    std::uint64_t index = 0;
    std::optional<ChannelRealization> comm;  ///< absent for monostatic sensing
    std::optional<SnSMap> sns_map;
    std::vector<SensingChannel> sensing;     ///< one per target
    std::optional<RisChannel> ris;
};

/// Seeds of drop `index`: root(seed).child("drop", index).
SeedTree drop_seed_tree(std::uint64_t master_seed, std::uint64_t index);

/// Communication link of one drop with the enabled extensions (ICK, near field, SnS).
ChannelRealization generate_comm_link(const Config &config, const LinkRequest &request, const TableSet &tables,
                                      const SeedTree &drop_seeds, SnSMap *sns_map_out = nullptr,
                                      ClusterSet *clusters_out = nullptr);

DropOutput run_drop(const Config &config, const TableSet &tables, std::uint64_t index);

/// Evaluates fn(i) for i in [0, count) on `threads` workers; results keep the index order
/// so the output does not depend on scheduling. threads <= 1 runs inline.
template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using T = decltype(fn(std::size_t{}));
    std::vector<std::optional<T>> slots(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            slots[i].emplace(fn(i));
    }
    else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    slots[i].emplace(fn(i));
                }
                catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(count);
                }
            }
        };
        std::vector<std::thread> pool;
        const auto n = std::min<std::size_t>(threads, count);
        for (std::size_t t = 0; t < n; ++t)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
    }
    std::vector<T> out;
    out.reserve(count);
    for (auto &s : slots)
        out.push_back(std::move(*s));
    return out;
}

} // namespace egbsm

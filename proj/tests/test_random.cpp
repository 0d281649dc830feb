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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "egbsm/random.hpp"

using namespace egbsm;

TEST_CASE("streams are reproducible and distinct")
{
    const SeedTree root(42);
    auto a = root.child("drop", 3).stream("lsp");
    auto b = SeedTree(42).child("drop", 3).stream("lsp");
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a.uniform01() == b.uniform01());

    auto s0 = root.stream("angles", 0);
    auto s1 = root.stream("angles", 1);
    auto s2 = root.stream("powers", 0);
    auto s3 = SeedTree(43).stream("angles", 0);
    const double x0 = s0.uniform01();
    CHECK(x0 != s1.uniform01());
    CHECK(x0 != s2.uniform01());
    CHECK(x0 != s3.uniform01());

    // Creation order does not matter.
    auto late = root.child("drop", 7).stream("xpr");
    (void)root.child("drop", 8).stream("xpr").uniform01();
    auto again = root.child("drop", 7).stream("xpr");
    CHECK(late.normal(0, 1) == again.normal(0, 1));
}

TEST_CASE("seed keys do not collide over a grid of paths")
{
    std::set<std::uint64_t> keys;
    const SeedTree root(1);
    for (std::uint64_t d = 0; d < 200; ++d)
        for (const char *stage : {"link", "target", "ris"})
            for (std::uint64_t l = 0; l < 3; ++l)
                keys.insert(root.child("drop", d).child(stage, l).key());
    CHECK(keys.size() == 200u * 3u * 3u);
}

TEST_CASE("distribution moments")
{
    auto s = SeedTree(9).stream("moments");
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = s.normal(0.0, 1.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(sd - 1.0) < 0.02);

    for (int i = 0; i < 10; ++i)
        CHECK(s.normal(2.5, 0.0) == 2.5);
    for (int i = 0; i < 1000; ++i) {
        const double u = s.uniform(-2.0, 3.0);
        CHECK(u >= -2.0);
        CHECK(u < 3.0);
    }
}

TEST_CASE("clipped normal")
{
    auto s = SeedTree(10).stream("clip");
    for (int i = 0; i < 10000; ++i) {
        const double x = s.clipped_normal(0.5, 0.1, 0.0, 1.0);
        REQUIRE(x >= 0.0);
        REQUIRE(x <= 1.0);
    }
    CHECK(s.clamped_draws() == 0);
    CHECK(s.clipped_normal(0.3, 0.0, 0.0, 1.0) == 0.3);

    // Mass almost entirely outside the interval: retries run out and the value is clamped.
    auto t = SeedTree(11).stream("clip");
    for (int i = 0; i < 20; ++i) {
        const double x = t.clipped_normal(10.0, 0.1, 0.0, 1.0);
        CHECK(x == 1.0);
    }
    CHECK(t.clamp_fraction() == 1.0);
    CHECK_THROWS(t.check_clamp_fraction(0.05, "test"));
    CHECK_NOTHROW(s.check_clamp_fraction(0.05, "test"));
    CHECK_THROWS(s.clipped_normal(0.0, 1.0, 1.0, 0.0));
}

TEST_CASE("permutation is a bijection")
{
    auto s = SeedTree(12).stream("perm");
    for (int trial = 0; trial < 50; ++trial) {
        auto p = s.permutation(20);
        std::vector<std::size_t> sorted(p.begin(), p.end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> id(20);
        std::iota(id.begin(), id.end(), 0);
        CHECK(sorted == id);
    }
}

TEST_CASE("bernoulli frequency")
{
    auto s = SeedTree(13).stream("b");
    int hits = 0;
    for (int i = 0; i < 100000; ++i)
        hits += s.bernoulli(0.3) ? 1 : 0;
    CHECK(std::abs(hits / 1e5 - 0.3) < 0.01);
}

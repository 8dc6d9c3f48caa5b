// Copyright 2026 The qradon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qradon/bench.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace qradon;

TEST(bench, loglog_slope_of_exact_power_laws) {
    const std::vector<double> x{2.0, 4.0, 8.0, 16.0};
    for (double e : {1.0, 2.0, 3.0}) {
        std::vector<double> y;
        for (double v : x) {
            y.push_back(5.0 * std::pow(v, e));
        }
        EXPECT_NEAR(loglog_slope(x, y), e, 1e-12);
    }
    EXPECT_THROW(loglog_slope({1.0}, {1.0}), DimensionError);
}

TEST(bench, transform_names_round_trip) {
    for (BenchTransform t : {BenchTransform::pdrt_naive, BenchTransform::pdrt_fft, BenchTransform::qrt_direct,
                             BenchTransform::qrt_fft}) {
        EXPECT_EQ(parse_bench_transform(to_string(t)), t);
    }
    EXPECT_THROW(parse_bench_transform("dft"), PreconditionError);
}

TEST(bench, rejects_bad_arguments) {
    EXPECT_THROW(bench(BenchTransform::pdrt_naive, {8, 16}, 4), PreconditionError);
    EXPECT_THROW(bench(BenchTransform::pdrt_naive, {16, 8}), PreconditionError);
    EXPECT_THROW(bench(BenchTransform::pdrt_naive, {8, 8}), PreconditionError);
    EXPECT_THROW(bench(BenchTransform::pdrt_naive, {8}), PreconditionError);
    EXPECT_THROW(bench(BenchTransform::pdrt_fft, {8, 12}), SizeError);
    EXPECT_THROW(bench(BenchTransform::qrt_fft, {6, 8}), SizeError);
}

TEST(bench, result_invariants_and_report) {
    const BenchResult r = bench(BenchTransform::pdrt_naive, {8, 16, 32}, 5, 1, 0.002);
    ASSERT_EQ(r.median_seconds.size(), 3U);
    for (double t : r.median_seconds) {
        EXPECT_GT(t, 0.0);
    }
    EXPECT_EQ(r.repeats, 5U);
    const KeyValueBlock b = r.to_report();
    EXPECT_TRUE(b.get("pdrt_naive.n16_seconds").has_value());
    EXPECT_EQ(b.get("pdrt_naive.repeats"), "5");
    EXPECT_TRUE(b.get("pdrt_naive.slope").has_value());
}

TEST(bench, naive_grows_faster_than_fft) {
    const std::vector<std::size_t> sizes{32, 64, 128};
    const BenchResult naive = bench(BenchTransform::pdrt_naive, sizes, 5, 0, 0.01);
    const BenchResult fast = bench(BenchTransform::pdrt_fft, sizes, 5, 0, 0.01);
    EXPECT_GT(naive.slope, 2.5);
    EXPECT_LT(fast.slope, naive.slope);
}

TEST(bench, qrt_direct_is_cubic) {
    const BenchResult r = bench(BenchTransform::qrt_direct, {16, 32, 64}, 5, 0, 0.01);
    EXPECT_GT(r.slope, 2.5);
    EXPECT_LT(r.slope, 3.5);
}

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

/**
 * @file
 * Wall-clock timing of the transforms and log-log growth fits.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/grid.hpp"
#include "qradon/pdrt.hpp"
#include "qradon/qrt.hpp"
#include "qradon/report.hpp"
#include "qradon/rng.hpp"

namespace qradon {

enum class BenchTransform { pdrt_naive, pdrt_fft, qrt_direct, qrt_fft };

inline std::string_view to_string(BenchTransform t) {
    switch (t) {
    case BenchTransform::pdrt_naive:
        return "pdrt_naive";
    case BenchTransform::pdrt_fft:
        return "pdrt_fft";
    case BenchTransform::qrt_direct:
        return "qrt_direct";
    case BenchTransform::qrt_fft:
        return "qrt_fft";
    }
    return "unknown";
}

inline BenchTransform parse_bench_transform(std::string_view name) {
    for (BenchTransform t : {BenchTransform::pdrt_naive, BenchTransform::pdrt_fft, BenchTransform::qrt_direct,
                             BenchTransform::qrt_fft}) {
        if (to_string(t) == name) {
            return t;
        }
    }
    throw PreconditionError("unknown transform '" + std::string(name) + "'");
}

struct BenchResult {
    BenchTransform transform = BenchTransform::pdrt_fft;
    std::vector<std::size_t> sizes;
    /// Median seconds per call at each size.
    std::vector<double> median_seconds;
    double slope = 0.0;
    std::size_t repeats = 0;

    KeyValueBlock to_report() const {
        KeyValueBlock b;
        const std::string name(to_string(transform));
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            b.add(name + ".n" + std::to_string(sizes[i]) + "_seconds", median_seconds[i]);
        }
        b.add(name + ".repeats", static_cast<std::uint64_t>(repeats));
        b.add(name + ".slope", slope);
        return b;
    }
};

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DimensionError("slope fit needs at least two matching points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

namespace detail {

inline double run_transform_once(BenchTransform t, const Image &f) {
    switch (t) {
    case BenchTransform::pdrt_naive:
        return pdrt_naive(f).values()[0];
    case BenchTransform::pdrt_fft:
        return pdrt_fft(f).values()[0];
    case BenchTransform::qrt_direct:
        return qrt_direct(f).values()[1];
    case BenchTransform::qrt_fft:
        return qrt_fft(f).values()[1];
    }
    return 0.0;
}

} // namespace detail

/// Median time per call over `repeats` batches. Each batch repeats the call
/// until it has run for at least `min_batch_seconds`, so small sizes are not
/// dominated by clock resolution.
inline BenchResult bench(BenchTransform t, const std::vector<std::size_t> &sizes, std::size_t repeats = 5,
                         std::uint64_t seed = 0, double min_batch_seconds = 0.02) {
    if (repeats < 5) {
        throw PreconditionError("bench needs at least 5 repeats, got " + std::to_string(repeats));
    }
    if (sizes.size() < 2 || !std::is_sorted(sizes.begin(), sizes.end()) ||
        std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
        throw PreconditionError("bench sizes must be at least two strictly increasing values");
    }
    using clock = std::chrono::steady_clock;
    BenchResult r;
    r.transform = t;
    r.sizes = sizes;
    r.repeats = repeats;
    volatile double sink = 0.0;
    for (std::size_t n : sizes) {
        if ((t == BenchTransform::pdrt_fft || t == BenchTransform::qrt_fft) && !is_power_of_two(n)) {
            throw SizeError(std::string(to_string(t)) + " benchmark sizes must be powers of two, got " +
                            std::to_string(n));
        }
        Image input(n);
        Rng rng(seed);
        for (double &v : input.data()) {
            v = rng.uniform(0.0, 1.0);
        }
        std::size_t iters = 1;
        const auto t0 = clock::now();
        sink = sink + detail::run_transform_once(t, input);
        const double first = std::chrono::duration<double>(clock::now() - t0).count();
        if (first < min_batch_seconds) {
            iters = static_cast<std::size_t>(std::ceil(min_batch_seconds / std::max(first, 1e-7)));
        }
        std::vector<double> samples;
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            const auto start = clock::now();
            for (std::size_t i = 0; i < iters; ++i) {
                sink = sink + detail::run_transform_once(t, input);
            }
            samples.push_back(std::chrono::duration<double>(clock::now() - start).count() /
                              static_cast<double>(iters));
        }
        std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
        r.median_seconds.push_back(samples[samples.size() / 2]);
    }
    std::vector<double> xs(sizes.begin(), sizes.end());
    r.slope = loglog_slope(xs, r.median_seconds);
    return r;
}

} // namespace qradon

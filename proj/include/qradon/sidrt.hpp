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
 * Interpolation-based discrete Radon transform (SIDRT) and line detection.
 *
 * Angle index theta in [N] gives the slope k = tan(pi theta / N - pi / 4).
 * For theta < N/2 (|k| <= 1) lines are traced across columns i:
 *
 *     P(theta, l) = N^{-1/2} sum_i [ w0 f(i, l + b) + w1 f(i, l + b + 1) ]
 *
 * with b = floor(k i), d = k i - b, w0 = sqrt(1 - d^2), w1 = d and the
 * second coordinate taken mod N. For theta >= N/2 the roles of the two
 * coordinates swap and the step is i / k (zero for the vertical theta = 3N/4).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/grid.hpp"
#include "qradon/radon_table.hpp"
#include "qradon/report.hpp"
#include "qradon/rng.hpp"
#include "qradon/statevector.hpp"

namespace qradon {

using SidrtTable = RadonTable<SidrtLayout>;

enum class SlopeBranch { horizontal, vertical };

struct SlopeSpec {
    std::size_t theta = 0;
    std::size_t n = 0;
    SlopeBranch branch = SlopeBranch::horizontal;
    /// tan(pi theta / N - pi / 4); +infinity for theta = 3N/4.
    double k = 0.0;
    /// Per-step offset: k on the horizontal branch, 1/k on the vertical one.
    double step = 0.0;

    bool is_vertical_line() const noexcept { return std::isinf(k); }
};

inline SlopeSpec slope_spec(std::size_t theta, std::size_t n) {
    if (n < 4 || n % 4 != 0) {
        throw SizeError("SIDRT size must be a multiple of 4, got " + std::to_string(n));
    }
    if (theta >= n) {
        throw PreconditionError("theta " + std::to_string(theta) + " outside [0, " + std::to_string(n) + ")");
    }
    SlopeSpec s;
    s.theta = theta;
    s.n = n;
    const double angle = std::numbers::pi * (static_cast<double>(theta) / static_cast<double>(n) - 0.25);
    if (2 * theta < n) {
        s.branch = SlopeBranch::horizontal;
        s.k = std::tan(angle);
        s.step = s.k;
    } else {
        s.branch = SlopeBranch::vertical;
        if (4 * theta == 3 * n) {
            s.k = std::numeric_limits<double>::infinity();
            s.step = 0.0;
        } else {
            s.k = std::tan(angle);
            s.step = std::cos(angle) / std::sin(angle);
        }
    }
    return s;
}

struct InterpWeights {
    std::int64_t base = 0;
    double delta = 0.0;
    double w0 = 1.0;
    double w1 = 0.0;
};

/// Floor-convention split of k i. Products within 1e-9 of an integer are
/// snapped so that exact diagonals do not pick up rounding noise.
inline InterpWeights interp_weights(double k, double i) {
    if (!std::isfinite(k)) {
        throw PreconditionError("interp_weights needs a finite slope");
    }
    constexpr double kSnap = 1e-9;
    const double ki = k * i;
    const double nearest = std::round(ki);
    InterpWeights w;
    if (std::abs(ki - nearest) < kSnap) {
        w.base = static_cast<std::int64_t>(nearest);
        return w;
    }
    const double b = std::floor(ki);
    w.base = static_cast<std::int64_t>(b);
    w.delta = ki - b;
    w.w0 = std::sqrt(1.0 - w.delta * w.delta);
    w.w1 = w.delta;
    return w;
}

namespace detail {

inline void check_sidrt_size(std::size_t n) {
    if (!is_power_of_two(n) || n < 4) {
        throw SizeError("SIDRT needs a power-of-two side >= 4, got " + std::to_string(n));
    }
}

/// P(theta, l) for every l at one angle.
inline void sidrt_row(const Image &f, const SlopeSpec &s, std::span<double> out) {
    const std::size_t n = f.size();
    const auto nn = static_cast<std::int64_t>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const InterpWeights w = interp_weights(s.step, static_cast<double>(i));
        for (std::size_t l = 0; l < n; ++l) {
            const auto j0 = static_cast<std::size_t>(wrap(static_cast<std::int64_t>(l) + w.base, nn));
            const std::size_t j1 = j0 + 1 == n ? 0 : j0 + 1;
            double v;
            if (s.branch == SlopeBranch::horizontal) {
                v = w.w0 * f(i, j0) + (w.w1 != 0.0 ? w.w1 * f(i, j1) : 0.0);
            } else {
                v = w.w0 * f(j0, i) + (w.w1 != 0.0 ? w.w1 * f(j1, i) : 0.0);
            }
            out[l] += v;
        }
    }
    for (double &v : out) {
        v *= scale;
    }
}

} // namespace detail

/// Full N x N table; with `normalize_input` the image is first scaled to unit norm.
inline SidrtTable sidrt(const Image &f, bool normalize_input = false) {
    const std::size_t n = f.size();
    detail::check_sidrt_size(n);
    const Image g = normalize_input ? normalize(f).amplitudes() : f;
    SidrtTable table(n);
    std::vector<double> row(n);
    for (std::size_t theta = 0; theta < n; ++theta) {
        detail::sidrt_row(g, slope_spec(theta, n), row);
        for (std::size_t l = 0; l < n; ++l) {
            table(theta, l) = row[l];
        }
    }
    return table;
}

/// Registers of the swap-test states: x at [0, q), y at [q, 2q), ancilla at 2q.
struct SidrtLayoutQubits {
    Register x;
    Register y;
    unsigned ancilla = 0;
    unsigned total = 0;
};

inline SidrtLayoutQubits sidrt_qubits(std::size_t n) {
    detail::check_sidrt_size(n);
    RegisterLayout lay;
    SidrtLayoutQubits q;
    const unsigned bits = log2_exact(n);
    q.x = lay.add("x", bits);
    q.y = lay.add("y", bits);
    q.ancilla = lay.add("ancilla", 1).offset;
    q.total = lay.total_qubits();
    return q;
}

/// N^{-1/2} sum_i (w0 |pixel at l + b>|0> + w1 |pixel at l + b + 1>|1>).
inline StateVector location_state(std::size_t theta, std::size_t l, std::size_t n) {
    const SlopeSpec s = slope_spec(theta, n);
    const SidrtLayoutQubits q = sidrt_qubits(n);
    if (l >= n) {
        throw PreconditionError("intercept " + std::to_string(l) + " outside [0, " + std::to_string(n) + ")");
    }
    const auto nn = static_cast<std::int64_t>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Complex> amps(std::size_t{1} << q.total);
    const std::uint64_t anc = std::uint64_t{1} << q.ancilla;
    for (std::size_t i = 0; i < n; ++i) {
        const InterpWeights w = interp_weights(s.step, static_cast<double>(i));
        const auto j0 = static_cast<std::uint64_t>(wrap(static_cast<std::int64_t>(l) + w.base, nn));
        const std::uint64_t j1 = (j0 + 1) % n;
        auto index = [&](std::uint64_t j) {
            return s.branch == SlopeBranch::horizontal ? q.y.write(q.x.write(0, i), j) : q.y.write(q.x.write(0, j), i);
        };
        amps[index(j0)] += w.w0 * scale;
        amps[index(j1) | anc] += w.w1 * scale;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// f(x, y) |x>|y> tensored with (|0> + |1>) / sqrt 2.
inline StateVector image_state(const QuantumImage &f) {
    const std::size_t n = f.size();
    const SidrtLayoutQubits q = sidrt_qubits(n);
    std::vector<Complex> amps(std::size_t{1} << q.total);
    const double r = std::numbers::sqrt2 / 2.0;
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            const std::uint64_t idx = q.y.write(q.x.write(0, x), y);
            amps[idx] = f(x, y) * r;
            amps[idx | (std::uint64_t{1} << q.ancilla)] = f(x, y) * r;
        }
    }
    return StateVector::from_amplitudes(std::move(amps));
}

inline Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw DimensionError("inner product of states with different dimensions");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        acc += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return acc;
}

/// sqrt 2 times the overlap <location|image>, perturbed by a seeded uniform
/// error so that the result lies within `epsilon` of the exact SIDRT value.
inline double swap_test_estimate(const QuantumImage &f, std::size_t theta, std::size_t l, double epsilon,
                                 Rng &rng) {
    if (!(epsilon >= 0.0)) {
        throw PreconditionError("epsilon must be non-negative");
    }
    const double overlap = inner_product(location_state(theta, l, f.size()), image_state(f)).real();
    const double half = epsilon / std::numbers::sqrt2;
    const double noise = epsilon > 0.0 ? rng.uniform(-half, half) : 0.0;
    return std::numbers::sqrt2 * (overlap + noise);
}

struct LineDetection {
    std::size_t theta = 0;
    std::size_t l = 0;
    SlopeBranch branch = SlopeBranch::horizontal;
    /// k_theta; +infinity for the vertical line.
    double slope = 0.0;
    double intercept = 0.0;
    double score = 0.0;

    KeyValueBlock to_report() const {
        KeyValueBlock b;
        b.add("theta", static_cast<std::uint64_t>(theta))
            .add("l", static_cast<std::uint64_t>(l))
            .add("branch", branch == SlopeBranch::horizontal ? "horizontal" : "vertical")
            .add("slope", std::isinf(slope) ? std::string("vertical") : format_double(slope))
            .add("intercept", intercept)
            .add("score", score);
        return b;
    }
};

/// Largest entry; ties go to the smallest theta, then the smallest l.
inline LineDetection argmax_line(const SidrtTable &table) {
    const std::size_t n = table.n();
    std::size_t best_t = 0;
    std::size_t best_l = 0;
    double best = table(0, 0);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t l = 0; l < n; ++l) {
            if (table(t, l) > best) {
                best = table(t, l);
                best_t = t;
                best_l = l;
            }
        }
    }
    const SlopeSpec s = slope_spec(best_t, n);
    LineDetection d;
    d.theta = best_t;
    d.l = best_l;
    d.branch = s.branch;
    d.slope = s.k;
    d.intercept = static_cast<double>(best_l);
    d.score = best;
    return d;
}

/// Normalizes f, optionally perturbs every table cell by U[-eps/sqrt N, eps/sqrt N]
/// (the per-cell error of an eps-accurate swap test) and returns the argmax.
inline LineDetection detect_line(const Image &f, std::optional<double> epsilon = std::nullopt,
                                 std::uint64_t seed = 0) {
    SidrtTable table = sidrt(f, true);
    if (epsilon) {
        if (!(*epsilon >= 0.0)) {
            throw PreconditionError("epsilon must be non-negative");
        }
        const double bound = *epsilon / std::sqrt(static_cast<double>(f.size()));
        Rng rng(seed);
        for (double &v : table.values()) {
            v += rng.uniform(-bound, bound);
        }
    }
    return argmax_line(table);
}

struct MinExpectation {
    std::size_t n = 0;
    std::size_t trials = 0;
    double mean_min = 0.0;
    double standard_error = 0.0;
    /// sqrt 3 / (2 sqrt N).
    double bound = 0.0;
    double ratio = 0.0;
    /// Mean of P over all cells and trials.
    double mean_point = 0.0;

    KeyValueBlock to_report() const {
        KeyValueBlock b;
        b.add("n", static_cast<std::uint64_t>(n))
            .add("trials", static_cast<std::uint64_t>(trials))
            .add("mean_min", mean_min)
            .add("standard_error", standard_error)
            .add("bound", bound)
            .add("ratio", ratio)
            .add("mean_point", mean_point)
            .add("mean_point_ratio", mean_point / bound);
        return b;
    }
};

/// Monte-Carlo mean of min_{theta,l} SIDRT over normalized U[0,1] images.
inline MinExpectation min_expectation_check(std::size_t n, std::size_t trials, std::uint64_t seed) {
    if (trials < 30) {
        throw PreconditionError("min_expectation_check needs at least 30 trials, got " + std::to_string(trials));
    }
    detail::check_sidrt_size(n);
    const Rng root(seed);
    std::vector<double> mins;
    mins.reserve(trials);
    double point_sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Image f = make_test_image(TestImageKind::random_uniform, n, {}, root.split(t).seed());
        const SidrtTable table = sidrt(f, true);
        double lo = std::numeric_limits<double>::infinity();
        for (double v : table.values()) {
            lo = std::min(lo, v);
            point_sum += v;
        }
        mins.push_back(lo);
    }
    MinExpectation r;
    r.n = n;
    r.trials = trials;
    double mean = 0.0;
    for (double v : mins) {
        mean += v;
    }
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double v : mins) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(trials - 1);
    r.mean_min = mean;
    r.standard_error = std::sqrt(var / static_cast<double>(trials));
    r.bound = std::sqrt(3.0) / (2.0 * std::sqrt(static_cast<double>(n)));
    r.ratio = mean / r.bound;
    r.mean_point = point_sum / static_cast<double>(trials * n * n);
    return r;
}

} // namespace qradon

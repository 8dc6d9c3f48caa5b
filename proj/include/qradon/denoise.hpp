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
 * Single-level Haar thresholding and the Radon-domain denoising pipelines.
 */

#pragma once

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
#include "qradon/pdrt.hpp"
#include "qradon/qrt.hpp"
#include "qradon/qsim.hpp"
#include "qradon/report.hpp"

namespace qradon {

struct HaarCoeffs {
    std::vector<double> c;
    std::vector<double> d;
};

/// c_i = (s_2i + s_2i+1) / sqrt 2, d_i = (s_2i - s_2i+1) / sqrt 2.
inline HaarCoeffs haar_forward(std::span<const double> s) {
    if (s.size() % 2 != 0) {
        throw DimensionError("Haar transform needs an even length, got " + std::to_string(s.size()));
    }
    const double r = std::numbers::sqrt2 / 2.0;
    HaarCoeffs h;
    h.c.resize(s.size() / 2);
    h.d.resize(s.size() / 2);
    for (std::size_t i = 0; i < s.size() / 2; ++i) {
        h.c[i] = (s[2 * i] + s[2 * i + 1]) * r;
        h.d[i] = (s[2 * i] - s[2 * i + 1]) * r;
    }
    return h;
}

inline std::vector<double> haar_inverse(const HaarCoeffs &h) {
    if (h.c.size() != h.d.size()) {
        throw DimensionError("scaling and detail lengths differ");
    }
    const double r = std::numbers::sqrt2 / 2.0;
    std::vector<double> s(2 * h.c.size());
    for (std::size_t i = 0; i < h.c.size(); ++i) {
        s[2 * i] = (h.c[i] + h.d[i]) * r;
        s[2 * i + 1] = (h.c[i] - h.d[i]) * r;
    }
    return s;
}

inline void check_threshold(double t) {
    if (std::isnan(t) || t < 0.0) {
        throw PreconditionError("threshold must be >= 0 or infinite");
    }
}

/// Keeps d_i with |d_i| > t. t = infinity zeroes everything.
inline std::vector<double> hard_threshold(std::vector<double> d, double t) {
    check_threshold(t);
    for (double &v : d) {
        if (!(std::abs(v) > t)) {
            v = 0.0;
        }
    }
    return d;
}

namespace detail {

/// Haar-threshold the leading even part of `s` in place; an odd tail passes through.
inline void haar_denoise_line(std::span<double> s, double t) {
    const std::size_t even = s.size() - s.size() % 2;
    HaarCoeffs h = haar_forward(s.first(even));
    h.d = hard_threshold(std::move(h.d), t);
    const std::vector<double> back = haar_inverse(h);
    std::copy(back.begin(), back.end(), s.begin());
}

} // namespace detail

/// Rows first, then columns.
inline Image dwt_denoise_2d(const Image &f, double t) {
    check_threshold(t);
    const std::size_t n = f.size();
    if (n % 2 != 0) {
        throw DimensionError("2-D Haar denoising needs an even side, got " + std::to_string(n));
    }
    Image g = f;
    std::vector<double> line(n);
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            line[x] = g(x, y);
        }
        detail::haar_denoise_line(line, t);
        for (std::size_t x = 0; x < n; ++x) {
            g(x, y) = line[x];
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            line[y] = g(x, y);
        }
        detail::haar_denoise_line(line, t);
        for (std::size_t y = 0; y < n; ++y) {
            g(x, y) = line[y];
        }
    }
    return g;
}

/// PDRT, per-slope Haar thresholding along l, exact prime inverse.
/// For odd p the last intercept has no partner and is kept as is.
inline Image pdrt_denoise(const Image &f, double t) {
    check_threshold(t);
    const std::size_t p = f.size();
    if (!is_prime(p)) {
        throw PreconditionError("PDRT denoising needs a prime side, got " + std::to_string(p));
    }
    PdrtTable r = pdrt_fft(f);
    std::vector<double> line(p);
    for (std::size_t k = 0; k <= p; ++k) {
        for (std::size_t l = 0; l < p; ++l) {
            line[l] = r(k, l);
        }
        detail::haar_denoise_line(line, t);
        for (std::size_t l = 0; l < p; ++l) {
            r(k, l) = line[l];
        }
    }
    return pdrt_inverse_prime(r, p);
}

inline std::size_t next_prime(std::size_t n) {
    std::size_t p = std::max<std::size_t>(n, 2);
    while (!is_prime(p)) {
        ++p;
    }
    return p;
}

/// Zero-pads to the next prime side, runs pdrt_denoise and crops back.
inline Image pdrt_denoise_padded(const Image &f, double t) {
    const std::size_t n = f.size();
    const std::size_t p = next_prime(n);
    if (p == n) {
        return pdrt_denoise(f, t);
    }
    Image padded(p);
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            padded(x, y) = f(x, y);
        }
    }
    const Image out = pdrt_denoise(padded, t);
    Image cropped(n);
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            cropped(x, y) = out(x, y);
        }
    }
    return cropped;
}

/// Probability of outcome 0 after a Hadamard on the intercept LSB:
/// (1/2) sum_{l', k odd} |QR(2l', k) + QR(2l'+1, k)|^2.
inline double success_probability(const QrtTable &qr) {
    constexpr double kNormTolerance = 1e-6;
    const double energy = qr.sum_squares();
    if (std::abs(energy - 1.0) > kNormTolerance) {
        throw NormalizationError("table energy is " + format_double(energy) + ", expected 1");
    }
    double p = 0.0;
    for (std::size_t k = 1; k < qr.slope_count(); k += 2) {
        for (std::size_t l = 0; l + 1 < qr.intercept_count(); l += 2) {
            const double s = qr(k, l) + qr(k, l + 1);
            p += 0.5 * s * s;
        }
    }
    return p;
}

/// Replaces each intercept pair by its mean in both slots.
inline QrtTable pair_average(const QrtTable &qr) {
    QrtTable out = qr;
    for (std::size_t k = 0; k < qr.slope_count(); ++k) {
        for (std::size_t l = 0; l + 1 < qr.intercept_count(); l += 2) {
            const double m = 0.5 * (qr(k, l) + qr(k, l + 1));
            out(k, l) = m;
            out(k, l + 1) = m;
        }
    }
    return out;
}

struct QrtDenoiseResult {
    Image image;
    double success_probability = 0.0;
    /// Max deviation of the gate-level pipeline, when requested.
    std::optional<double> cross_check_error;
};

namespace detail {

/// Algorithm 1, Hadamard on the intercept LSB, postselect 0, Hadamard, reverse.
/// Returns the odd-odd amplitudes scaled by sqrt(p0) (the unnormalized projection).
inline Image qrt_denoise_gates(const QuantumImage &f) {
    const std::size_t n = f.size();
    const Algorithm1Layout lay = algorithm1_layout(n);
    StateVector s = run_algorithm1(f);
    s.hadamard(lay.i.qubit(0));
    const Measurement m = s.measure(lay.i.qubit(0));
    if (!m.branch[0]) {
        return Image(n);
    }
    StateVector kept = collapse(m, 0);
    kept.hadamard(lay.i.qubit(0));
    reverse_algorithm1(kept, n);
    return embedded_image(kept, n).scaled(std::sqrt(m.probability[0]));
}

} // namespace detail

/// QRT, pair averaging along intercepts, inverse QRT. The image keeps its
/// original scale; the success probability refers to the normalized input.
inline QrtDenoiseResult qrt_denoise(const Image &f, bool cross_check = false) {
    const std::size_t n = f.size();
    if (!is_power_of_two(n) || n < 2) {
        throw SizeError("QRT denoising needs a power-of-two side, got " + std::to_string(n));
    }
    QrtDenoiseResult r;
    const QrtTable qr = qrt_fft(f);
    r.image = qrt_inverse(pair_average(qr));
    const double norm = f.norm();
    r.success_probability = norm > 0.0 ? success_probability(qr.scaled(1.0 / norm)) : 1.0;
    if (cross_check) {
        const Image gates = detail::qrt_denoise_gates(normalize(f)).scaled(norm);
        r.cross_check_error = max_abs_diff(gates, r.image);
    }
    return r;
}

struct DenoiseReport {
    std::string method;
    std::optional<double> threshold;
    std::optional<Snr> snr_before;
    std::optional<Snr> snr_after;
    std::optional<double> success_probability;
    std::optional<NoiseSpec> noise;

    static std::string snr_text(const Snr &s) { return s.is_infinite() ? "inf" : format_double(s.decibels()); }

    KeyValueBlock to_report() const {
        KeyValueBlock b;
        b.add("method", method);
        if (threshold) {
            b.add("threshold", std::isinf(*threshold) ? std::string("inf") : format_double(*threshold));
        }
        if (noise) {
            b.add("sigma", noise->sigma).add("epsilon", noise->epsilon).add("seed", noise->seed);
        }
        if (snr_before) {
            b.add("snr_before_db", snr_text(*snr_before));
        }
        if (snr_after) {
            b.add("snr_after_db", snr_text(*snr_after));
        }
        if (snr_before && snr_after && !snr_before->is_infinite() && !snr_after->is_infinite()) {
            b.add("snr_gain_db", snr_after->decibels() - snr_before->decibels());
        }
        if (success_probability) {
            b.add("success_probability", *success_probability);
        }
        return b;
    }
};

} // namespace qradon

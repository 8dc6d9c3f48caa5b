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
 * Images on the periodic lattice, noise, quality metrics and synthetic test
 * images. Pixel convention everywhere: f(x, y) with x the column index and
 * y the row index, origin top-left, storage row-major (`data[y * n + x]`).
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/rng.hpp"

namespace qradon {

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
constexpr unsigned log2_exact(std::size_t n) noexcept {
    unsigned m = 0;
    while ((std::size_t{1} << m) < n) {
        ++m;
    }
    return m;
}

constexpr bool is_prime(std::size_t n) noexcept {
    if (n < 2) {
        return false;
    }
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

/// Non-negative remainder.
constexpr std::int64_t wrap(std::int64_t v, std::int64_t n) noexcept {
    const std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

/// Real-valued n x n grid, the f(x, y) of the transforms.
class Image {
  public:
    Image() = default;

    explicit Image(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {
        if (n == 0) {
            throw DimensionError("image side must be positive");
        }
    }

    Image(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {
        if (n == 0) {
            throw DimensionError("image side must be positive");
        }
        if (data_.size() != n * n) {
            throw DimensionError("image of side " + std::to_string(n) + " needs " +
                                 std::to_string(n * n) + " values, got " +
                                 std::to_string(data_.size()));
        }
        for (double v : data_) {
            if (!std::isfinite(v)) {
                throw DimensionError("image entries must be finite");
            }
        }
    }

    /// Rows listed top to bottom (one inner list per y).
    static Image from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const std::size_t n = rows.size();
        std::vector<double> data;
        data.reserve(n * n);
        for (const auto &row : rows) {
            if (row.size() != n) {
                throw DimensionError("rows must form a square grid");
            }
            data.insert(data.end(), row.begin(), row.end());
        }
        return Image(n, std::move(data));
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t pixel_count() const noexcept { return data_.size(); }

    double &operator()(std::size_t x, std::size_t y) noexcept { return data_[y * n_ + x]; }
    double operator()(std::size_t x, std::size_t y) const noexcept { return data_[y * n_ + x]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    double sum() const noexcept {
        double s = 0.0;
        for (double v : data_) {
            s += v;
        }
        return s;
    }

    double sum_squares() const noexcept {
        double s = 0.0;
        for (double v : data_) {
            s += v * v;
        }
        return s;
    }

    double norm() const noexcept { return std::sqrt(sum_squares()); }

    Image scaled(double alpha) const {
        Image out = *this;
        for (double &v : out.data_) {
            v *= alpha;
        }
        return out;
    }

    friend Image operator+(const Image &a, const Image &b) { return combine(a, b, 1.0); }
    friend Image operator-(const Image &a, const Image &b) { return combine(a, b, -1.0); }
    friend bool operator==(const Image &, const Image &) = default;

  private:
    static Image combine(const Image &a, const Image &b, double sign) {
        if (a.n_ != b.n_) {
            throw DimensionError("image sides differ: " + std::to_string(a.n_) + " vs " +
                                 std::to_string(b.n_));
        }
        Image out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) {
            out.data_[i] += sign * b.data_[i];
        }
        return out;
    }

    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Largest absolute pixel difference.
inline double max_abs_diff(const Image &a, const Image &b) {
    if (a.size() != b.size()) {
        throw DimensionError("image sides differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

/// Unit-norm image on a power-of-two lattice: the amplitude view of an image.
class QuantumImage {
  public:
    static constexpr double kNormTolerance = 1e-12;

    /// Wraps amplitudes that are already normalized.
    explicit QuantumImage(Image amplitudes) : amplitudes_(std::move(amplitudes)) {
        if (!is_power_of_two(amplitudes_.size()) || amplitudes_.size() < 2) {
            throw SizeError("quantum image side must be a power of two >= 2, got " +
                            std::to_string(amplitudes_.size()));
        }
        if (std::abs(amplitudes_.sum_squares() - 1.0) > kNormTolerance) {
            throw NormalizationError("quantum image amplitudes are not normalized");
        }
    }

    std::size_t size() const noexcept { return amplitudes_.size(); }
    const Image &amplitudes() const noexcept { return amplitudes_; }
    double operator()(std::size_t x, std::size_t y) const noexcept { return amplitudes_(x, y); }

  private:
    Image amplitudes_;
};

/// amplitudes = f / ||f||_2.
inline QuantumImage normalize(const Image &f) {
    if (!is_power_of_two(f.size()) || f.size() < 2) {
        throw SizeError("normalize needs a power-of-two side, got " + std::to_string(f.size()));
    }
    const double norm = f.norm();
    if (norm == 0.0) {
        throw NormalizationError("cannot normalize an all-zero image");
    }
    Image out = f.scaled(1.0 / norm);
    // Absorb the last-ulp drift of the division so the unit-norm check is exact.
    const double residual = out.norm();
    if (residual != 1.0) {
        out = out.scaled(1.0 / residual);
    }
    return QuantumImage(std::move(out));
}

struct NoiseSpec {
    double sigma = 1.0;
    double epsilon = 1.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(sigma > 0.0) || !std::isfinite(sigma)) {
            throw PreconditionError("noise sigma must be positive");
        }
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
            throw PreconditionError("noise epsilon must be non-negative");
        }
    }
};

/// h = f + epsilon * e with e i.i.d. Normal(0, sigma^2), deterministic in the seed.
inline Image add_gaussian_noise(const Image &f, const NoiseSpec &spec) {
    spec.validate();
    Rng rng(spec.seed);
    Image h = f;
    for (double &v : h.data()) {
        v += spec.epsilon * rng.normal(0.0, spec.sigma);
    }
    return h;
}

/// Result of the SNR formula; the h == f case has no finite value.
class Snr {
  public:
    static Snr infinite() { return Snr(std::nullopt); }
    static Snr finite(double db) { return Snr(db); }

    bool is_infinite() const noexcept { return !db_.has_value(); }

    double decibels() const {
        if (!db_) {
            throw ConsistencyError("SNR is infinite (signal equals reference)");
        }
        return *db_;
    }

  private:
    explicit Snr(std::optional<double> db) : db_(db) {}
    std::optional<double> db_;
};

/// 10 log10(||h||^2 / ||h - f||^2). The numerator is ||h||^2, not the more
/// common ||f||^2.
inline Snr snr(const Image &h, const Image &f) {
    const double err = (h - f).sum_squares();
    if (err == 0.0) {
        return Snr::infinite();
    }
    return Snr::finite(10.0 * std::log10(h.sum_squares() / err));
}

struct RiskEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t trials = 0;
    /// Risk is divided by the vector length, i.e. the pixel count.
    static constexpr const char *kConvention = "risk = E||h - f||^2 / pixel_count";
};

using Denoiser = std::function<Image(const Image &)>;

/// Monte-Carlo (1/n) E||denoiser(f + noise) - f||^2. Trial t uses the noise
/// seed Rng(spec.seed).split(t).
inline RiskEstimate empirical_risk(const Image &f, const NoiseSpec &spec, const Denoiser &denoiser,
                                   std::size_t trials) {
    spec.validate();
    if (trials < 1) {
        throw PreconditionError("empirical_risk needs at least one trial");
    }
    const Rng root(spec.seed);
    const auto n = static_cast<double>(f.pixel_count());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        NoiseSpec trial_spec = spec;
        trial_spec.seed = root.split(t).seed();
        const Image h = add_gaussian_noise(f, trial_spec);
        Image out;
        try {
            out = denoiser(h);
        } catch (const std::exception &e) {
            throw Error("denoiser failed on trial " + std::to_string(t) + ": " + e.what());
        }
        const double r = (out - f).sum_squares() / n;
        sum += r;
        sum_sq += r * r;
    }
    const auto k = static_cast<double>(trials);
    RiskEstimate est;
    est.trials = trials;
    est.mean = sum / k;
    if (trials > 1) {
        const double var = std::max(0.0, (sum_sq - k * est.mean * est.mean) / (k - 1.0));
        est.standard_error = std::sqrt(var / k);
    }
    return est;
}

enum class TestImageKind { half_plane_gaussian, line_segment, random_uniform, solids };

struct TestImageParams {
    /// Gaussian width s; defaults to n / 8.
    std::optional<double> width;
    /// Segment endpoints (x0, y0) -> (x1, y1).
    std::array<int, 4> segment{228, 53, 97, 217};
};

namespace detail {

inline void rasterize_segment(Image &img, int x0, int y0, int x1, int y1) {
    const int dx = x1 - x0;
    const int dy = y1 - y0;
    const int steps = std::max(std::abs(dx), std::abs(dy));
    if (steps == 0) {
        img(static_cast<std::size_t>(x0), static_cast<std::size_t>(y0)) = 1.0;
        return;
    }
    for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        const auto x = static_cast<std::size_t>(std::lround(x0 + t * dx));
        const auto y = static_cast<std::size_t>(std::lround(y0 + t * dy));
        img(x, y) = 1.0;
    }
}

/// Point-in-convex-polygon test (vertices in either orientation).
inline bool inside_convex(double px, double py, std::span<const std::pair<double, double>> poly) {
    int sign = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto [ax, ay] = poly[i];
        const auto [bx, by] = poly[(i + 1) % poly.size()];
        const double cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
        if (cross == 0.0) {
            continue;
        }
        const int s = cross > 0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            return false;
        }
    }
    return true;
}

} // namespace detail

inline Image make_test_image(TestImageKind kind, std::size_t n, const TestImageParams &params = {},
                             std::uint64_t seed = 0) {
    if (!is_power_of_two(n)) {
        throw SizeError("test images need a power-of-two side, got " + std::to_string(n));
    }
    Image img(n);
    const double c = static_cast<double>(n) / 2.0;
    switch (kind) {
    case TestImageKind::half_plane_gaussian: {
        const double s = params.width.value_or(static_cast<double>(n) / 8.0);
        if (!(s > 0.0)) {
            throw PreconditionError("gaussian width must be positive");
        }
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t x = 0; x < n; ++x) {
                if (x > y) {
                    const double dx = static_cast<double>(x) - c;
                    const double dy = static_cast<double>(y) - c;
                    img(x, y) = std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
                }
            }
        }
        break;
    }
    case TestImageKind::line_segment: {
        const auto &p = params.segment;
        for (int v : p) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                throw PreconditionError("segment endpoint outside the image");
            }
        }
        detail::rasterize_segment(img, p[0], p[1], p[2], p[3]);
        break;
    }
    case TestImageKind::random_uniform: {
        Rng rng(seed);
        for (double &v : img.data()) {
            v = rng.uniform();
        }
        break;
    }
    case TestImageKind::solids: {
        // Flat-shaded convex shapes with straight edges, in fractions of n.
        struct Shape {
            std::vector<std::pair<double, double>> poly;
            double value;
        };
        const std::vector<Shape> shapes = {
            {{{0.10, 0.10}, {0.45, 0.10}, {0.45, 0.40}, {0.10, 0.40}}, 0.8},
            {{{0.60, 0.12}, {0.90, 0.45}, {0.55, 0.45}}, 1.0},
            {{{0.30, 0.55}, {0.50, 0.75}, {0.30, 0.95}, {0.10, 0.75}}, 0.6},
            {{{0.60, 0.60}, {0.92, 0.66}, {0.86, 0.92}, {0.56, 0.86}}, 0.4},
        };
        const auto nd = static_cast<double>(n);
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t x = 0; x < n; ++x) {
                const double px = (static_cast<double>(x) + 0.5) / nd;
                const double py = (static_cast<double>(y) + 0.5) / nd;
                for (const auto &shape : shapes) {
                    if (detail::inside_convex(px, py, shape.poly)) {
                        img(x, y) = shape.value;
                    }
                }
            }
        }
        break;
    }
    }
    return img;
}

} // namespace qradon

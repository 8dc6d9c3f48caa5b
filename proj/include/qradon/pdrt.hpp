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
 * Periodic discrete Radon transform (finite Radon transform) on Z_n^2.
 *
 *     r_k(l) = n^{-1/2} sum_{(x, y) on L(n, l, k)} f(x, y),  l in [n], k in [n + 1]
 *
 * where L(n, l, k) = {(x, y) : x + k y = l (mod n)} for k < n, and the row
 * y = l for k = n. The slope index multiplies y.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/fourier.hpp"
#include "qradon/grid.hpp"
#include "qradon/radon_table.hpp"

namespace qradon {

using PdrtTable = RadonTable<PdrtLayout>;

/// The n-point wrapped lattice line with intercept l and slope index k.
class DiscreteLine {
  public:
    DiscreteLine(std::size_t n, std::size_t l, std::size_t k) : n_(n), l_(l), k_(k) {
        if (n == 0) {
            throw PreconditionError("lattice size must be positive");
        }
        if (l >= n) {
            throw PreconditionError("intercept " + std::to_string(l) + " outside [0, " +
                                    std::to_string(n) + ")");
        }
        if (k > n) {
            throw PreconditionError("slope index " + std::to_string(k) + " outside [0, " +
                                    std::to_string(n + 1) + ")");
        }
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t intercept() const noexcept { return l_; }
    std::size_t slope() const noexcept { return k_; }
    bool is_row() const noexcept { return k_ == n_; }

    bool contains(std::size_t x, std::size_t y) const noexcept {
        if (x >= n_ || y >= n_) {
            return false;
        }
        if (is_row()) {
            return y == l_;
        }
        return (x + (k_ * y) % n_) % n_ == l_;
    }

    /// Points ordered by y for k < n, by x for the row family.
    std::vector<std::pair<std::size_t, std::size_t>> points() const {
        std::vector<std::pair<std::size_t, std::size_t>> pts;
        pts.reserve(n_);
        const auto n = static_cast<std::int64_t>(n_);
        for (std::int64_t t = 0; t < n; ++t) {
            if (is_row()) {
                pts.emplace_back(static_cast<std::size_t>(t), l_);
            } else {
                const auto x = wrap(static_cast<std::int64_t>(l_) -
                                        static_cast<std::int64_t>(k_) * t,
                                    n);
                pts.emplace_back(static_cast<std::size_t>(x), static_cast<std::size_t>(t));
            }
        }
        return pts;
    }

  private:
    std::size_t n_;
    std::size_t l_;
    std::size_t k_;
};

inline std::vector<std::pair<std::size_t, std::size_t>> line_points(std::size_t n, std::size_t l,
                                                                    std::size_t k) {
    return DiscreteLine(n, l, k).points();
}

/// O(n^3) direct summation over every line.
inline PdrtTable pdrt_naive(const Image &f) {
    const std::size_t n = f.size();
    PdrtTable r(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            // Walk x = l - k*y (mod n) incrementally.
            std::size_t x = l;
            double acc = 0.0;
            for (std::size_t y = 0; y < n; ++y) {
                acc += f(x, y);
                x = x >= k ? x - k : x + n - k;
            }
            r(k, l) = acc * scale;
        }
    }
    for (std::size_t l = 0; l < n; ++l) {
        double acc = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            acc += f(x, l);
        }
        r(n, l) = acc * scale;
    }
    return r;
}

/// Fourier-slice evaluation: every slope is the inverse 1-D transform of the
/// 2-D spectrum sampled along (w, k w mod n), or (0, w) for k = n.
inline PdrtTable pdrt_fft(const Image &f) {
    const std::size_t n = f.size();
    ComplexGrid spectrum = ComplexGrid::from_image(f);
    fourier_2d(spectrum, FourierDirection::forward);

    PdrtTable r(n);
    std::vector<Complex> slice(n);
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t w = 0; w < n; ++w) {
            slice[w] = k == n ? spectrum(0, w) : spectrum(w, (k * w) % n);
        }
        fourier_1d(slice, FourierDirection::inverse);
        for (std::size_t l = 0; l < n; ++l) {
            r(k, l) = slice[l].real();
        }
    }
    return r;
}

/// Exact inverse on a prime lattice: every point lies on exactly one line of
/// each of the p + 1 slope families, so
///     f(i, j) = p^{-1/2} sum_{k in [p+1]} r_k(l_k(i, j)) - S / p,
/// with the total mass S = sqrt(p) sum_l r_0(l).
inline Image pdrt_inverse_prime(const PdrtTable &r, std::size_t p) {
    if (!is_prime(p)) {
        throw PreconditionError("pdrt_inverse_prime requires a prime lattice size, got " +
                                std::to_string(p));
    }
    if (r.n() != p) {
        throw DimensionError("table was computed on Z_" + std::to_string(r.n()) +
                             ", expected Z_" + std::to_string(p));
    }
    const double root = std::sqrt(static_cast<double>(p));
    double total = 0.0;
    for (std::size_t l = 0; l < p; ++l) {
        total += r(0, l);
    }
    total *= root;

    Image f(p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < p; ++i) {
            double acc = r(p, j);
            for (std::size_t k = 0; k < p; ++k) {
                acc += r(k, (i + k * j) % p);
            }
            f(i, j) = acc / root - total / static_cast<double>(p);
        }
    }
    return f;
}

} // namespace qradon

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
 * Unitary discrete Fourier transforms.
 *
 * forward:  X(w) = n^{-1/2} sum_t x(t) exp(-2 pi i w t / n)
 * inverse:  x(t) = n^{-1/2} sum_w X(w) exp(+2 pi i w t / n)
 *
 * The 2-D transform is the separable product of the two 1-D transforms, hence
 * carries the overall 1/n factor. Power-of-two lengths run through an
 * iterative radix-2 FFT; other lengths fall back to the O(n^2) direct sum.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "qradon/grid.hpp"

namespace qradon {

using Complex = std::complex<double>;

enum class FourierDirection { forward, inverse };

namespace detail {

inline double kernel_sign(FourierDirection dir) { return dir == FourierDirection::forward ? -1.0 : 1.0; }

/// Unscaled in-place radix-2 FFT; data.size() must be a power of two.
inline void fft_radix2(std::span<Complex> data, double sign) {
    const std::size_t n = data.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(data[i], data[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::size_t half = len / 2;
        std::vector<Complex> twiddle(half);
        for (std::size_t k = 0; k < half; ++k) {
            twiddle[k] = std::polar(1.0, angle * static_cast<double>(k));
        }
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex u = data[start + k];
                const Complex v = data[start + k + half] * twiddle[k];
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
}

/// Unscaled direct DFT.
inline void dft_direct(std::span<Complex> data, double sign) {
    const std::size_t n = data.size();
    std::vector<Complex> out(n);
    const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t w = 0; w < n; ++w) {
        Complex acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            // Reduce w * t mod n first so the phase stays accurate for large n.
            acc += data[t] * std::polar(1.0, base * static_cast<double>((w * t) % n));
        }
        out[w] = acc;
    }
    std::copy(out.begin(), out.end(), data.begin());
}

} // namespace detail

/// In-place unitary 1-D transform.
inline void fourier_1d(std::span<Complex> data, FourierDirection dir) {
    const std::size_t n = data.size();
    if (n == 0) {
        return;
    }
    const double sign = detail::kernel_sign(dir);
    if (is_power_of_two(n)) {
        detail::fft_radix2(data, sign);
    } else {
        detail::dft_direct(data, sign);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Complex &c : data) {
        c *= scale;
    }
}

/// Square complex grid indexed (u, v) -> data[v * n + u], matching Image.
class ComplexGrid {
  public:
    ComplexGrid() = default;
    explicit ComplexGrid(std::size_t n) : n_(n), data_(n * n) {}

    static ComplexGrid from_image(const Image &f) {
        ComplexGrid g(f.size());
        for (std::size_t i = 0; i < f.pixel_count(); ++i) {
            g.data_[i] = f.data()[i];
        }
        return g;
    }

    std::size_t size() const noexcept { return n_; }
    Complex &operator()(std::size_t u, std::size_t v) noexcept { return data_[v * n_ + u]; }
    const Complex &operator()(std::size_t u, std::size_t v) const noexcept { return data_[v * n_ + u]; }
    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

  private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// In-place unitary 2-D transform (rows, then columns).
inline void fourier_2d(ComplexGrid &grid, FourierDirection dir) {
    const std::size_t n = grid.size();
    for (std::size_t v = 0; v < n; ++v) {
        fourier_1d(grid.data().subspan(v * n, n), dir);
    }
    std::vector<Complex> column(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            column[v] = grid(u, v);
        }
        fourier_1d(column, dir);
        for (std::size_t v = 0; v < n; ++v) {
            grid(u, v) = column[v];
        }
    }
}

} // namespace qradon

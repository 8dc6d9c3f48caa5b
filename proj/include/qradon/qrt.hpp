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
 * Quantum Radon transform, evaluated classically.
 *
 * An n x n image f is extended to the sign-alternating 2n x 2n grid
 *
 *     g(x', y') = (1/2) (-1)^{floor(x'/n) + floor(y'/n)} f(x' mod n, y' mod n)
 *
 * and the transform is the periodic DRT of g on Z_{2n}^2 (slopes k in [2n]):
 *
 *     QR(l, k) = (2n)^{-1/2} sum_{x' + k y' = l mod 2n} g(x', y').
 *
 * Tables store QR(l, k) at `table(k, l)`. Even slopes vanish identically and
 * the map f -> QR preserves the Euclidean norm.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/fourier.hpp"
#include "qradon/grid.hpp"
#include "qradon/modular.hpp"
#include "qradon/radon_table.hpp"

namespace qradon {

using QrtTable = RadonTable<QrtLayout>;

/// The 2n x 2n sign-alternating extension of an n x n image.
class ExtendedImage {
  public:
    explicit ExtendedImage(const Image &f) : n_(f.size()), data_(2 * f.size()) {
        const std::size_t m = 2 * n_;
        for (std::size_t y = 0; y < m; ++y) {
            for (std::size_t x = 0; x < m; ++x) {
                const bool flip = ((x / n_) + (y / n_)) % 2 == 1;
                const double v = 0.5 * f(x % n_, y % n_);
                data_(x, y) = flip ? -v : v;
            }
        }
    }

    /// Side of the original image.
    std::size_t n() const noexcept { return n_; }
    double operator()(std::size_t x, std::size_t y) const noexcept { return data_(x, y); }
    const Image &grid() const noexcept { return data_; }

  private:
    std::size_t n_;
    Image data_;
};

inline ExtendedImage extend_image(const Image &f) { return ExtendedImage(f); }

/// Direct summation over every line of Z_{2n}^2; valid for any n.
inline QrtTable qrt_direct(const Image &f) {
    const ExtendedImage ext(f);
    const std::size_t m = 2 * f.size();
    QrtTable qr(f.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) {
            std::size_t x = l;
            double acc = 0.0;
            for (std::size_t y = 0; y < m; ++y) {
                acc += ext(x, y);
                x = x >= k ? x - k : x + m - k;
            }
            qr(k, l) = acc * scale;
        }
    }
    return qr;
}

/// Fourier-slice evaluation: QR(., k) is the inverse 1-D transform of the 2-D
/// spectrum of the extension sampled along (i, i k mod 2n).
inline QrtTable qrt_fft(const Image &f) {
    const std::size_t n = f.size();
    if (!is_power_of_two(n)) {
        throw SizeError("qrt_fft needs a power-of-two side, got " + std::to_string(n));
    }
    const std::size_t m = 2 * n;
    const ExtendedImage ext(f);
    ComplexGrid spectrum = ComplexGrid::from_image(ext.grid());
    fourier_2d(spectrum, FourierDirection::forward);

    QrtTable qr(n);
    std::vector<Complex> slice(m);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            slice[i] = spectrum(i, (i * k) % m);
        }
        fourier_1d(slice, FourierDirection::inverse);
        for (std::size_t l = 0; l < m; ++l) {
            qr(k, l) = slice[l].real();
        }
    }
    return qr;
}

inline QrtTable qrt_fft(const QuantumImage &f) { return qrt_fft(f.amplitudes()); }

/// Energy carried by even slopes; zero for any table produced by a transform.
inline double even_slope_energy(const QrtTable &qr) {
    double e = 0.0;
    for (std::size_t k = 0; k < qr.slope_count(); k += 2) {
        for (std::size_t l = 0; l < qr.intercept_count(); ++l) {
            e += qr(k, l) * qr(k, l);
        }
    }
    return e;
}

/// Inverse transform.
///
/// The forward 1-D transform along l gives the spectrum S(i, i k) of the
/// extension. Only odd i carry image content, and for odd i the map
/// k -> i k mod 2n is a bijection, so the odd-odd subgrid S(2a+1, 2b+1) is
/// recovered completely. That subgrid is the n x n spectrum of
/// f(x, y) exp(-2 pi i (x + y) / 2n); an n-point inverse transform and the
/// conjugate phase give f. Content at even i is discarded.
inline Image qrt_inverse(const QrtTable &qr) {
    constexpr double kEvenSlopeTolerance = 1e-6;
    const double even = even_slope_energy(qr);
    if (even > kEvenSlopeTolerance) {
        throw ConsistencyError("table has energy " + std::to_string(even) +
                               " on even slopes; not a quantum Radon transform");
    }
    const std::size_t n = qr.n();
    const std::size_t m = 2 * n;
    const unsigned bits = log2_exact(m);
    if (!is_power_of_two(n)) {
        throw SizeError("qrt_inverse needs a power-of-two side, got " + std::to_string(n));
    }

    // columns[k][i] = forward 1-D transform of QR(., k) at frequency i.
    std::vector<std::vector<Complex>> columns(m, std::vector<Complex>(m));
    for (std::size_t k = 1; k < m; k += 2) {
        for (std::size_t l = 0; l < m; ++l) {
            columns[k][l] = qr(k, l);
        }
        fourier_1d(columns[k], FourierDirection::forward);
    }

    ComplexGrid reduced(n);
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t i = 2 * a + 1;
        const std::uint64_t inv = inverse_mod_pow2(i, bits);
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t k = static_cast<std::size_t>((inv * (2 * b + 1)) % m);
            reduced(a, b) = columns[k][i];
        }
    }
    fourier_2d(reduced, FourierDirection::inverse);

    Image f(n);
    const double base = std::numbers::pi / static_cast<double>(n);
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            const Complex phase = std::polar(1.0, base * static_cast<double>(x + y));
            f(x, y) = (reduced(x, y) * phase).real();
        }
    }
    return f;
}

} // namespace qradon

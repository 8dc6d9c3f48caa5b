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
 * Cross-verification of independent implementations on one seeded image.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qradon/denoise.hpp"
#include "qradon/grid.hpp"
#include "qradon/pdrt.hpp"
#include "qradon/qrt.hpp"
#include "qradon/qsim.hpp"
#include "qradon/report.hpp"
#include "qradon/reversible.hpp"
#include "qradon/rng.hpp"
#include "qradon/sidrt.hpp"

namespace qradon {

struct CheckItem {
    std::string name;
    double error = 0.0;
    double tolerance = 0.0;

    bool passed() const { return std::isfinite(error) && error <= tolerance; }
};

struct CheckSuite {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<CheckItem> items;

    bool all_passed() const {
        return std::all_of(items.begin(), items.end(), [](const CheckItem &c) { return c.passed(); });
    }

    KeyValueBlock to_report() const {
        KeyValueBlock b;
        b.add("n", static_cast<std::uint64_t>(n)).add("seed", seed);
        for (const CheckItem &c : items) {
            b.add("check." + c.name + ".error", c.error);
            b.add("check." + c.name + ".passed", c.passed());
        }
        b.add("all_passed", all_passed());
        return b;
    }
};

namespace detail {

inline Image signed_random_image(std::size_t n, std::uint64_t seed) {
    Image f(n);
    Rng rng(seed);
    for (double &v : f.data()) {
        v = rng.uniform(-1.0, 1.0);
    }
    return f;
}

/// Largest gap between the 1-D DFT of each projection and the matching slice
/// of the image spectrum.
inline double pdrt_slice_error(const Image &f, const PdrtTable &r) {
    const std::size_t n = f.size();
    const double tau = 2.0 * std::numbers::pi / static_cast<double>(n);
    double worst = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t w = 0; w < n; ++w) {
            Complex lhs = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                lhs += r(k, l) * std::polar(1.0, -tau * static_cast<double>((w * l) % n));
            }
            // Slice of F(u, v): u = w, v = k w for k < n; u = 0, v = w for k = n.
            const std::size_t u = k < n ? w : 0;
            const std::size_t v = k < n ? (k * w) % n : w;
            Complex rhs = 0.0;
            for (std::size_t y = 0; y < n; ++y) {
                for (std::size_t x = 0; x < n; ++x) {
                    rhs += f(x, y) * std::polar(1.0, -tau * static_cast<double>((u * x + v * y) % n));
                }
            }
            rhs /= std::sqrt(static_cast<double>(n));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

} // namespace detail

/// Runs every pairwise comparison that is feasible at side `n` (a power of
/// two in [2, 64]).
inline CheckSuite run_checks(std::size_t n, std::uint64_t seed) {
    if (!is_power_of_two(n) || n < 2 || n > 64) {
        throw SizeError("check needs a power-of-two side in [2, 64], got " + std::to_string(n));
    }
    CheckSuite suite;
    suite.n = n;
    suite.seed = seed;
    const Rng root(seed);
    const Image f = detail::signed_random_image(n, root.split(0).seed());
    auto add = [&](std::string name, double error, double tol = 1e-9) {
        suite.items.push_back({std::move(name), error, tol});
    };

    const PdrtTable rn = pdrt_naive(f);
    const PdrtTable rf = pdrt_fft(f);
    add("pdrt_naive_vs_fft", max_abs_diff(rn, rf));
    if (n <= 16) {
        add("pdrt_fourier_slice", detail::pdrt_slice_error(f, rf));
    }

    const std::size_t p = next_prime(n + 1);
    const Image g = detail::signed_random_image(p, root.split(1).seed());
    add("pdrt_prime_round_trip", max_abs_diff(pdrt_inverse_prime(pdrt_naive(g), p), g));

    const QrtTable qd = qrt_direct(f);
    const QrtTable qf = qrt_fft(f);
    add("qrt_direct_vs_fft", max_abs_diff(qd, qf));
    add("qrt_even_slope_energy", even_slope_energy(qf));
    add("qrt_energy", std::abs(qf.sum_squares() - f.norm() * f.norm()));
    add("qrt_round_trip", max_abs_diff(qrt_inverse(qf), f));

    const QuantumImage qf_image = normalize(f);
    const double norm = f.norm();
    for (MultiplierKind kind : {MultiplierKind::direct, MultiplierKind::recursive}) {
        const std::string tag = kind == MultiplierKind::direct ? "direct" : "recursive";
        StateVector s = run_algorithm1(qf_image, kind);
        add("qrt_circuit_" + tag + "_vs_table", max_abs_diff(algorithm1_table(s, n).scaled(norm), qd));
        reverse_algorithm1(s, n, kind);
        add("qrt_circuit_" + tag + "_reverse", max_abs_diff(embedded_image(s, n), qf_image.amplitudes()));
    }

    const unsigned k = std::min<unsigned>(static_cast<unsigned>(algorithm1_layout(n).m + 1), 6U);
    const ReversibleCircuit direct = mul_direct(k);
    const ReversibleCircuit recursive = mul_recursive(k);
    double mismatches = 0.0;
    // The circuit only multiplies by odd values; even ones are outside the contract.
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << k); a += 2) {
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << k); ++b) {
            const std::uint64_t w = a | (b << k);
            mismatches += direct.map(w) != recursive.map(w) ? 1.0 : 0.0;
        }
    }
    add("multiplier_recursive_vs_direct", mismatches, 0.0);

    const QrtDenoiseResult dn = qrt_denoise(f, true);
    add("qrt_denoise_circuit", *dn.cross_check_error);

    if (n >= 4 && n <= 16) {
        const SidrtTable table = sidrt(qf_image.amplitudes());
        const StateVector img = image_state(qf_image);
        double worst = 0.0;
        for (std::size_t theta = 0; theta < n; ++theta) {
            for (std::size_t l = 0; l < n; ++l) {
                const double ip = std::numbers::sqrt2 * inner_product(location_state(theta, l, n), img).real();
                worst = std::max(worst, std::abs(ip - table(theta, l)));
            }
        }
        add("sidrt_overlap_identity", worst);
    }
    return suite;
}

} // namespace qradon

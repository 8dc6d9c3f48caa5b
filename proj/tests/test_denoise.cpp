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

#include "qradon/denoise.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace qradon;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Image crop(const Image &f, std::size_t x0, std::size_t y0, std::size_t side) {
    Image out(side);
    for (std::size_t y = 0; y < side; ++y) {
        for (std::size_t x = 0; x < side; ++x) {
            out(x, y) = f(x0 + x, y0 + y);
        }
    }
    return out;
}

} // namespace

TEST(denoise, haar_examples) {
    const HaarCoeffs ones = haar_forward(std::vector<double>{1.0, 1.0});
    EXPECT_DOUBLE_EQ(ones.c[0], std::sqrt(2.0));
    EXPECT_EQ(ones.d[0], 0.0);
    const HaarCoeffs step = haar_forward(std::vector<double>{1.0, 0.0});
    EXPECT_DOUBLE_EQ(step.c[0], 1.0 / std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(step.d[0], 1.0 / std::sqrt(2.0));
    EXPECT_THROW(haar_forward(std::vector<double>{1.0, 2.0, 3.0}), DimensionError);
}

TEST(denoise, haar_round_trip_and_energy) {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    std::vector<double> x(16);
    double e = 0.0;
    for (double &v : x) {
        v = nd(gen);
        e += v * v;
    }
    const HaarCoeffs h = haar_forward(x);
    double eh = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        eh += h.c[i] * h.c[i] + h.d[i] * h.d[i];
    }
    EXPECT_NEAR(eh, e, 1e-10);
    const std::vector<double> back = haar_inverse(h);
    for (std::size_t i = 0; i < 16; ++i) {
        EXPECT_NEAR(back[i], x[i], 1e-12);
    }
}

TEST(denoise, hard_threshold_examples) {
    EXPECT_EQ(hard_threshold({3.0, -1.0, 0.5}, 1.0), (std::vector<double>{3.0, 0.0, 0.0}));
    EXPECT_EQ(hard_threshold({3.0, -1.0, 0.5}, 0.0), (std::vector<double>{3.0, -1.0, 0.5}));
    EXPECT_EQ(hard_threshold({3.0, -1e300, 0.5}, kInf), (std::vector<double>{0.0, 0.0, 0.0}));
    EXPECT_THROW(hard_threshold({1.0}, -1.0), PreconditionError);
    EXPECT_THROW(hard_threshold({1.0}, NAN), PreconditionError);
}

TEST(denoise, dwt_fixed_points) {
    const Image flat(8, 0.3);
    for (double t : {0.0, 0.5, kInf}) {
        EXPECT_LT(max_abs_diff(dwt_denoise_2d(flat, t), flat), 1e-15);
    }
    const Image f = fixtures::random_signed_image(8, 2);
    EXPECT_LT(max_abs_diff(dwt_denoise_2d(f, 0.0), f), 1e-12);
    EXPECT_THROW(dwt_denoise_2d(Image(7), 1.0), DimensionError);
}

TEST(denoise, dwt_full_threshold_quarters_noise_risk) {
    // Each pass keeps the pair means, halving the per-pixel noise variance.
    const Image f(16, 0.5);
    const NoiseSpec spec{0.2, 1.0, 17};
    const auto noisy = empirical_risk(f, spec, [](const Image &h) { return h; }, 100);
    const auto dwt = empirical_risk(f, spec, [](const Image &h) { return dwt_denoise_2d(h, kInf); }, 100);
    EXPECT_NEAR(dwt.mean / noisy.mean, 0.25, 0.02);
}

TEST(denoise, pdrt_denoise_fixed_points) {
    for (std::size_t p : {7U, 11U}) {
        const Image f = fixtures::random_signed_image(p, p);
        EXPECT_LT(max_abs_diff(pdrt_denoise(f, 0.0), f), 1e-9);
    }
    const Image flat(11, 0.7);
    EXPECT_LT(max_abs_diff(pdrt_denoise(flat, kInf), flat), 1e-12);
    EXPECT_THROW(pdrt_denoise(Image(8), 1.0), PreconditionError);
}

TEST(denoise, pdrt_denoise_improves_noisy_half_plane) {
    const Image clean = crop(make_test_image(TestImageKind::half_plane_gaussian, 256), 64, 64, 127);
    const double sigma = 0.04;
    const Image noisy = add_gaussian_noise(clean, {sigma, 1.0, 5});
    const Image out = pdrt_denoise(noisy, 3.0 * sigma);
    EXPECT_GT(snr(out, clean).decibels(), snr(noisy, clean).decibels());
}

TEST(denoise, padded_pdrt_matches_unpadded_on_primes) {
    EXPECT_EQ(next_prime(256), 257U);
    EXPECT_EQ(next_prime(13), 13U);
    const Image f = fixtures::random_signed_image(13, 1);
    EXPECT_EQ(pdrt_denoise_padded(f, 0.1), pdrt_denoise(f, 0.1));
    const Image g = fixtures::random_signed_image(16, 1);
    EXPECT_LT(max_abs_diff(pdrt_denoise_padded(g, 0.0), g), 1e-9);
}

TEST(denoise, success_probability_extremes) {
    QrtTable flat(4);
    for (std::size_t k = 1; k < 8; k += 2) {
        for (std::size_t l = 0; l < 8; ++l) {
            flat(k, l) = 1.0 / std::sqrt(32.0);
        }
    }
    ASSERT_NEAR(flat.sum_squares(), 1.0, 1e-15);
    EXPECT_NEAR(success_probability(flat), 1.0, 1e-15);

    QrtTable alternating(4);
    for (std::size_t k = 1; k < 8; k += 2) {
        for (std::size_t l = 0; l < 8; ++l) {
            alternating(k, l) = (l % 2 == 0 ? 1.0 : -1.0) / std::sqrt(32.0);
        }
    }
    EXPECT_NEAR(success_probability(alternating), 0.0, 1e-15);
    EXPECT_THROW(success_probability(flat.scaled(2.0)), NormalizationError);
}

TEST(denoise, success_probability_is_one_minus_detail_energy) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const QrtTable qr = qrt_fft(normalize(fixtures::random_signed_image(8, seed)));
        double detail = 0.0;
        for (std::size_t k = 0; k < 16; ++k) {
            for (std::size_t l = 0; l < 16; l += 2) {
                const double d = (qr(k, l) - qr(k, l + 1)) / std::sqrt(2.0);
                detail += d * d;
            }
        }
        const double p = success_probability(qr);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
        EXPECT_NEAR(p, 1.0 - detail, 1e-12);
    }
}

TEST(denoise, success_probability_matches_simulated_measurement) {
    for (std::size_t n : {2U, 4U, 8U}) {
        const QuantumImage f = normalize(fixtures::random_signed_image(n, 11 * n));
        StateVector s = run_algorithm1(f);
        s.hadamard(algorithm1_layout(n).i.qubit(0));
        EXPECT_NEAR(s.measure(algorithm1_layout(n).i.qubit(0)).probability[0],
                    success_probability(qrt_fft(f)), 1e-10);
    }
}

TEST(denoise, random_images_succeed_more_often_than_not) {
    const Rng root(99);
    double total = 0.0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        const Image f = make_test_image(TestImageKind::random_uniform, 32, {}, root.split(t).seed());
        const Image h = add_gaussian_noise(f, {1.0, 1.0, root.split(1000 + t).seed()});
        total += qrt_denoise(h).success_probability;
    }
    EXPECT_GT(total / trials, 0.5);
}

TEST(denoise, qrt_denoise_is_idempotent) {
    for (std::size_t n : {4U, 8U, 16U}) {
        const Image once = qrt_denoise(fixtures::random_signed_image(n, n)).image;
        EXPECT_LT(max_abs_diff(qrt_denoise(once).image, once), 1e-10) << "n=" << n;
    }
}

TEST(denoise, qrt_denoise_matches_gate_pipeline) {
    for (std::size_t n : {2U, 4U, 8U}) {
        const QrtDenoiseResult r = qrt_denoise(fixtures::random_signed_image(n, 3 + n), true);
        ASSERT_TRUE(r.cross_check_error.has_value());
        EXPECT_LT(*r.cross_check_error, 1e-9) << "n=" << n;
    }
    EXPECT_THROW(qrt_denoise(Image(6)), SizeError);
}

TEST(denoise, report_has_expected_keys) {
    DenoiseReport rep;
    rep.method = "qrt";
    rep.threshold = kInf;
    rep.noise = NoiseSpec{0.04, 1.0, 7};
    rep.snr_before = Snr::finite(10.0);
    rep.snr_after = Snr::finite(12.5);
    rep.success_probability = 0.97;
    const KeyValueBlock b = rep.to_report();
    EXPECT_EQ(b.get("threshold"), "inf");
    EXPECT_EQ(b.get("snr_gain_db"), "2.5");
    EXPECT_EQ(b.get("seed"), "7");
    EXPECT_TRUE(b.get("success_probability").has_value());
}

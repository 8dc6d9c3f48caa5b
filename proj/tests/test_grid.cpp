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

#include "qradon/grid.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace qradon;

TEST(grid, image_rejects_wrong_entry_count) {
    EXPECT_THROW(Image(2, std::vector<double>{1, 2, 3}), DimensionError);
    EXPECT_THROW(Image(2, std::vector<double>{1, 2, 3, NAN}), DimensionError);
}

TEST(grid, indexing_is_column_then_row) {
    const Image f = Image::from_rows({{1, 2}, {3, 4}});
    EXPECT_EQ(f(0, 0), 1);
    EXPECT_EQ(f(1, 0), 2);
    EXPECT_EQ(f(0, 1), 3);
    EXPECT_EQ(f(1, 1), 4);
}

TEST(grid, normalize_examples) {
    const QuantumImage unit = normalize(Image::from_rows({{1, 0}, {0, 0}}));
    EXPECT_EQ(unit(0, 0), 1.0);
    EXPECT_EQ(unit(1, 1), 0.0);

    const QuantumImage flat = normalize(Image(2, 1.0));
    for (double v : flat.amplitudes().data()) {
        EXPECT_DOUBLE_EQ(v, 0.5);
    }

    EXPECT_THROW(normalize(Image(3, 1.0)), SizeError);
    EXPECT_THROW(normalize(Image(4, 0.0)), NormalizationError);
}

TEST(grid, normalize_always_unit_norm) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = std::size_t{2} << (seed % 6);
        Image f = fixtures::random_signed_image(n, seed).scaled(std::pow(10.0, (seed % 9) - 4.0));
        const QuantumImage q = normalize(f);
        EXPECT_NEAR(q.amplitudes().norm(), 1.0, 1e-12);
    }
}

TEST(grid, quantum_image_rejects_unnormalized) {
    EXPECT_THROW(QuantumImage(Image(2, 1.0)), NormalizationError);
}

TEST(grid, zero_noise_is_identity) {
    const Image f = fixtures::random_signed_image(8, 1);
    EXPECT_EQ(add_gaussian_noise(f, {0.3, 0.0, 42}), f);
}

TEST(grid, noise_is_deterministic_in_seed) {
    const Image f = fixtures::random_signed_image(8, 1);
    EXPECT_EQ(add_gaussian_noise(f, {0.3, 1.0, 42}), add_gaussian_noise(f, {0.3, 1.0, 42}));
    EXPECT_NE(add_gaussian_noise(f, {0.3, 1.0, 42}), add_gaussian_noise(f, {0.3, 1.0, 43}));
}

TEST(grid, noise_sample_variance) {
    // 4096 samples: the sample variance has relative sd sqrt(2/4095) ~ 2.2%,
    // so [0.008, 0.012] is a > 9 sigma window around 0.01.
    const Image f(64, 0.25);
    const Image h = add_gaussian_noise(f, {0.1, 1.0, 7});
    const Image e = h - f;
    double mean = e.sum() / 4096.0;
    double var = 0.0;
    for (double v : e.data()) {
        var += (v - mean) * (v - mean);
    }
    var /= 4095.0;
    EXPECT_GE(var, 0.008);
    EXPECT_LE(var, 0.012);
}

TEST(grid, noise_rejects_bad_sigma) {
    EXPECT_THROW(add_gaussian_noise(Image(2), {0.0, 1.0, 1}), PreconditionError);
    EXPECT_THROW(add_gaussian_noise(Image(2), {1.0, -1.0, 1}), PreconditionError);
}

TEST(grid, snr_closed_forms) {
    const Image f = fixtures::random_signed_image(4, 3);
    EXPECT_NEAR(snr(f.scaled(2.0), f).decibels(), 10.0 * std::log10(4.0), 1e-12);

    // ||h||^2 = 10, ||h - f||^2 = 1.
    const Image h = Image::from_rows({{3, 1}, {0, 0}});
    const Image g = Image::from_rows({{3, 0}, {0, 0}});
    EXPECT_NEAR(snr(h, g).decibels(), 10.0, 1e-12);

    EXPECT_TRUE(snr(f, f).is_infinite());
    EXPECT_THROW(snr(f, f).decibels(), ConsistencyError);
}

TEST(grid, snr_is_scale_invariant) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Image f = fixtures::random_signed_image(4, seed);
        const Image h = fixtures::random_signed_image(4, seed + 100);
        const double alpha = (seed % 2 == 0 ? 1.0 : -1.0) * (0.1 + static_cast<double>(seed));
        EXPECT_NEAR(snr(h.scaled(alpha), f.scaled(alpha)).decibels(), snr(h, f).decibels(), 1e-9);
    }
}

TEST(grid, identity_risk_without_noise_is_zero) {
    const Image f = fixtures::random_signed_image(8, 2);
    const auto est = empirical_risk(f, {1.0, 0.0, 5}, [](const Image &h) { return h; }, 10);
    EXPECT_EQ(est.mean, 0.0);
}

TEST(grid, identity_risk_matches_noise_variance) {
    // Per-pixel convention: E||h - f||^2 / pixel_count = epsilon^2 sigma^2 = 1.
    const Image f(16, 0.5);
    const auto est = empirical_risk(f, {1.0, 1.0, 11}, [](const Image &h) { return h; }, 200);
    EXPECT_GT(est.standard_error, 0.0);
    EXPECT_LT(std::abs(est.mean - 1.0), 3.0 * est.standard_error);
}

TEST(grid, risk_reports_failing_trial) {
    const Image f(4, 0.5);
    int calls = 0;
    try {
        empirical_risk(f, {1.0, 1.0, 1},
                       [&](const Image &h) {
                           if (++calls == 3) {
                               throw std::runtime_error("boom");
                           }
                           return h;
                       },
                       5);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("trial 2"), std::string::npos);
    }
}

TEST(grid, line_segment_matches_reference_geometry) {
    const Image img = make_test_image(TestImageKind::line_segment, 256);
    EXPECT_EQ(img(228, 53), 1.0);
    EXPECT_EQ(img(97, 217), 1.0);
    // One pixel per row along the steep axis.
    EXPECT_DOUBLE_EQ(img.sum(), 165.0);
    EXPECT_EQ(img(0, 0), 0.0);
}

TEST(grid, half_plane_gaussian_vanishes_below_diagonal) {
    const Image img = make_test_image(TestImageKind::half_plane_gaussian, 32);
    for (std::size_t y = 0; y < 32; ++y) {
        for (std::size_t x = 0; x <= y; ++x) {
            EXPECT_EQ(img(x, y), 0.0);
        }
    }
    EXPECT_NEAR(img(17, 16), std::exp(-1.0 / (2.0 * 16.0)), 1e-15);
}

TEST(grid, random_uniform_is_reproducible_and_centered) {
    const Image a = make_test_image(TestImageKind::random_uniform, 64, {}, 9);
    EXPECT_EQ(a, make_test_image(TestImageKind::random_uniform, 64, {}, 9));
    const double mean = a.sum() / 4096.0;
    EXPECT_GE(mean, 0.48);
    EXPECT_LE(mean, 0.52);
}

TEST(grid, solids_have_flat_levels) {
    const Image img = make_test_image(TestImageKind::solids, 64);
    for (double v : img.data()) {
        EXPECT_TRUE(v == 0.0 || v == 0.4 || v == 0.6 || v == 0.8 || v == 1.0);
    }
    EXPECT_GT(img.sum(), 0.0);
}

TEST(grid, test_image_rejects_bad_params) {
    EXPECT_THROW(make_test_image(TestImageKind::random_uniform, 12), SizeError);
    TestImageParams p;
    p.segment = {0, 0, 300, 1};
    EXPECT_THROW(make_test_image(TestImageKind::line_segment, 256, p), PreconditionError);
    p.width = -1.0;
    EXPECT_THROW(make_test_image(TestImageKind::half_plane_gaussian, 16, p), PreconditionError);
}

TEST(grid, rng_split_streams_differ) {
    const Rng root(5);
    EXPECT_NE(root.split(0).seed(), root.split(1).seed());
    EXPECT_EQ(root.split(3).seed(), Rng(5).split(3).seed());
}

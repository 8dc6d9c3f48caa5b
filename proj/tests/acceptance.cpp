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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion.
//
// Usage: acceptance [--known-failure ID]...
// Exit status is 0 when the set of failing criteria equals the set passed via
// --known-failure, and 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qradon/bench.hpp"
#include "qradon/check.hpp"
#include "qradon/denoise.hpp"
#include "qradon/grid.hpp"
#include "qradon/pdrt.hpp"
#include "qradon/qrt.hpp"
#include "qradon/qsim.hpp"
#include "qradon/reversible.hpp"
#include "qradon/rng.hpp"
#include "qradon/sidrt.hpp"

#include "test_util.hpp"

using namespace qradon;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char *pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

// 1
Verdict pdrt_exact_inversion() {
    const auto t0 = clock_type::now();
    double worst = 0.0;
    for (std::size_t p : {3U, 5U, 7U, 11U}) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const Image f = fixtures::random_signed_image(p, 100 * p + s);
            worst = std::max(worst, max_abs_diff(pdrt_inverse_prime(pdrt_naive(f), p), f));
        }
    }
    const double t = seconds_since(t0);
    return {worst < 1e-9 && t < 1.0, "max_err=" + fmt("%.3g", worst) + " runtime=" + fmt("%.3fs", t)};
}

// 2
Verdict pdrt_fourier_slice() {
    double worst = 0.0;
    for (std::size_t n : {4U, 8U, 16U}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const Image f = fixtures::random_signed_image(n, 200 * n + s);
            worst = std::max(worst, detail::pdrt_slice_error(f, pdrt_naive(f)));
        }
    }
    return {worst < 1e-9, "max_err=" + fmt("%.3g", worst)};
}

struct QrtSample {
    Image f;
    QrtTable table;
};

std::vector<QrtSample> &qrt_samples() {
    static std::vector<QrtSample> samples;
    return samples;
}

// 3
Verdict three_way_qrt() {
    const auto t0 = clock_type::now();
    double worst = 0.0;
    for (std::size_t n : {2U, 4U, 8U}) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const Image f = fixtures::random_signed_image(n, 300 * n + s);
            const QrtTable direct = qrt_direct(f);
            worst = std::max(worst, max_abs_diff(direct, qrt_fft(f)));
            for (MultiplierKind kind : {MultiplierKind::direct, MultiplierKind::recursive}) {
                const StateVector st = run_algorithm1(normalize(f), kind);
                worst = std::max(worst, max_abs_diff(algorithm1_table(st, n).scaled(f.norm()), direct));
            }
            qrt_samples().push_back({f, direct});
        }
    }
    const double t = seconds_since(t0);
    return {worst < 1e-9 && t < 30.0, "max_err=" + fmt("%.3g", worst) + " runtime=" + fmt("%.3fs", t)};
}

// 6 (also feeds 4)
Verdict qrt_round_trip() {
    double worst = 0.0;
    for (std::size_t n : {2U, 4U, 8U, 16U}) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const Image f = fixtures::random_signed_image(n, 600 * n + s);
            const QrtTable qr = qrt_direct(f);
            worst = std::max(worst, max_abs_diff(qrt_inverse(qr), f));
            qrt_samples().push_back({f, qr});
        }
    }
    return {worst < 1e-9, "max_err=" + fmt("%.3g", worst)};
}

// 4
Verdict qrt_structure() {
    double even = 0.0;
    double energy = 0.0;
    for (const QrtSample &s : qrt_samples()) {
        for (std::size_t k = 0; k < s.table.slope_count(); k += 2) {
            for (std::size_t l = 0; l < s.table.intercept_count(); ++l) {
                even = std::max(even, std::abs(s.table(k, l)));
            }
        }
        energy = std::max(energy, std::abs(s.table.sum_squares() - s.f.norm() * s.f.norm()));
    }
    const bool ok = !qrt_samples().empty() && even < 1e-9 && energy < 1e-9;
    return {ok, "images=" + std::to_string(qrt_samples().size()) + " max_even_slope=" + fmt("%.3g", even) +
                    " max_energy_gap=" + fmt("%.3g", energy)};
}

// 5
Verdict reversible_multiplication() {
    const auto t0 = clock_type::now();
    std::size_t mismatches = 0;
    bool bijective = true;
    for (unsigned k = 1; k <= 6; ++k) {
        const ReversibleCircuit d = mul_direct(k);
        const ReversibleCircuit r = mul_recursive(k);
        for (std::uint64_t a = 1; a < (std::uint64_t{1} << k); a += 2) {
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << k); ++b) {
                const std::uint64_t v = a | (b << k);
                mismatches += r.map(v) != d.map(v) ? 1 : 0;
            }
        }
        for (const ReversibleCircuit *c : {&d, &r}) {
            std::set<std::uint64_t> image;
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << (2 * k)); ++v) {
                const std::uint64_t w = c->map(v);
                image.insert(w);
                bijective = bijective && c->unmap(w) == v;
            }
            bijective = bijective && image.size() == (std::size_t{1} << (2 * k));
        }
    }
    const double t = seconds_since(t0);
    return {mismatches == 0 && bijective && t < 10.0,
            "mismatches=" + std::to_string(mismatches) + " bijective=" + (bijective ? "yes" : "no") +
                " runtime=" + fmt("%.3fs", t)};
}

constexpr double kSigma = 0.04;
constexpr std::size_t kSeeds = 10;

Image half_plane() { return make_test_image(TestImageKind::half_plane_gaussian, 256); }

// 7
Verdict denoise_probability() {
    const Rng root(7);
    const std::size_t trials = 200;
    std::vector<double> ps;
    for (std::size_t t = 0; t < trials; ++t) {
        const Image f = make_test_image(TestImageKind::random_uniform, 32, {}, root.split(2 * t).seed());
        const Image h = add_gaussian_noise(f, {1.0, 1.0, root.split(2 * t + 1).seed()});
        ps.push_back(qrt_denoise(h).success_probability);
    }
    double mean = 0.0;
    for (double p : ps) {
        mean += p;
    }
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double p : ps) {
        var += (p - mean) * (p - mean);
    }
    const double se = std::sqrt(var / static_cast<double>(trials - 1) / static_cast<double>(trials));
    const double lower = mean - 2.326 * se;

    const Image clean = half_plane();
    double image_p = 0.0;
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
        image_p += qrt_denoise(add_gaussian_noise(clean, {kSigma, 1.0, s})).success_probability;
    }
    image_p /= static_cast<double>(kSeeds);
    return {lower > 0.5 && image_p >= 0.95,
            "random_mean=" + fmt("%.4f", mean) + " lower99=" + fmt("%.4f", lower) + " test_image_p=" +
                fmt("%.4f", image_p) + " (sigma=" + fmt("%.3g", kSigma) + ")"};
}

// 8
Verdict denoise_efficacy() {
    const Image clean = half_plane();
    double before = 0.0;
    double qrt_gain = 0.0;
    double pdrt_gain = 0.0;
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
        const Image h = add_gaussian_noise(clean, {kSigma, 1.0, s});
        const double in = snr(h, clean).decibels();
        before += in;
        qrt_gain += snr(qrt_denoise(h).image, clean).decibels() - in;
        pdrt_gain += snr(pdrt_denoise_padded(h, 3.0 * kSigma), clean).decibels() - in;
    }
    const double k = static_cast<double>(kSeeds);
    before /= k;
    qrt_gain /= k;
    pdrt_gain /= k;
    const bool ok = before >= 10.0 && before <= 20.0 && qrt_gain >= 1.0 && pdrt_gain >= 1.0 &&
                    std::abs(qrt_gain - pdrt_gain) <= 3.0;
    return {ok, "snr_in=" + fmt("%.2fdB", before) + " qrt_gain=" + fmt("%.2fdB", qrt_gain) +
                    " pdrt_gain=" + fmt("%.2fdB", pdrt_gain)};
}

// 9
Verdict line_detection() {
    const auto t0 = clock_type::now();
    const LineDetection d = detect_line(make_test_image(TestImageKind::line_segment, 256));
    const double t = seconds_since(t0);
    const bool ok = std::abs(d.intercept - 13.0) <= 2.0 && std::abs(d.slope + 1.284) <= 0.1 && t < 60.0;
    return {ok, "theta=" + std::to_string(d.theta) + " intercept=" + fmt("%.0f", d.intercept) + " slope=" +
                    fmt("%.4f", d.slope) + " runtime=" + fmt("%.3fs", t)};
}

// 10
Verdict sidrt_overlap() {
    double worst = 0.0;
    for (std::size_t n : {4U, 8U}) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const QuantumImage f = normalize(make_test_image(TestImageKind::random_uniform, n, {}, 1000 + s));
            const SidrtTable table = sidrt(f.amplitudes());
            const StateVector img = image_state(f);
            for (std::size_t theta = 0; theta < n; ++theta) {
                for (std::size_t l = 0; l < n; ++l) {
                    const double ip = std::numbers::sqrt2 * inner_product(location_state(theta, l, n), img).real();
                    worst = std::max(worst, std::abs(ip - table(theta, l)));
                }
            }
        }
    }

    std::vector<Image> images{make_test_image(TestImageKind::line_segment, 64, {.width = std::nullopt, .segment = {57, 13, 24, 54}})};
    for (std::uint64_t s = 0; s < 5; ++s) {
        images.push_back(make_test_image(TestImageKind::random_uniform, 16, {}, 2000 + s));
    }
    std::size_t checked = 0;
    std::size_t violations = 0;
    for (const Image &img : images) {
        const double best = [&] {
            const SidrtTable t = sidrt(img, true);
            return *std::max_element(t.values().begin(), t.values().end());
        }();
        if (best < std::sqrt(3.0) / (2.0 * std::sqrt(static_cast<double>(img.size())))) {
            continue;
        }
        for (double eps : {0.01, 0.05}) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                ++checked;
                const LineDetection d = detect_line(img, eps, seed);
                violations += d.score >= (1.0 - 2.0 * eps / std::sqrt(3.0)) * best ? 0 : 1;
            }
        }
    }
    return {worst < 1e-10 && checked > 0 && violations == 0,
            "overlap_err=" + fmt("%.3g", worst) + " perturbed_runs=" + std::to_string(checked) +
                " violations=" + std::to_string(violations)};
}

// 11
Verdict min_expectation() {
    const MinExpectation r = min_expectation_check(64, 100, 1);
    return {r.ratio > 0.8, "ratio=" + fmt("%.4f", r.ratio) + " se=" + fmt("%.4f", r.standard_error / r.bound) +
                               " guard=0.8"};
}

// 12
Verdict complexity() {
    const std::vector<std::size_t> sizes{32, 64, 128, 256};
    const BenchResult naive = bench(BenchTransform::pdrt_naive, sizes, 5);
    const BenchResult fast = bench(BenchTransform::pdrt_fft, sizes, 5);
    const bool ok = naive.slope >= 2.6 && naive.slope <= 3.4 && fast.slope >= 1.7 && fast.slope <= 2.5 &&
                    fast.median_seconds.back() < naive.median_seconds.back();
    return {ok, "naive_slope=" + fmt("%.3f", naive.slope) + " fft_slope=" + fmt("%.3f", fast.slope) +
                    " t256_naive=" + fmt("%.4fs", naive.median_seconds.back()) +
                    " t256_fft=" + fmt("%.4fs", fast.median_seconds.back())};
}

} // namespace

int main(int argc, char **argv) {
    std::set<int> known;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--known-failure") == 0 && i + 1 < argc) {
            known.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--known-failure ID]...\n", argv[0]);
            return 2;
        }
    }

    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria{
        {"PDRT exact inversion on prime lattices", pdrt_exact_inversion},
        {"PDRT Fourier slice identity", pdrt_fourier_slice},
        {"QRT direct, FFT and circuit agree", three_way_qrt},
        {"QRT even slopes vanish and energy is preserved", qrt_structure},
        {"Recursive multiplier matches direct and is bijective", reversible_multiplication},
        {"QRT inverse round trip", qrt_round_trip},
        {"Denoising success probability", denoise_probability},
        {"Denoising SNR gain on the half-plane Gaussian", denoise_efficacy},
        {"Line detection on the reference segment", line_detection},
        {"SIDRT overlap identity and perturbed detection", sidrt_overlap},
        {"Expected minimum of the normalized SIDRT", min_expectation},
        {"PDRT naive vs FFT growth", complexity},
    };
    // Criterion 4 inspects the images produced by 3 and 6.
    const std::vector<std::size_t> order{0, 1, 2, 5, 3, 4, 6, 7, 8, 9, 10, 11};

    std::vector<Verdict> verdicts(criteria.size());
    for (std::size_t idx : order) {
        try {
            verdicts[idx] = criteria[idx].second();
        } catch (const std::exception &e) {
            verdicts[idx] = {false, std::string("exception: ") + e.what()};
        }
    }

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!verdicts[i].pass) {
            failed.insert(id);
        }
        std::printf("%s %2d %s: %s%s\n", verdicts[i].pass ? "PASS" : "FAIL", id, criteria[i].first,
                    verdicts[i].detail.c_str(), !verdicts[i].pass && known.count(id) ? " [known]" : "");
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
    if (failed != known) {
        std::printf("failing set differs from the declared known failures\n");
        return 1;
    }
    return 0;
}

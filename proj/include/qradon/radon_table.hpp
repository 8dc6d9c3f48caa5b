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
 * Sinogram-style tables (slope index x intercept) shared by the transforms,
 * and their CSV form:
 *
 *     n,<n>            (N,<N> for the interpolation transform)
 *     k,l,value        one line per entry, ordered by k then l
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/grid.hpp"
#include "qradon/image_io.hpp"
#include "qradon/report.hpp"

namespace qradon {

/// Periodic DRT on Z_n^2: slopes k in [n+1], intercepts l in [n].
struct PdrtLayout {
    static constexpr const char *kName = "pdrt";
    static constexpr const char *kHeader = "n";
    static std::size_t slopes(std::size_t n) { return n + 1; }
    static std::size_t intercepts(std::size_t n) { return n; }
};

/// Quantum Radon transform: a (2n) x (2n) table for an n x n image.
struct QrtLayout {
    static constexpr const char *kName = "qrt";
    static constexpr const char *kHeader = "n";
    static std::size_t slopes(std::size_t n) { return 2 * n; }
    static std::size_t intercepts(std::size_t n) { return 2 * n; }
};

/// Interpolation DRT: angle index theta in [N], intercepts l in [N].
struct SidrtLayout {
    static constexpr const char *kName = "sidrt";
    static constexpr const char *kHeader = "N";
    static std::size_t slopes(std::size_t n) { return n; }
    static std::size_t intercepts(std::size_t n) { return n; }
};

/// Real table indexed (slope, intercept). `n` is the side of the image the
/// table was computed from.
template <class Layout> class RadonTable {
  public:
    using layout_type = Layout;

    RadonTable() = default;
    explicit RadonTable(std::size_t n)
        : n_(n), slopes_(Layout::slopes(n)), intercepts_(Layout::intercepts(n)),
          values_(slopes_ * intercepts_, 0.0) {}

    std::size_t n() const noexcept { return n_; }
    std::size_t slope_count() const noexcept { return slopes_; }
    std::size_t intercept_count() const noexcept { return intercepts_; }

    double &operator()(std::size_t slope, std::size_t intercept) noexcept {
        return values_[slope * intercepts_ + intercept];
    }
    double operator()(std::size_t slope, std::size_t intercept) const noexcept {
        return values_[slope * intercepts_ + intercept];
    }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    double sum_squares() const noexcept {
        double s = 0.0;
        for (double v : values_) {
            s += v * v;
        }
        return s;
    }

    RadonTable scaled(double alpha) const {
        RadonTable out = *this;
        for (double &v : out.values_) {
            v *= alpha;
        }
        return out;
    }

    friend bool operator==(const RadonTable &, const RadonTable &) = default;

  private:
    std::size_t n_ = 0;
    std::size_t slopes_ = 0;
    std::size_t intercepts_ = 0;
    std::vector<double> values_;
};

template <class Layout> double max_abs_diff(const RadonTable<Layout> &a, const RadonTable<Layout> &b) {
    if (a.n() != b.n()) {
        throw DimensionError("table sizes differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    }
    return m;
}

template <class Layout> std::string to_csv(const RadonTable<Layout> &table) {
    std::string out = std::string(Layout::kHeader) + "," + std::to_string(table.n()) + "\n";
    for (std::size_t k = 0; k < table.slope_count(); ++k) {
        for (std::size_t l = 0; l < table.intercept_count(); ++l) {
            out += std::to_string(k);
            out += ',';
            out += std::to_string(l);
            out += ',';
            out += format_double(table(k, l));
            out += '\n';
        }
    }
    return out;
}

template <class Layout> RadonTable<Layout> parse_table_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        pos = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    auto fail = [](const std::string &msg, std::size_t line) -> void {
        throw ParseError(msg, line, 0);
    };
    if (lines.empty()) {
        fail("empty table file", 1);
    }
    const std::string header_prefix = std::string(Layout::kHeader) + ",";
    if (!lines[0].starts_with(header_prefix)) {
        fail("expected header '" + header_prefix + "<size>'", 1);
    }
    std::size_t n = 0;
    {
        const std::string_view num = lines[0].substr(header_prefix.size());
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
        if (ec != std::errc() || ptr != num.data() + num.size() || n == 0) {
            fail("invalid table size", 1);
        }
    }
    RadonTable<Layout> table(n);
    const std::size_t expected = table.slope_count() * table.intercept_count();
    if (lines.size() - 1 != expected) {
        fail(std::string(Layout::kName) + " table of size " + std::to_string(n) + " needs " +
                 std::to_string(expected) + " rows, found " + std::to_string(lines.size() - 1),
             lines.size());
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos) {
            fail("expected k,l,value", i + 1);
        }
        std::size_t k = 0;
        std::size_t l = 0;
        double v = 0.0;
        const auto rk = std::from_chars(line.data(), line.data() + c1, k);
        const auto rl = std::from_chars(line.data() + c1 + 1, line.data() + c2, l);
        const auto rv = std::from_chars(line.data() + c2 + 1, line.data() + line.size(), v);
        if (rk.ec != std::errc() || rk.ptr != line.data() + c1 || rl.ec != std::errc() ||
            rl.ptr != line.data() + c2 || rv.ec != std::errc() ||
            rv.ptr != line.data() + line.size() || !std::isfinite(v)) {
            fail("malformed table row", i + 1);
        }
        const std::size_t want = i - 1;
        if (k * table.intercept_count() + l != want || l >= table.intercept_count()) {
            fail("table rows must be ordered by k then l", i + 1);
        }
        table(k, l) = v;
    }
    return table;
}

template <class Layout> void save_table(const RadonTable<Layout> &table, const std::string &path) {
    detail::write_file(path, to_csv(table));
}

template <class Layout> RadonTable<Layout> load_table(const std::string &path) {
    return parse_table_csv<Layout>(detail::read_file(path));
}

/// Table as an image for visual inspection: slopes along y, intercepts along
/// x, zero-padded to a square.
template <class Layout> Image table_to_image(const RadonTable<Layout> &table) {
    const std::size_t side = std::max(table.slope_count(), table.intercept_count());
    Image img(side);
    for (std::size_t k = 0; k < table.slope_count(); ++k) {
        for (std::size_t l = 0; l < table.intercept_count(); ++l) {
            img(l, k) = table(k, l);
        }
    }
    return img;
}

} // namespace qradon

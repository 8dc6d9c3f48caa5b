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
 * PGM (P2/P5) and CSV image files.
 *
 * CSV: one line per row y, comma separated, values written with 17 significant
 * digits so finite doubles round-trip bit-exactly.
 *
 * PGM: grayscale in [0, 1] maps to value * maxval. Data outside [0, 1] is
 * min-max rescaled on save and the rescale is recorded in a `<path>.meta`
 * sidecar of key=value lines (`rescaled`, `min`, `max`).
 */

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/grid.hpp"
#include "qradon/report.hpp"

namespace qradon {

enum class ImageFormat { pgm, csv };

/// Format from the file extension (.pgm / .csv, case-insensitive).
inline ImageFormat format_from_path(const std::string &path) {
    const auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == "pgm") {
        return ImageFormat::pgm;
    }
    if (ext == "csv") {
        return ImageFormat::csv;
    }
    throw PreconditionError("cannot infer image format from '" + path + "' (use .pgm or .csv)");
}

inline std::string sidecar_path(const std::string &path) { return path + ".meta"; }

namespace detail {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open for reading", path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing", path);
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed", path);
    }
}

/// Cursor over a PGM header tracking line numbers; skips whitespace and comments.
class PgmCursor {
  public:
    explicit PgmCursor(std::string_view bytes) : bytes_(bytes) {}

    std::size_t pos() const noexcept { return pos_; }
    std::size_t line() const noexcept { return line_; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                if (c == '\n') {
                    ++line_;
                }
                ++pos_;
            } else {
                return;
            }
        }
    }

    std::string_view token() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
               bytes_[pos_] != '#') {
            ++pos_;
        }
        if (start == pos_) {
            throw ParseError("unexpected end of PGM data", line_, pos_);
        }
        return bytes_.substr(start, pos_ - start);
    }

    unsigned long number(const char *what) {
        skip_space_and_comments();
        const std::size_t at = pos_;
        const std::string_view tok = token();
        unsigned long v = 0;
        auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || end != tok.data() + tok.size()) {
            throw ParseError(std::string("invalid PGM ") + what + " '" + std::string(tok) + "'",
                             line_, at);
        }
        return v;
    }

    /// Consumes the single whitespace byte that separates a P5 header from its raster.
    void consume_raster_separator() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw ParseError("missing whitespace before PGM raster", line_, pos_);
        }
        ++pos_;
    }

  private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

inline Image parse_pgm(std::string_view bytes) {
    PgmCursor cur(bytes);
    const std::string_view magic = cur.token();
    const bool binary = magic == "P5";
    if (!binary && magic != "P2") {
        throw ParseError("unsupported PGM magic '" + std::string(magic) + "'", 1, 0);
    }
    const unsigned long width = cur.number("width");
    const unsigned long height = cur.number("height");
    const std::size_t maxval_line = cur.line();
    const std::size_t maxval_pos = cur.pos();
    const unsigned long maxval = cur.number("maxval");
    if (maxval == 0 || maxval > 65535) {
        throw ParseError("PGM maxval out of range", maxval_line, maxval_pos);
    }
    if (width == 0 || height == 0) {
        throw DimensionError("PGM has an empty raster");
    }
    if (width != height) {
        throw DimensionError("PGM is " + std::to_string(width) + "x" + std::to_string(height) +
                             ", images must be square");
    }
    const std::size_t n = width;
    std::vector<double> data(n * n);
    const double scale = 1.0 / static_cast<double>(maxval);
    if (binary) {
        cur.consume_raster_separator();
        const std::size_t bpp = maxval > 255 ? 2 : 1;
        std::size_t p = cur.pos();
        if (bytes.size() - p < n * n * bpp) {
            throw ParseError("PGM raster truncated", cur.line(), bytes.size());
        }
        for (std::size_t i = 0; i < n * n; ++i) {
            unsigned long v = static_cast<unsigned char>(bytes[p++]);
            if (bpp == 2) {
                v = (v << 8) | static_cast<unsigned char>(bytes[p++]);
            }
            if (v > maxval) {
                throw ParseError("PGM sample exceeds maxval", cur.line(), p - bpp);
            }
            data[i] = static_cast<double>(v) * scale;
        }
    } else {
        for (std::size_t i = 0; i < n * n; ++i) {
            const std::size_t line = cur.line();
            cur.skip_space_and_comments();
            const std::size_t at = cur.pos();
            const unsigned long v = cur.number("sample");
            if (v > maxval) {
                throw ParseError("PGM sample exceeds maxval", line, at);
            }
            data[i] = static_cast<double>(v) * scale;
        }
    }
    return Image(n, std::move(data));
}

inline Image parse_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        ++line_no;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.find_first_not_of(" \t") != std::string_view::npos) {
            std::vector<double> row;
            std::size_t field_start = 0;
            while (true) {
                std::size_t comma = line.find(',', field_start);
                const std::size_t field_end = comma == std::string_view::npos ? line.size() : comma;
                std::string_view field = line.substr(field_start, field_end - field_start);
                std::size_t lead = 0;
                while (lead < field.size() && (field[lead] == ' ' || field[lead] == '\t')) {
                    ++lead;
                }
                field.remove_prefix(lead);
                while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) {
                    field.remove_suffix(1);
                }
                double v = 0.0;
                auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
                if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
                    !std::isfinite(v)) {
                    throw ParseError("invalid number '" + std::string(field) + "'", line_no,
                                     pos + field_start + lead);
                }
                row.push_back(v);
                if (comma == std::string_view::npos) {
                    break;
                }
                field_start = comma + 1;
            }
            if (!rows.empty() && row.size() != rows.front().size()) {
                throw ParseError("row has " + std::to_string(row.size()) + " fields, expected " +
                                     std::to_string(rows.front().size()),
                                 line_no, pos);
            }
            rows.push_back(std::move(row));
        }
        pos = end + 1;
    }
    if (rows.empty()) {
        throw DimensionError("CSV image is empty");
    }
    const std::size_t n = rows.size();
    if (rows.front().size() != n) {
        throw DimensionError("CSV grid is " + std::to_string(n) + "x" +
                             std::to_string(rows.front().size()) + ", images must be square");
    }
    std::vector<double> data;
    data.reserve(n * n);
    for (const auto &row : rows) {
        data.insert(data.end(), row.begin(), row.end());
    }
    return Image(n, std::move(data));
}

} // namespace detail

inline Image load_image(const std::string &path, ImageFormat format) {
    const std::string bytes = detail::read_file(path);
    return format == ImageFormat::pgm ? detail::parse_pgm(bytes) : detail::parse_csv(bytes);
}

inline Image load_image(const std::string &path) { return load_image(path, format_from_path(path)); }

inline std::string to_csv(const Image &img) {
    std::string out;
    const std::size_t n = img.size();
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            if (x != 0) {
                out += ',';
            }
            out += format_double(img(x, y));
        }
        out += '\n';
    }
    return out;
}

struct PgmOptions {
    bool binary = true;
    unsigned maxval = 255;
};

/// Writes `img`; for PGM, values outside [0, 1] trigger min-max rescaling and
/// a sidecar file. Returns true when rescaling happened.
inline bool save_image(const Image &img, const std::string &path, ImageFormat format,
                       const PgmOptions &pgm = {}) {
    if (format == ImageFormat::csv) {
        detail::write_file(path, to_csv(img));
        return false;
    }
    const auto data = img.data();
    const double lo = *std::min_element(data.begin(), data.end());
    const double hi = *std::max_element(data.begin(), data.end());
    const bool rescale = lo < 0.0 || hi > 1.0;
    const double offset = rescale ? lo : 0.0;
    const double span = rescale ? (hi > lo ? hi - lo : 1.0) : 1.0;

    const std::size_t n = img.size();
    std::string out = (pgm.binary ? "P5\n" : "P2\n") + std::to_string(n) + " " +
                      std::to_string(n) + "\n" + std::to_string(pgm.maxval) + "\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double unit = std::clamp((data[i] - offset) / span, 0.0, 1.0);
        const auto v = static_cast<unsigned>(std::lround(unit * pgm.maxval));
        if (pgm.binary) {
            if (pgm.maxval > 255) {
                out += static_cast<char>((v >> 8) & 0xff);
            }
            out += static_cast<char>(v & 0xff);
        } else {
            out += std::to_string(v);
            out += ((i + 1) % n == 0) ? '\n' : ' ';
        }
    }
    detail::write_file(path, out);
    if (rescale) {
        KeyValueBlock meta;
        meta.add("rescaled", true).add("min", lo).add("max", hi);
        meta.write(sidecar_path(path));
    }
    return rescale;
}

inline bool save_image(const Image &img, const std::string &path) {
    return save_image(img, path, format_from_path(path));
}

} // namespace qradon

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

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qradon/error.hpp"

namespace qradon {

/// Text that reads back to the same double (17 significant digits).
inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, end);
}

/// Ordered `key=value` block. Grammar, one pair per line:
///   key   := [A-Za-z0-9_.]+
///   value := any characters except newline
/// Blank lines are ignored; anything else is a parse error.
class KeyValueBlock {
  public:
    KeyValueBlock &add(std::string key, std::string value) {
        if (!valid_key(key)) {
            throw PreconditionError("invalid report key: '" + key + "'");
        }
        if (value.find('\n') != std::string::npos) {
            throw PreconditionError("report value for '" + key + "' contains a newline");
        }
        entries_.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    KeyValueBlock &add(std::string key, const char *value) { return add(std::move(key), std::string(value)); }
    KeyValueBlock &add(std::string key, double value) { return add(std::move(key), format_double(value)); }
    KeyValueBlock &add(std::string key, std::uint64_t value) { return add(std::move(key), std::to_string(value)); }
    KeyValueBlock &add(std::string key, std::int64_t value) { return add(std::move(key), std::to_string(value)); }
    KeyValueBlock &add(std::string key, int value) { return add(std::move(key), std::to_string(value)); }
    KeyValueBlock &add(std::string key, bool value) { return add(std::move(key), std::string(value ? "true" : "false")); }

    void append(const KeyValueBlock &other, const std::string &prefix = "") {
        for (const auto &[k, v] : other.entries_) {
            add(prefix + k, v);
        }
    }

    const std::vector<std::pair<std::string, std::string>> &entries() const noexcept { return entries_; }

    std::optional<std::string> get(std::string_view key) const {
        for (const auto &[k, v] : entries_) {
            if (k == key) {
                return v;
            }
        }
        return std::nullopt;
    }

    std::string to_string() const {
        std::string out;
        for (const auto &[k, v] : entries_) {
            out += k;
            out += '=';
            out += v;
            out += '\n';
        }
        return out;
    }

    static KeyValueBlock parse(std::string_view text) {
        KeyValueBlock block;
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
            if (!line.empty()) {
                const std::size_t eq = line.find('=');
                if (eq == std::string_view::npos || !valid_key(line.substr(0, eq))) {
                    throw ParseError("expected key=value", line_no, pos);
                }
                block.entries_.emplace_back(std::string(line.substr(0, eq)),
                                            std::string(line.substr(eq + 1)));
            }
            pos = end + 1;
        }
        return block;
    }

    void write(const std::string &path) const {
        std::ofstream out(path);
        if (!out) {
            throw IoError("cannot open for writing", path);
        }
        out << to_string();
        if (!out) {
            throw IoError("write failed", path);
        }
    }

    static KeyValueBlock read(const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw IoError("cannot open for reading", path);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

  private:
    static bool valid_key(std::string_view key) {
        if (key.empty()) {
            return false;
        }
        for (char ch : key) {
            const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                            (ch >= '0' && ch <= '9') || ch == '_' || ch == '.';
            if (!ok) {
                return false;
            }
        }
        return true;
    }

    std::vector<std::pair<std::string, std::string>> entries_;
};

} // namespace qradon

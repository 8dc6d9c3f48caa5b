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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qradon {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line and the 0-based byte offset
/// of the offending token.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t line, std::size_t byte_offset)
        : Error(what + " (line " + std::to_string(line) + ", byte " +
                std::to_string(byte_offset) + ")"),
          line_(line), byte_offset_(byte_offset) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t byte_offset() const noexcept { return byte_offset_; }

  private:
    std::size_t line_;
    std::size_t byte_offset_;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class NormalizationError : public Error {
  public:
    using Error::Error;
};

/// Lattice size violates a structural requirement (power of two, qubit cap...).
class SizeError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    IoError(const std::string &what, std::string path)
        : Error(what + ": " + path), path_(std::move(path)) {}
    const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Input data contradicts an invariant it is supposed to satisfy.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

} // namespace qradon

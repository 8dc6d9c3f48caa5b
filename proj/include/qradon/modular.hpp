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

#include <cstdint>

#include "qradon/error.hpp"

namespace qradon {

/// Multiplicative inverse of an odd `a` modulo 2^bits (bits <= 63).
constexpr std::uint64_t inverse_mod_pow2(std::uint64_t a, unsigned bits) {
    if ((a & 1U) == 0) {
        throw PreconditionError("only odd residues are invertible modulo a power of two");
    }
    // Newton iteration x <- x (2 - a x); each step doubles the correct low bits.
    std::uint64_t x = a;
    for (int i = 0; i < 6; ++i) {
        x *= 2 - a * x;
    }
    const std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    return x & mask;
}

} // namespace qradon

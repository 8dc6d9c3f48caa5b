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
#include <random>

namespace qradon {

/// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seedable, splittable generator. Every stochastic operation in the library
/// takes one of these (or a raw seed) explicitly; there is no global state.
class Rng {
  public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Child generator for stream `stream`; independent of how much the
    /// parent has been consumed.
    Rng split(std::uint64_t stream) const {
        return Rng(mix_seed(seed_ ^ mix_seed(stream + 0x632be59bd9b4e019ULL)));
    }

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double normal(double mean, double stddev) {
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    engine_type &engine() noexcept { return engine_; }

  private:
    std::uint64_t seed_;
    engine_type engine_;
};

} // namespace qradon

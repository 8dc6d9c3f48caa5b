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
#include <filesystem>
#include <string>

#include "qradon/grid.hpp"
#include "qradon/rng.hpp"

namespace qradon::fixtures {

/// Pixels drawn from Uniform[-1, 1]; any side length.
inline Image random_signed_image(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Image img(n);
    for (double &v : img.data()) {
        v = rng.uniform(-1.0, 1.0);
    }
    return img;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("qradon_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace qradon::fixtures

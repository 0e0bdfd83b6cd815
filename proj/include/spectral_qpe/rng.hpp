// Copyright 2026 The spectral-qpe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Seeded random streams.
 *
 * A single master seed fans out into independent per-trial streams with a
 * counter scheme: stream `i` is seeded with
 * `splitmix64(master + (i + 1) * 0x9E3779B97F4A7C15)` and drives a
 * `std::mt19937_64`. Both the mixer and the engine are fully specified, so
 * outcome sequences are bit-identical across platforms and thread counts.
 */
#pragma once

#include <cstdint>
#include <random>

namespace spectral_qpe {

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x ^= x >> 30U;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27U;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31U;
    return x;
}

constexpr std::uint64_t derive_stream_seed(std::uint64_t master,
                                           std::uint64_t stream) noexcept {
    return splitmix64(master + (stream + 1) * golden_gamma);
}

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Stream `stream` of the family rooted at `master`.
    static RandomStream derived(std::uint64_t master, std::uint64_t stream) {
        return RandomStream(derive_stream_seed(master, stream));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace spectral_qpe

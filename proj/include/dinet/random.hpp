// Copyright 2026 The dinet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace dinet {

using Rng = std::mt19937_64;

/// Stream purposes. Each seeded draw in the library uses its own constant so
/// streams stay independent of the order in which they are consumed.
enum class SeedPurpose : std::uint64_t {
  kColumnLabels = 0x6c6162656c73ULL,
  kColumnDegrees = 0x7468657461ULL,
  kRowDegrees = 0x746865746172ULL,
  kAdjacency = 0x61646a6163ULL,
  kFit = 0x666974ULL,
  kKMeansRestart = 0x6b6d65616e73ULL,
  kLanczosStart = 0x6c616e637aULL,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives a child seed from the master seed, a purpose tag and up to two
/// indices (sweep cell, repetition).
std::uint64_t derive_seed(std::uint64_t master, SeedPurpose purpose,
                          std::uint64_t cell = 0,
                          std::uint64_t repetition = 0) noexcept;

/// Uniform double on [0, 1) with 53 random bits. Used instead of
/// std::uniform_real_distribution so draws are identical across standard
/// library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer on [0, n) by rejection; portable across standard libraries.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

}  // namespace dinet

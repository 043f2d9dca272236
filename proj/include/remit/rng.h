// Copyright 2026 The Remit Authors
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

#ifndef REMIT_RNG_H_
#define REMIT_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace remit {

/// Random stream handed explicitly to every stochastic operation.
using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the stream addressed by `path` under `master`.
///
/// Streams for distinct paths are disjoint for all practical purposes, and the
/// result depends only on (master, path), never on which worker asks for it.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(master);
    for (std::uint64_t p : path) {
        h = mix64(h ^ mix64(p));
    }
    return h;
}

inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    return Rng(derive_seed(master, path));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Stream tags, kept distinct so that e.g. angle generation never shares a
// stream with shot sampling.
namespace stream_tag {
inline constexpr std::uint64_t kAngles = 0xA11;
inline constexpr std::uint64_t kExperiment = 0xE4;
inline constexpr std::uint64_t kCalibration = 0xCA1;
}  // namespace stream_tag

}  // namespace remit

#endif  // REMIT_RNG_H_

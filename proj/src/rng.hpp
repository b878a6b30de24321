// Copyright 2026 The devcomp Authors.
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

#ifndef DEVCOMP_RNG_HPP_
#define DEVCOMP_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace devcomp {

// All randomness flows through this engine. Streams are split by deriving a
// fresh seed from a parent seed plus a tuple of small integers, so no two
// (run, generation, lineage) triples ever share state.
using Rng = std::mt19937_64;

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// FNV-1a; stable across platforms and releases, used for naming streams.
constexpr std::uint64_t HashName(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr std::uint64_t DeriveSeed(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = SplitMix64(seed);
  for (std::uint64_t p : path) h = SplitMix64(h ^ SplitMix64(p + 0x632BE59BD9B4E019ULL));
  return h;
}

inline Rng MakeRng(std::uint64_t seed, std::initializer_list<std::uint64_t> path = {}) {
  return Rng(DeriveSeed(seed, path));
}

}  // namespace devcomp

#endif  // DEVCOMP_RNG_HPP_

// Copyright 2026 The Burgerstack Authors.
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

#ifndef BURGER_RNG_HPP_
#define BURGER_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace burger {

/// SplitMix64 finalizer; also used as the stream-derivation hash.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Identity of one random stream: all randomness in a run is derived from
/// the user seed and a batch (stream) index.
struct StreamId {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  friend bool operator==(const StreamId&, const StreamId&) = default;
};

/// Counter-based derivation of the 64-bit key of stream `index`:
///   key = Mix64(Mix64(seed) + 0x9E3779B97F4A7C15 * (index + 1)).
/// The engine state is then four successive SplitMix64 outputs seeded by key.
constexpr std::uint64_t StreamKey(StreamId id) {
  return Mix64(Mix64(id.seed) + 0x9E3779B97F4A7C15ULL * (id.index + 1));
}

std::vector<StreamId> SeedStreams(std::uint64_t seed, std::size_t n_batches);

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Engine {
 public:
  using result_type = std::uint64_t;

  explicit Engine(StreamId id);
  explicit Engine(std::uint64_t key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    const std::uint64_t result = Rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = Rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0,1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  /// Uniform on (0,1].
  double UniformPositive() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t Rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace burger

#endif  // BURGER_RNG_HPP_

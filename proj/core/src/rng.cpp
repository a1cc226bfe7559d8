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

#include "burger/rng.hpp"

namespace burger {

std::vector<StreamId> SeedStreams(std::uint64_t seed, std::size_t n_batches) {
  std::vector<StreamId> ids;
  ids.reserve(n_batches);
  for (std::size_t i = 0; i < n_batches; ++i) ids.push_back({seed, i});
  return ids;
}

Engine::Engine(StreamId id) : Engine(StreamKey(id)) {}

Engine::Engine(std::uint64_t key) {
  std::uint64_t x = key;
  for (auto& word : s_) {
    x += 0x9E3779B97F4A7C15ULL;
    word = Mix64(x);
  }
}

}  // namespace burger

// Copyright 2026 The graspsim Authors
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

#ifndef GRASPSIM_RNG_HPP_
#define GRASPSIM_RNG_HPP_

#include <cstdint>
#include <initializer_list>

namespace graspsim
{

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Folds a list of tags into a child seed. Every RNG stream in the
/// simulator is seeded through this so runs are reproducible per tag path.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags)
{
  std::uint64_t h = splitmix64(base);
  for (const std::uint64_t tag : tags) {
    h = splitmix64(h ^ splitmix64(tag + 0x632BE59BD9B4E019ULL));
  }
  return h;
}

// Stream tags.
enum class Stream : std::uint64_t
{
  kDrift = 1,
  kRender = 2,
  kRansac = 3,
  kForce = 4,
};

constexpr std::uint64_t tag(Stream s) {return static_cast<std::uint64_t>(s);}

}  // namespace graspsim

#endif  // GRASPSIM_RNG_HPP_

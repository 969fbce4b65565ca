// Copyright 2026 The unifit Authors.
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

// Reproducible random streams, algorithm "unifit-rng-v1":
//
//   * every replicate gets its own stream, keyed by (master seed, stream
//     tag, replicate index); the key is hashed with the splitmix64
//     finaliser, so streams can be produced in any order and on any thread;
//   * the stream state is xoshiro256** seeded by four splitmix64 outputs;
//   * uniforms are the top 53 bits, shifted by half an ulp into (0,1);
//   * normals use the Box-Muller transform, cosine branch first.
//
// Changing any of these steps changes published numbers and must bump the
// version string.

#ifndef UNIFIT_RNG_HPP
#define UNIFIT_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

#include "unifit/numeric.hpp"

namespace unifit {

inline constexpr std::string_view rng_algorithm = "unifit-rng-v1";

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  return splitmix64_mix(state);
}

/// FNV-1a hash of a tag such as "null/t1/n=20".
constexpr std::uint64_t stream_tag(std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0,1).
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 2.0 * pi * uniform();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent stream for replicate `index` of the stream named by `tag`.
inline Xoshiro256 substream(std::uint64_t master_seed, std::uint64_t tag,
                            std::uint64_t index) noexcept {
  std::uint64_t key = splitmix64_mix(master_seed ^ 0x6a09e667f3bcc909ULL);
  key = splitmix64_mix(key ^ tag);
  key = splitmix64_mix(key + index * 0x9e3779b97f4a7c15ULL);
  return Xoshiro256(key);
}

}  // namespace unifit

#endif  // UNIFIT_RNG_HPP

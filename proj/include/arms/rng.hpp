// Copyright 2026 The arms-bench Authors
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

#ifndef ARMS_RNG_HPP
#define ARMS_RNG_HPP

#include <cstdint>
#include <random>

#include "arms/specfn.hpp"

namespace arms {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Explicitly seeded random stream. Every sampler and estimator takes one of
/// these; there is no global RNG anywhere in the library. split(key) derives
/// an independent stream from the master seed and a counter key, which is the
/// splitting rule the bench harness uses to give each (estimator, n,
/// replicate) cell its own stream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : seed_(seed), gen_(splitmix64(seed)) {}

  /// Uniform double strictly inside (0, 1).
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the inverse CDF; one uniform consumed per draw.
  double normal() { return std_normal_inv_cdf(uniform()); }

  RandomStream split(std::uint64_t key) const {
    return RandomStream(splitmix64(seed_ ^ splitmix64(key)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace arms

#endif  // ARMS_RNG_HPP

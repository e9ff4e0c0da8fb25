// Copyright 2026 The ar2d Authors.
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

#ifndef AR2D_RNG_HPP_
#define AR2D_RNG_HPP_

#include <cstdint>

namespace ar2d {

/// SplitMix64 finalizer; a bijection on 64-bit words with full avalanche.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based word for a (seed, i, j) cell; each coordinate is mixed in
/// through its own SplitMix64 stage so nested lattices share values.
inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t i,
                                  std::uint64_t j) {
  return splitmix64(splitmix64(splitmix64(seed) ^ i) ^ j);
}

/// Derive an independent stream seed from (seed, a, b).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) {
  return splitmix64(counter_word(seed, a, b));
}

/// Uniform double in the open interval (0,1).
inline double u64_to_open_unit(std::uint64_t w) {
  return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal quantile (inverse CDF), accurate to ~1e-15 after one
/// Halley refinement of Acklam's rational approximation.
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace ar2d

#endif  // AR2D_RNG_HPP_

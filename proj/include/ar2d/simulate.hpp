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

#ifndef AR2D_SIMULATE_HPP_
#define AR2D_SIMULATE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ar2d/field.hpp"
#include "ar2d/params.hpp"

namespace ar2d {

enum class NoiseKind { kGaussian, kRademacher, kUniform };

NoiseKind noise_kind_from_string(const std::string& s);
std::string to_string(NoiseKind kind);

/// Innovation source: mean 0, variance 1, finite eighth moment.
/// Gaussian is standard normal, Rademacher is +-1 equiprobable, Uniform is
/// uniform on [-sqrt(3), sqrt(3)].
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kGaussian;
  std::uint64_t seed = 0;
};

/// Counter-based draw: entry (k,l) depends only on (seed,k,l), so enlarging
/// the lattice extends the noise instead of reshuffling it.
NoiseMatrix draw_noise(const NoiseSpec& spec, int n, int m);

/// Defining recursion, row-major evaluation order (k outer, l inner).
Field simulate_recursion(const Params& p, const NoiseMatrix& eps);

/// Guard for the O(n^2 m^2) moving-average convolution.
inline constexpr std::int64_t kMaCellCap = 10000;

/// Moving-average representation X_{k,l} = sum G(k-i,l-j) eps_{i,j}.
Field simulate_ma(const Params& p, const NoiseMatrix& eps);

/// CSV export, header "k,l,x", one row per site including the boundary.
void write_field_csv(const Field& field, std::ostream& out);
Field read_field_csv(std::istream& in);

void write_noise_csv(const NoiseMatrix& eps, std::ostream& out);
NoiseMatrix read_noise_csv(std::istream& in);

}  // namespace ar2d

#endif  // AR2D_SIMULATE_HPP_

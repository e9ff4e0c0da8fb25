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

#ifndef AR2D_STATS_HPP_
#define AR2D_STATS_HPP_

#include <vector>

namespace ar2d {

/// Kolmogorov distribution complement Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_q(double lambda);

/// One-sample KS test of samples against the standard normal CDF.
/// Returns the asymptotic p-value (Stephens' small-sample correction).
double ks_test_normal(std::vector<double> samples);

/// Two-sample KS test p-value.
double ks_test_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace ar2d

#endif  // AR2D_STATS_HPP_

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

#include "ar2d/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ar2d/errors.hpp"
#include "ar2d/rng.hpp"

namespace ar2d {

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 128; ++j) {
    double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-14) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double stephens_lambda(double d, double n_eff) {
  double s = std::sqrt(n_eff);
  return d * (s + 0.12 + 0.11 / s);
}

}  // namespace

double ks_test_normal(std::vector<double> samples) {
  if (samples.size() < 2) throw DomainError("ks_test_normal: need >= 2 samples");
  std::sort(samples.begin(), samples.end());
  double n = double(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = normal_cdf(samples[i]);
    d = std::max(d, std::max(f - double(i) / n, double(i + 1) / n - f));
  }
  return kolmogorov_q(stephens_lambda(d, n));
}

double ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw DomainError("ks_test_two_sample: need >= 2 samples each");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double na = double(a.size()), nb = double(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  double ne = na * nb / (na + nb);
  return kolmogorov_q(stephens_lambda(d, ne));
}

}  // namespace ar2d

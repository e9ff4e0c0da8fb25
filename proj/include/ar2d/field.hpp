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

#ifndef AR2D_FIELD_HPP_
#define AR2D_FIELD_HPP_

#include <cstddef>
#include <vector>

namespace ar2d {

/// An (n+1) x (m+1) lattice X_{k,l}, 0 <= k <= n, 0 <= l <= m, with the
/// zero boundary row X_{k,0} and column X_{0,l}.
struct Field {
  int n = 0;
  int m = 0;
  std::vector<double> data;  // row-major, (n+1)*(m+1)

  Field() = default;
  Field(int n_, int m_) : n(n_), m(m_), data(std::size_t(n_ + 1) * (m_ + 1)) {}

  double& at(int k, int l) { return data[std::size_t(k) * (m + 1) + l]; }
  double at(int k, int l) const { return data[std::size_t(k) * (m + 1) + l]; }
};

/// Realized innovations eps_{k,l} for 1 <= k <= n, 1 <= l <= m.
struct NoiseMatrix {
  int n = 0;
  int m = 0;
  std::vector<double> data;  // row-major, n*m

  NoiseMatrix() = default;
  NoiseMatrix(int n_, int m_) : n(n_), m(m_), data(std::size_t(n_) * m_) {}

  double& at(int k, int l) { return data[std::size_t(k - 1) * m + (l - 1)]; }
  double at(int k, int l) const {
    return data[std::size_t(k - 1) * m + (l - 1)];
  }
};

}  // namespace ar2d

#endif  // AR2D_FIELD_HPP_

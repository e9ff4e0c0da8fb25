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

#ifndef AR2D_LINALG_HPP_
#define AR2D_LINALG_HPP_

#include <array>
#include <cmath>

namespace ar2d {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 zero3() { return Mat3{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}; }

inline Mat3 identity3() { return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 r = zero3();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

/// outer(v) = v v^T
inline Mat3 outer3(const Vec3& v) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = v[i] * v[j];
  return r;
}

inline Mat3 scale3(const Mat3& m, double s) {
  Mat3 r = m;
  for (auto& row : r)
    for (auto& x : row) x *= s;
  return r;
}

/// D M D with D = diag(d).
inline Mat3 diag_conjugate(const Mat3& m, const Vec3& d) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = d[i] * m[i][j] * d[j];
  return r;
}

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline double frobenius3(const Mat3& m) {
  double s = 0;
  for (const auto& row : m)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

/// Eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi sweeps,
/// returned in ascending order.
Vec3 sym3_eigenvalues(const Mat3& m);

/// Kahan compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace ar2d

#endif  // AR2D_LINALG_HPP_

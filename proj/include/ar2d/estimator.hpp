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

#ifndef AR2D_ESTIMATOR_HPP_
#define AR2D_ESTIMATOR_HPP_

#include <string>
#include <utility>

#include "ar2d/field.hpp"
#include "ar2d/linalg.hpp"
#include "ar2d/params.hpp"

namespace ar2d {

/// Sufficient statistics of a field over the rectangle R_{n,m}.
/// Regressor order everywhere: (X_{k-1,l}, X_{k,l-1}, X_{k-1,l-1}).
/// B is the regressor Gram matrix; s1..s5 and T are the quadratic forms in
/// the two lattice differences and the corner value; B[2][2] equals T
/// bit-exactly. A (present only when the innovations are supplied) is the
/// innovation-weighted regressor sum.
struct Accumulators {
  int n = 0;
  int m = 0;
  bool has_noise = false;
  Vec3 A{0, 0, 0};
  Mat3 B = zero3();
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0;
  double T = 0;
};

struct Rect {
  int n = 0;
  int m = 0;
};

Accumulators accumulate(const Field& field, const Rect& rect);

Accumulators accumulate_with_noise(const Field& field, const NoiseMatrix& eps,
                                   const Rect& rect);

/// (A1 - A3, A2 - A3), the H A_n contrasts; requires A.
Vec2 c_stat(const Accumulators& acc);

struct Estimate {
  Vec3 theta_hat{0, 0, 0};
  double det_b = 0.0;
  Mat3 adj_b = zero3();
  double residual_ss = 0.0;
  int n = 0;
  int m = 0;
};

/// Relative singularity threshold: det(B) is rejected when
/// |det(B)| <= kSingularRelTol * ||B||_F^3.
inline constexpr double kSingularRelTol = 1e-12;

/// Least squares estimate of (alpha,beta,gamma) over R_{n,m}, solved by the
/// adjugate/determinant inverse B^{-1} = adj(B)/det(B).
Estimate lse(const Accumulators& acc, const Field& response);

/// lhs = det(B) evaluated directly; rhs = the same determinant assembled
/// from the S statistics: S1 S2 T + 2 S5 S3 S4 - S5^2 T - S1 S4^2 - S2 S3^2.
std::pair<double, double> det_identity(const Accumulators& acc);

/// Adjugate (transposed cofactor matrix): M adj(M) = det(M) I.
Mat3 adjugate3(const Mat3& m);

/// JSON serialization {theta_hat, det_b, n, m}.
std::string estimate_to_json(const Estimate& e);

}  // namespace ar2d

#endif  // AR2D_ESTIMATOR_HPP_

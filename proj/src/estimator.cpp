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

#include "ar2d/estimator.hpp"

#include <cmath>
#include <sstream>

#include "ar2d/errors.hpp"

namespace ar2d {

namespace {

void check_rect(const Field& field, const Rect& rect) {
  if (rect.n < 1 || rect.m < 1 || rect.n > field.n || rect.m > field.m)
    throw DomainError("accumulate: rectangle outside the field");
}

Accumulators accumulate_impl(const Field& field, const NoiseMatrix* eps,
                             const Rect& rect) {
  check_rect(field, rect);
  if (eps && (eps->n < rect.n || eps->m < rect.m))
    throw DomainError("accumulate: innovation array smaller than rectangle");

  // Gram entries decompose through the lattice differences
  //   d1 = X_{k,l-1} - X_{k-1,l-1},  d2 = X_{k-1,l} - X_{k-1,l-1},
  // so only the six quadratic forms below are accumulated.
  KahanSum s1, s2, s3, s4, s5, t;
  KahanSum b01, b02, b12, b00, b11;
  KahanSum a0, a1, a2;
  for (int k = 1; k <= rect.n; ++k) {
    for (int l = 1; l <= rect.m; ++l) {
      double r0 = field.at(k - 1, l);      // X_{k-1,l}
      double r1 = field.at(k, l - 1);      // X_{k,l-1}
      double r2 = field.at(k - 1, l - 1);  // X_{k-1,l-1}
      double d1 = r1 - r2;
      double d2 = r0 - r2;
      s1.add(d1 * d1);
      s2.add(d2 * d2);
      s3.add(d1 * r2);
      s4.add(d2 * r2);
      s5.add(d1 * d2);
      t.add(r2 * r2);
      b00.add(r0 * r0);
      b11.add(r1 * r1);
      b01.add(r0 * r1);
      b02.add(r0 * r2);
      b12.add(r1 * r2);
      if (eps) {
        double e = eps->at(k, l);
        a0.add(e * r0);
        a1.add(e * r1);
        a2.add(e * r2);
      }
    }
  }
  Accumulators acc;
  acc.n = rect.n;
  acc.m = rect.m;
  acc.s1 = s1.value();
  acc.s2 = s2.value();
  acc.s3 = s3.value();
  acc.s4 = s4.value();
  acc.s5 = s5.value();
  acc.T = t.value();
  acc.B[0][0] = b00.value();
  acc.B[1][1] = b11.value();
  acc.B[2][2] = acc.T;
  acc.B[0][1] = acc.B[1][0] = b01.value();
  acc.B[0][2] = acc.B[2][0] = b02.value();
  acc.B[1][2] = acc.B[2][1] = b12.value();
  if (eps) {
    acc.has_noise = true;
    acc.A = Vec3{a0.value(), a1.value(), a2.value()};
  }
  return acc;
}

}  // namespace

Accumulators accumulate(const Field& field, const Rect& rect) {
  return accumulate_impl(field, nullptr, rect);
}

Accumulators accumulate_with_noise(const Field& field, const NoiseMatrix& eps,
                                   const Rect& rect) {
  return accumulate_impl(field, &eps, rect);
}

Vec2 c_stat(const Accumulators& acc) {
  if (!acc.has_noise)
    throw MissingNoiseError("c_stat: accumulators carry no innovation sum");
  return Vec2{acc.A[0] - acc.A[2], acc.A[1] - acc.A[2]};
}

Mat3 adjugate3(const Mat3& m) {
  Mat3 a;
  a[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  a[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  a[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  a[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  a[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  a[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  a[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  a[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  a[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return a;
}

Estimate lse(const Accumulators& acc, const Field& response) {
  Rect rect{acc.n, acc.m};
  check_rect(response, rect);

  double det = det3(acc.B);
  double norm = frobenius3(acc.B);
  if (std::abs(det) <= kSingularRelTol * norm * norm * norm)
    throw SingularMatrixError("lse: normal-equation matrix is singular");

  KahanSum y0, y1, y2, yy;
  for (int k = 1; k <= rect.n; ++k) {
    for (int l = 1; l <= rect.m; ++l) {
      double y = response.at(k, l);
      y0.add(y * response.at(k - 1, l));
      y1.add(y * response.at(k, l - 1));
      y2.add(y * response.at(k - 1, l - 1));
      yy.add(y * y);
    }
  }
  Vec3 rhs{y0.value(), y1.value(), y2.value()};

  Estimate e;
  e.n = acc.n;
  e.m = acc.m;
  e.det_b = det;
  e.adj_b = adjugate3(acc.B);
  Vec3 num = mat_vec(e.adj_b, rhs);
  e.theta_hat = Vec3{num[0] / det, num[1] / det, num[2] / det};
  // rss = sum y^2 - 2 theta' rhs + theta' B theta
  double quad = 0.0, lin = 0.0;
  for (int i = 0; i < 3; ++i) {
    lin += e.theta_hat[i] * rhs[i];
    for (int j = 0; j < 3; ++j)
      quad += e.theta_hat[i] * acc.B[i][j] * e.theta_hat[j];
  }
  e.residual_ss = yy.value() - 2.0 * lin + quad;
  return e;
}

std::pair<double, double> det_identity(const Accumulators& acc) {
  double lhs = det3(acc.B);
  double rhs = acc.s1 * acc.s2 * acc.T + 2.0 * acc.s5 * acc.s3 * acc.s4 -
               acc.s5 * acc.s5 * acc.T - acc.s1 * acc.s4 * acc.s4 -
               acc.s2 * acc.s3 * acc.s3;
  return {lhs, rhs};
}

std::string estimate_to_json(const Estimate& e) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"theta_hat\":[" << e.theta_hat[0] << ',' << e.theta_hat[1] << ','
     << e.theta_hat[2] << "],\"det_b\":" << e.det_b << ",\"n\":" << e.n
     << ",\"m\":" << e.m << "}";
  return os.str();
}

}  // namespace ar2d

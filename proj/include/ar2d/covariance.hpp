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

#ifndef AR2D_COVARIANCE_HPP_
#define AR2D_COVARIANCE_HPP_

#include "ar2d/coeffs.hpp"
#include "ar2d/params.hpp"

namespace ar2d {

struct SitePair {
  int k1 = 0, l1 = 0, k2 = 0, l2 = 0;
};

/// Cov(X_{k1,l1}, X_{k2,l2}) summed from the moving-average coefficients.
/// A memoized per-Params G table is shared across calls.
double exact_cov(const Params& p, const SitePair& pair);

/// Closed forms on the supported strata (canonical-sign representatives and
/// their flips): vertices exactly, edges via the one-sided AR structure.
double cov_closed(const Params& p, const SitePair& pair);

/// Covariance envelopes: C sqrt(k1+l1+k2+l2) on the plus face,
/// (k1^k2)|g|^{|l1-l2|}/(1-g^2) on edge 1 and symmetrically on edge 2.
double cov_bound(const Params& p, const SitePair& pair, double face_constant);

/// Macroscopic covariance query for Y^{(n)} fields: site offsets q,r are in
/// {(0,0),(1,0),(0,1)} and (s,t) coordinates are positive.
struct CovLimitQuery {
  double s1 = 1.0, t1 = 1.0, s2 = 1.0, t2 = 1.0;
  int q1 = 0, q2 = 0, r1 = 0, r2 = 0;
};

struct CovLimit {
  double value = 0.0;
  double kappa = 0.0;  // normalization exponent: Cov / n^kappa converges
};

/// Limit of Cov(Y^{(n)}_q(s1,t1), Y^{(n)}_r(s2,t2)) / n^kappa for the
/// canonical representative of p, with kappa in {1/2, 1, 2} by region.
CovLimit variance_growth_limit(const Params& p, const CovLimitQuery& query);

}  // namespace ar2d

#endif  // AR2D_COVARIANCE_HPP_

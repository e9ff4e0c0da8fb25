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

#ifndef AR2D_ASYMPTOTICS_HPP_
#define AR2D_ASYMPTOTICS_HPP_

#include "ar2d/linalg.hpp"
#include "ar2d/params.hpp"

namespace ar2d {

/// sigma^2_{a,b} of the plus-face normalization
/// (2/3) ((1-|a| v |b|) / (pi(|a|+|b|)))^{1/2}
///   (1/((1-|a|)(1-|b|)) - 1/(5 (1-|a| ^ |b|)^2)).
double sigma_sq(double alpha, double beta);

/// Sign-pattern matrix [[1, s(ab), s(b)], [s(ab), 1, s(a)], [s(b), s(a), 1]].
Mat3 psi_matrix(double alpha, double beta);

enum class UnitAxis { kAlphaUnit, kBetaUnit };

/// Edge covariance pattern of the limiting law, for |alpha| = 1 or
/// |beta| = 1 with the other coefficient inside (-1,1).
Mat3 sigma_matrix(double alpha, double beta, UnitAxis which);

/// Vertex matrix 2 [[1,0,-b],[0,1,-a],[-b,-a,2]] for |a| = |b| = 1.
Mat3 theta_matrix(double alpha, double beta);

/// The two series of consecutive-difference squares/products of the
/// binomial-convolution law S^{(|a|,1-|b|)}, truncated over [0,K]^2 with a
/// fitted power-law tail correction.
struct RhoPair {
  double rho1_ab = 0.0;
  double rho1_ba = 0.0;
  double rho2 = 0.0;
  int truncation_k = 0;
  double tail_estimate = 0.0;  // residual error bound after tail correction
};

/// Cap on the truncation index before NonConvergence is raised.
inline constexpr int kRhoKCap = 2000;

RhoPair rho_pair(double alpha, double beta, double tol);

/// K_{a,b} = [[kappa1_{b,a}, kappa2],[kappa2, kappa1_{a,b}]] with
/// kappa1_{a,b} = (1-b^2)^{-1} + (1-a)^2 rho1_{a,b} and
/// kappa2 = (1-a)(1-b) rho2_{a,b}; coefficients taken at (|a|,|b|).
Mat2 k_matrix(double alpha, double beta, double tol);

/// Region-dispatched limiting law of the scaled LSE error:
/// rate_exponent is the power of (nm) that normalizes theta_hat - theta.
struct AsymptoticLaw {
  RegionClass region;
  double rate_exponent = 0.0;
  Mat3 covariance = zero3();
  bool supported = false;
};

/// Boundary-membership tolerance used by limit_law's region dispatch.
inline constexpr double kLawBoundaryTol = 1e-9;

/// tol is the rho-series truncation tolerance (faces only); region
/// classification uses kLawBoundaryTol.
AsymptoticLaw limit_law(const Params& p, double tol);

}  // namespace ar2d

#endif  // AR2D_ASYMPTOTICS_HPP_

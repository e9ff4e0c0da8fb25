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

#ifndef AR2D_COEFFS_HPP_
#define AR2D_COEFFS_HPP_

#include <cstdint>
#include <vector>

#include "ar2d/params.hpp"

namespace ar2d {

/// Dense table of moving-average coefficients G(m,n; alpha,beta,gamma),
/// G(0,0)=1 and G(m,n) = a G(m-1,n) + b G(m,n-1) + g G(m-1,n-1).
struct GTable {
  Params params;
  int max_m = 0;
  int max_n = 0;
  std::vector<double> values;  // row-major (max_m+1)*(max_n+1)

  double at(int m, int n) const {
    return values[std::size_t(m) * (max_n + 1) + n];
  }
};

/// Default memory cap for g_table, in table entries.
inline constexpr std::uint64_t kGTableEntryCap = 64ull << 20;

GTable g_table(const Params& p, int max_m, int max_n,
               std::uint64_t entry_cap = kGTableEntryCap);

enum class GMethod { kClosedForm, kHypergeometric, kBinomial };

/// Single coefficient by one of three independent routes:
/// the factorial closed form, the terminating Gauss hypergeometric
/// representation (needs alpha*beta != 0), or the binomial-convolution
/// identity (needs 0 <= alpha,beta < 1 and alpha+beta+gamma = 1).
double g_value(int m, int n, const Params& p, GMethod method);

/// Law of Bin(k,nu) + Bin(l,mu).
struct BinConvLaw {
  int k = 0;
  double nu = 0.0;
  int l = 0;
  double mu = 0.0;
  std::vector<double> pmf;  // length k+l+1
};

BinConvLaw binom_conv_pmf(int k, double nu, int l, double mu);

/// Mean, variance and standardization of the binomial-convolution law.
struct LocalCltFrame {
  double m_kl = 0.0;  // nu*k + mu*l
  double b_kl = 0.0;  // nu(1-nu)k + mu(1-mu)l

  LocalCltFrame(int k, double nu, int l, double mu)
      : m_kl(nu * k + mu * l),
        b_kl(nu * (1.0 - nu) * k + mu * (1.0 - mu) * l) {}

  double x(double j) const;
};

/// Gaussian density surrogate (2 pi b)^{-1/2} exp(-x_j^2 / 2).
double local_clt_approx(const LocalCltFrame& frame, int j);

/// Hoeffding rate function I_theta(x); +infinity outside [0,1].
double rate_function(double theta, double x);

enum class TailSide { kUpper, kLower };

/// exp(-(k+l) I_theta(x)) with theta = (nu k + mu l)/(k+l); dominates the
/// exact tail P(S >= (k+l)x) (upper) or P(S <= (k+l)x) (lower).
double tail_bound(int k, int l, double nu, double mu, double x, TailSide side);

}  // namespace ar2d

#endif  // AR2D_COEFFS_HPP_

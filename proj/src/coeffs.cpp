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

#include "ar2d/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ar2d/errors.hpp"

namespace ar2d {

GTable g_table(const Params& p, int max_m, int max_n,
               std::uint64_t entry_cap) {
  if (max_m < 0 || max_n < 0)
    throw DomainError("g_table: negative extents");
  std::uint64_t cells =
      (std::uint64_t(max_m) + 1) * (std::uint64_t(max_n) + 1);
  if (cells > entry_cap)
    throw CapacityError("g_table: table would exceed the entry cap");

  GTable t;
  t.params = p;
  t.max_m = max_m;
  t.max_n = max_n;
  t.values.assign(cells, 0.0);
  auto v = [&](int m, int n) -> double& {
    return t.values[std::size_t(m) * (max_n + 1) + n];
  };
  v(0, 0) = 1.0;
  for (int m = 0; m <= max_m; ++m) {
    for (int n = 0; n <= max_n; ++n) {
      if (m == 0 && n == 0) continue;
      double x = 0.0;
      if (m > 0) x += p.alpha * v(m - 1, n);
      if (n > 0) x += p.beta * v(m, n - 1);
      if (m > 0 && n > 0) x += p.gamma * v(m - 1, n - 1);
      v(m, n) = x;
    }
  }
  return t;
}

namespace {

double binom_coeff(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 0; i < k; ++i) {
    r *= double(n - i);
    r /= double(i + 1);
  }
  return r;
}

// Binomial pmf over the full support, anchored at the mode and extended by
// the multiplicative term ratio to avoid factorial overflow and underflow
// of the endpoint seeds.
std::vector<double> binom_pmf(int n, double p) {
  std::vector<double> pmf(std::size_t(n) + 1, 0.0);
  if (n == 0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  int mode = std::clamp(int(std::floor((n + 1) * p)), 0, n);
  double lp = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) -
              std::lgamma(n - mode + 1.0) + mode * std::log(p) +
              (n - mode) * std::log1p(-p);
  pmf[mode] = std::exp(lp);
  double odds = p / (1.0 - p);
  for (int i = mode; i < n; ++i)
    pmf[i + 1] = pmf[i] * (double(n - i) / double(i + 1)) * odds;
  for (int i = mode; i > 0; --i)
    pmf[i - 1] = pmf[i] * (double(i) / double(n - i + 1)) / odds;
  return pmf;
}

double closed_form_g(int m, int n, const Params& p) {
  if (m + n > 60)
    throw DomainError("g_value: closed form limited to m+n <= 60");
  const double a = p.alpha, b = p.beta, g = p.gamma;
  if (a == 0.0 && b == 0.0) return (m == n) ? std::pow(g, m) : 0.0;
  if (a == 0.0)
    return (m <= n) ? binom_coeff(n, m) * std::pow(b, n - m) * std::pow(g, m)
                    : 0.0;
  if (b == 0.0)
    return (n <= m) ? binom_coeff(m, n) * std::pow(a, m - n) * std::pow(g, n)
                    : 0.0;
  // term r of sum_{r=0}^{m^n} (m+n-r)!/((m-r)!(n-r)!r!) a^{m-r} b^{n-r} g^r,
  // updated through the ratio of consecutive terms.
  double term = binom_coeff(m + n, n) * std::pow(a, m) * std::pow(b, n);
  double sum = term;
  int top = std::min(m, n);
  for (int r = 1; r <= top; ++r) {
    term *= double(m - r + 1) * double(n - r + 1) /
            (double(m + n - r + 1) * double(r));
    term *= g / (a * b);
    sum += term;
  }
  return sum;
}

double hypergeometric_g(int m, int n, const Params& p) {
  if (p.alpha * p.beta == 0.0)
    throw DomainError("g_value: hypergeometric route requires alpha*beta != 0");
  const double z = -p.gamma / (p.alpha * p.beta);
  // F(-m,-n;-m-n;z), terminating at r = m^n; the lower-parameter factor
  // (-m-n+r) cannot vanish before termination unless m = n = 0.
  double term = 1.0;
  double f = 1.0;
  int top = std::min(m, n);
  for (int r = 0; r < top; ++r) {
    double denom = double(r - m - n);
    if (denom == 0.0) break;  // series stops at the last valid term
    term *= (double(r - m) * double(r - n)) / (denom * double(r + 1)) * z;
    f += term;
  }
  return binom_coeff(m + n, n) * std::pow(p.alpha, m) * std::pow(p.beta, n) *
         f;
}

double binomial_g(int m, int n, const Params& p) {
  if (!(p.alpha >= 0.0 && p.alpha < 1.0 && p.beta >= 0.0 && p.beta < 1.0))
    throw DomainError("g_value: binomial route requires 0 <= alpha,beta < 1");
  if (std::abs(p.alpha + p.beta + p.gamma - 1.0) > 1e-9)
    throw DomainError("g_value: binomial route requires alpha+beta+gamma = 1");
  BinConvLaw law = binom_conv_pmf(m, p.alpha, n, 1.0 - p.beta);
  return law.pmf[m];
}

}  // namespace

double g_value(int m, int n, const Params& p, GMethod method) {
  if (m < 0 || n < 0) throw DomainError("g_value: negative index");
  switch (method) {
    case GMethod::kClosedForm:
      return closed_form_g(m, n, p);
    case GMethod::kHypergeometric:
      return hypergeometric_g(m, n, p);
    case GMethod::kBinomial:
      return binomial_g(m, n, p);
  }
  throw DomainError("g_value: unknown method");
}

BinConvLaw binom_conv_pmf(int k, double nu, int l, double mu) {
  if (k < 0 || l < 0) throw DomainError("binom_conv_pmf: negative counts");
  if (!(nu >= 0.0 && nu <= 1.0 && mu >= 0.0 && mu <= 1.0))
    throw DomainError("binom_conv_pmf: probabilities must lie in [0,1]");
  BinConvLaw law;
  law.k = k;
  law.nu = nu;
  law.l = l;
  law.mu = mu;
  std::vector<double> pk = binom_pmf(k, nu);
  std::vector<double> pl = binom_pmf(l, mu);
  law.pmf.assign(std::size_t(k) + l + 1, 0.0);
  for (int i = 0; i <= k; ++i) {
    if (pk[i] == 0.0) continue;
    for (int j = 0; j <= l; ++j) law.pmf[i + j] += pk[i] * pl[j];
  }
  return law;
}

double LocalCltFrame::x(double j) const {
  return (j - m_kl) / std::sqrt(b_kl);
}

double local_clt_approx(const LocalCltFrame& frame, int j) {
  if (!(frame.b_kl > 0.0))
    throw DomainError("local_clt_approx: variance must be positive");
  double x = frame.x(j);
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI * frame.b_kl);
}

double rate_function(double theta, double x) {
  if (!(theta > 0.0 && theta < 1.0))
    throw DomainError("rate_function: theta must lie in (0,1)");
  if (x < 0.0 || x > 1.0) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  if (x > 0.0) s += x * std::log(x / theta);
  if (x < 1.0) s += (1.0 - x) * std::log((1.0 - x) / (1.0 - theta));
  return s;
}

double tail_bound(int k, int l, double nu, double mu, double x,
                  TailSide side) {
  if (k < 0 || l < 0 || k + l < 1)
    throw DomainError("tail_bound: requires k+l >= 1");
  double theta = (nu * k + mu * l) / double(k + l);
  if (!(theta > 0.0 && theta < 1.0))
    throw DomainError("tail_bound: mean fraction must lie in (0,1)");
  if (side == TailSide::kUpper && !(x > theta))
    throw DomainError("tail_bound: upper tail requires x > theta");
  if (side == TailSide::kLower && !(x < theta))
    throw DomainError("tail_bound: lower tail requires x < theta");
  return std::exp(-double(k + l) * rate_function(theta, x));
}

}  // namespace ar2d

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

#include "ar2d/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "ar2d/errors.hpp"
#include "ar2d/estimator.hpp"

namespace ar2d {

namespace {

double sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

double sigma_sq(double alpha, double beta) {
  double a = std::abs(alpha), b = std::abs(beta);
  if (!(a < 1.0 && b < 1.0))
    throw DomainError("sigma_sq: requires |alpha|,|beta| < 1");
  if (a + b <= 0.0)
    throw DomainError("sigma_sq: undefined at alpha = beta = 0");
  double hi = std::max(a, b), lo = std::min(a, b);
  return (2.0 / 3.0) * std::sqrt((1.0 - hi) / (M_PI * (a + b))) *
         (1.0 / ((1.0 - a) * (1.0 - b)) - 1.0 / (5.0 * (1.0 - lo) * (1.0 - lo)));
}

Mat3 psi_matrix(double alpha, double beta) {
  double sa = sgn(alpha), sb = sgn(beta), sab = sgn(alpha * beta);
  return Mat3{{{1.0, sab, sb}, {sab, 1.0, sa}, {sb, sa, 1.0}}};
}

Mat3 sigma_matrix(double alpha, double beta, UnitAxis which) {
  if (which == UnitAxis::kAlphaUnit) {
    if (!(std::abs(std::abs(alpha) - 1.0) <= 1e-9 && std::abs(beta) < 1.0))
      throw DomainError("sigma_matrix: needs |alpha| = 1 and |beta| < 1");
    double sa = sgn(alpha), ab = std::abs(beta);
    return Mat3{{{1.0, ab * sa, ab}, {ab * sa, 1.0, sa}, {ab, sa, 1.0}}};
  }
  if (!(std::abs(std::abs(beta) - 1.0) <= 1e-9 && std::abs(alpha) < 1.0))
    throw DomainError("sigma_matrix: needs |beta| = 1 and |alpha| < 1");
  double sb = sgn(beta), aa = std::abs(alpha);
  return Mat3{{{1.0, aa * sb, sb}, {aa * sb, 1.0, aa}, {sb, aa, 1.0}}};
}

Mat3 theta_matrix(double alpha, double beta) {
  if (!(std::abs(std::abs(alpha) - 1.0) <= 1e-9 &&
        std::abs(std::abs(beta) - 1.0) <= 1e-9))
    throw DomainError("theta_matrix: defined on vertices only");
  double a = sgn(alpha), b = sgn(beta);
  return Mat3{{{2.0, 0.0, -2.0 * b},
               {0.0, 2.0, -2.0 * a},
               {-2.0 * b, -2.0 * a, 4.0}}};
}

namespace {

// Binomial pmf on a clamped index window, anchored at the in-window point
// nearest the mode and extended by the term ratio.
struct PmfWindow {
  int lo = 0;
  std::vector<double> v;

  double at(int i) const {
    if (i < lo || i >= lo + int(v.size())) return 0.0;
    return v[std::size_t(i - lo)];
  }
};

PmfWindow pmf_window(int n, double p, double center, double halfwidth) {
  PmfWindow w;
  w.lo = std::max(0, int(std::floor(center - halfwidth)));
  int hi = std::min(n, int(std::ceil(center + halfwidth)));
  if (hi < w.lo) {
    w.lo = 0;
    hi = std::min(n, 0);
  }
  w.v.assign(std::size_t(hi - w.lo) + 1, 0.0);
  int anchor = std::clamp(int(std::floor((n + 1) * p)), w.lo, hi);
  double lp = std::lgamma(n + 1.0) - std::lgamma(anchor + 1.0) -
              std::lgamma(n - anchor + 1.0);
  if (anchor > 0) lp += anchor * std::log(p);
  if (anchor < n) lp += (n - anchor) * std::log1p(-p);
  w.v[anchor - w.lo] = std::exp(lp);
  double odds = p / (1.0 - p);
  for (int i = anchor; i < hi; ++i)
    w.v[i + 1 - w.lo] =
        w.v[i - w.lo] * (double(n - i) / double(i + 1)) * odds;
  for (int i = anchor; i > w.lo; --i)
    w.v[i - 1 - w.lo] =
        w.v[i - w.lo] * (double(i) / double(n - i + 1)) / odds;
  return w;
}

struct RowTriple {
  double r1 = 0.0;  // sum of (p_{k+1}-p_k)^2 over l
  double r2 = 0.0;  // sum of (p_{k+1}-p_k)(p_{k-1}-p_k)
  double r3 = 0.0;  // sum of (p_{k-1}-p_k)^2
};

constexpr double kBandSigmas = 16.0;

// Row k of the three difference series of S = Bin(k,nu) + Bin(l,mu),
// summed over the l band where the pmf near j = k is non-negligible.
RowTriple rho_row(int k, double nu, double mu) {
  const double W = kBandSigmas;
  double sk = std::sqrt(nu * (1.0 - nu) * k);
  double lc = (1.0 - nu) * k / mu;
  double lhi_d = lc + 8.0 / mu;
  for (int it = 0; it < 8; ++it) {
    double sl = std::sqrt(mu * (1.0 - mu) * lhi_d);
    lhi_d = lc + (W * (sk + sl) + 8.0) / mu;
  }
  double sl_c = std::sqrt(mu * (1.0 - mu) * std::max(lc, lhi_d * 0.25));
  int l_lo = std::max(0, int(std::floor(lc - (W * (sk + sl_c) + 8.0) / mu)));
  int l_hi = int(std::ceil(lhi_d));

  PmfWindow pk = pmf_window(k, nu, nu * k, W * sk + 6.0);
  RowTriple row;
  for (int l = l_lo; l <= l_hi; ++l) {
    double sl = std::sqrt(mu * (1.0 - mu) * l);
    PmfWindow pl = pmf_window(l, mu, mu * l, W * sl + 6.0);
    int ilo = std::max(pl.lo, k - 1 - (pk.lo + int(pk.v.size()) - 1));
    int ihi = std::min(pl.lo + int(pl.v.size()) - 1, k + 1 - pk.lo);
    double pm = 0.0, p0 = 0.0, pp = 0.0;
    for (int i = std::max(0, ilo); i <= ihi; ++i) {
      double w = pl.at(i);
      if (w == 0.0) continue;
      pm += w * pk.at(k - 1 - i);
      p0 += w * pk.at(k - i);
      pp += w * pk.at(k + 1 - i);
    }
    double d1 = pp - p0;
    double d2 = pm - p0;
    row.r1 += d1 * d1;
    row.r2 += d1 * d2;
    row.r3 += d2 * d2;
  }
  return row;
}

// zeta(s, a) by Euler-Maclaurin; the tail sum_{j >= a} j^{-s}.
double hurwitz_tail(double s, double a) {
  return std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s) +
         s * std::pow(a, -s - 1.0) / 12.0 -
         s * (s + 1.0) * (s + 2.0) * std::pow(a, -s -  3.0) / 720.0;
}

// Least-squares fit of r_j ~ j^{-3/2} (c0 + c1 (K0/j) + c2 (K0/j)^2) over
// j in [lo, hi]; returns the fitted tail sum_{j > hi}. Set terms = 2 for
// the quadratic-free variant.
double fitted_tail(const std::vector<double>& rows, int lo, int hi, int terms) {
  double k0 = double(hi);
  Mat3 ata = zero3();
  Vec3 atb{0, 0, 0};
  for (int j = lo; j <= hi; ++j) {
    double g = rows[std::size_t(j)] * std::pow(double(j), 1.5);
    double t = k0 / double(j);
    std::array<double, 3> x{1.0, t, t * t};
    for (int u = 0; u < terms; ++u) {
      atb[u] += x[u] * g;
      for (int v = 0; v < terms; ++v) ata[u][v] += x[u] * x[v];
    }
  }
  for (int u = terms; u < 3; ++u) ata[u][u] = 1.0;
  double det = det3(ata);
  Mat3 adj = adjugate3(ata);
  Vec3 c = mat_vec(adj, atb);
  for (auto& x : c) x /= det;
  // c0 j^{-3/2} + c1 K0 j^{-5/2} + c2 K0^2 j^{-7/2}, summed over j > hi
  double a = double(hi) + 1.0;
  double tail = c[0] * hurwitz_tail(1.5, a);
  if (terms > 1) tail += c[1] * k0 * hurwitz_tail(2.5, a);
  if (terms > 2) tail += c[2] * k0 * k0 * hurwitz_tail(3.5, a);
  return tail;
}

struct RhoKey {
  double a, b, tol;
  bool operator<(const RhoKey& o) const {
    return std::tie(a, b, tol) < std::tie(o.a, o.b, o.tol);
  }
};

}  // namespace

RhoPair rho_pair(double alpha, double beta, double tol) {
  double a = std::abs(alpha), b = std::abs(beta);
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
    throw DomainError("rho_pair: requires 0 < |alpha|,|beta| < 1");
  if (!(tol > 0.0)) throw DomainError("rho_pair: tolerance must be positive");

  static std::mutex mu_cache;
  static std::map<RhoKey, RhoPair> cache;
  {
    std::lock_guard<std::mutex> lock(mu_cache);
    auto it = cache.find(RhoKey{a, b, tol});
    if (it != cache.end()) return it->second;
  }

  const double nu = a;
  const double mu = 1.0 - b;
  std::vector<double> rows1, rows2, rows3;
  RhoPair out;
  bool converged = false;
  const std::array<int, 9> stages{64,  128,  256,  384,      512,
                                  768, 1024, 1536, kRhoKCap};
  int done = -1;
  for (int stage : stages) {
    for (int k = done + 1; k <= stage; ++k) {
      RowTriple row = rho_row(k, nu, mu);
      rows1.push_back(row.r1);
      rows2.push_back(row.r2);
      rows3.push_back(row.r3);
    }
    done = stage;
    int lo = std::max(8, stage / 2);
    // The truncated mass itself is added back through the fitted tail, so
    // convergence is judged on the extrapolation residual: the spread
    // between the two- and three-term tail models, with a safety factor.
    double uncertainty = 0.0;
    double tails[3];
    const std::vector<double>* rs[3] = {&rows1, &rows2, &rows3};
    for (int i = 0; i < 3; ++i) {
      double t3 = fitted_tail(*rs[i], lo, stage, 3);
      double t2 = fitted_tail(*rs[i], lo, stage, 2);
      tails[i] = t3;
      uncertainty = std::max(uncertainty, 2.0 * std::abs(t3 - t2));
    }
    if (stage >= 128 && uncertainty < tol) {
      KahanSum s1, s2, s3;
      for (double x : rows1) s1.add(x);
      for (double x : rows2) s2.add(x);
      for (double x : rows3) s3.add(x);
      out.rho1_ab = s1.value() + tails[0];
      out.rho2 = s2.value() + tails[1];
      out.rho1_ba = s3.value() + tails[2];
      out.truncation_k = stage;
      out.tail_estimate = uncertainty;
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NonConvergenceError(
        "rho_pair: tolerance not reached before the truncation cap");

  std::lock_guard<std::mutex> lock(mu_cache);
  cache[RhoKey{a, b, tol}] = out;
  return out;
}

Mat2 k_matrix(double alpha, double beta, double tol) {
  double a = std::abs(alpha), b = std::abs(beta);
  RhoPair rho = rho_pair(a, b, tol);
  double k1_ab = 1.0 / (1.0 - b * b) + (1.0 - a) * (1.0 - a) * rho.rho1_ab;
  double k1_ba = 1.0 / (1.0 - a * a) + (1.0 - b) * (1.0 - b) * rho.rho1_ba;
  double k2 = (1.0 - a) * (1.0 - b) * rho.rho2;
  return Mat2{{{k1_ba, k2}, {k2, k1_ab}}};
}

AsymptoticLaw limit_law(const Params& p, double tol) {
  AsymptoticLaw law;
  law.region = classify(p, kLawBoundaryTol);
  switch (law.region.tag) {
    case RegionTag::kVertex: {
      law.rate_exponent = 0.75;
      law.covariance = theta_matrix(sgn(p.alpha), sgn(p.beta));
      law.supported = true;
      return law;
    }
    case RegionTag::kEdge1: {
      law.rate_exponent = 0.5;
      law.covariance = adjugate3(sigma_matrix(sgn(p.alpha), p.beta,
                                              UnitAxis::kAlphaUnit));
      law.supported = true;
      return law;
    }
    case RegionTag::kEdge2: {
      law.rate_exponent = 0.5;
      law.covariance =
          adjugate3(sigma_matrix(p.alpha, sgn(p.beta), UnitAxis::kBetaUnit));
      law.supported = true;
      return law;
    }
    case RegionTag::kFacePlus: {
      auto [pc, flip] = canonicalize(p);
      Mat2 k = k_matrix(pc.alpha, pc.beta, tol);
      double det = k[0][0] * k[1][1] - k[0][1] * k[1][0];
      Mat2 kinv{{{k[1][1] / det, -k[0][1] / det},
                 {-k[1][0] / det, k[0][0] / det}}};
      // H^T K^{-1} H with H = [[1,0,-1],[0,1,-1]], conjugated by the flip.
      const double h[2][3] = {{1, 0, -1}, {0, 1, -1}};
      Mat3 m = zero3();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int u = 0; u < 2; ++u)
            for (int v = 0; v < 2; ++v)
              m[i][j] += h[u][i] * kinv[u][v] * h[v][j];
      law.covariance =
          diag_conjugate(m, Vec3{double(flip.d1), double(flip.d2),
                                 double(flip.d3)});
      law.rate_exponent = 0.5;
      law.supported = true;
      return law;
    }
    default:
      law.supported = false;
      law.rate_exponent = 0.0;
      return law;
  }
}

}  // namespace ar2d

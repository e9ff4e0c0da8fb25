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

#include "ar2d/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "ar2d/errors.hpp"

namespace ar2d {

namespace {

// One G table per parameter triple, grown on demand and shared across
// calls; acceptance sweeps evaluate thousands of pairs per triple.
const GTable& shared_table(const Params& p, int need_m, int need_n) {
  using Key = std::tuple<double, double, double>;
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<GTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[Key{p.alpha, p.beta, p.gamma}];
  if (!slot || slot->max_m < need_m || slot->max_n < need_n) {
    int m = std::max(need_m, slot ? slot->max_m : 0);
    int n = std::max(need_n, slot ? slot->max_n : 0);
    slot = std::make_unique<GTable>(g_table(p, m, n));
  }
  return *slot;
}

double checked_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

double exact_cov(const Params& p, const SitePair& pair) {
  if (pair.k1 < 0 || pair.l1 < 0 || pair.k2 < 0 || pair.l2 < 0)
    throw DomainError("exact_cov: negative site coordinate");
  if (pair.k1 == 0 || pair.l1 == 0 || pair.k2 == 0 || pair.l2 == 0)
    return 0.0;
  int km = std::min(pair.k1, pair.k2);
  int lm = std::min(pair.l1, pair.l2);
  const GTable& g = shared_table(p, std::max(pair.k1, pair.k2) - 1,
                                 std::max(pair.l1, pair.l2) - 1);
  double s = 0.0;
  for (int i = 1; i <= km; ++i) {
    for (int j = 1; j <= lm; ++j) {
      s += g.at(pair.k1 - i, pair.l1 - j) * g.at(pair.k2 - i, pair.l2 - j);
    }
  }
  return s;
}

double cov_closed(const Params& p, const SitePair& pair) {
  RegionClass rc = classify(p);
  if (pair.k1 == 0 || pair.l1 == 0 || pair.k2 == 0 || pair.l2 == 0)
    return 0.0;
  int km = std::min(pair.k1, pair.k2);
  int lm = std::min(pair.l1, pair.l2);

  if (rc.tag == RegionTag::kVertex) {
    // Exact at every vertex: signs carry through alpha^{|dk|} beta^{|dl|}.
    return double(km) * double(lm) *
           checked_pow(p.alpha, std::abs(pair.k1 - pair.k2)) *
           checked_pow(p.beta, std::abs(pair.l1 - pair.l2));
  }
  if (rc.tag != RegionTag::kEdge1 && rc.tag != RegionTag::kEdge2)
    throw DomainError("cov_closed: supported on edges and vertices only");

  auto [pc, flip] = canonicalize(p);
  double phase = flip_phase(flip, pair.k1, pair.l1) *
                 flip_phase(flip, pair.k2, pair.l2);
  if (rc.tag == RegionTag::kEdge1) {
    // alpha = 1, gamma = -beta: X is a row sum of column AR(1) chains.
    double b = pc.beta;
    double v = double(km) * checked_pow(b, std::abs(pair.l1 - pair.l2)) *
               (1.0 - checked_pow(b, 2 * lm)) / (1.0 - b * b);
    return phase * v;
  }
  double a = pc.alpha;
  double v = double(lm) * checked_pow(a, std::abs(pair.k1 - pair.k2)) *
             (1.0 - checked_pow(a, 2 * km)) / (1.0 - a * a);
  return phase * v;
}

double cov_bound(const Params& p, const SitePair& pair, double face_constant) {
  RegionClass rc = classify(p);
  double g2 = p.gamma * p.gamma;
  switch (rc.tag) {
    case RegionTag::kFacePlus:
      if (!(face_constant > 0.0))
        throw DomainError("cov_bound: face case needs a positive constant");
      return face_constant *
             std::sqrt(double(pair.k1 + pair.l1 + pair.k2 + pair.l2));
    case RegionTag::kEdge1:
      return double(std::min(pair.k1, pair.k2)) *
             std::pow(std::abs(p.gamma), std::abs(pair.l1 - pair.l2)) /
             (1.0 - g2);
    case RegionTag::kEdge2:
      return double(std::min(pair.l1, pair.l2)) *
             std::pow(std::abs(p.gamma), std::abs(pair.k1 - pair.k2)) /
             (1.0 - g2);
    default:
      throw DomainError("cov_bound: supported on the plus face and edges 1,2");
  }
}

CovLimit variance_growth_limit(const Params& p, const CovLimitQuery& q) {
  if (!(q.s1 > 0 && q.t1 > 0 && q.s2 > 0 && q.t2 > 0))
    throw DomainError("variance_growth_limit: coordinates must be positive");
  auto [pc, flip] = canonicalize(p);
  (void)flip;
  RegionClass rc = classify(pc);
  const double a = pc.alpha, b = pc.beta;
  CovLimit out;
  switch (rc.tag) {
    case RegionTag::kVertex:
      out.kappa = 2.0;
      out.value = std::min(q.s1, q.s2) * std::min(q.t1, q.t2);
      return out;
    case RegionTag::kEdge1:
      out.kappa = 1.0;
      out.value = (q.t1 == q.t2)
                      ? std::min(q.s1, q.s2) *
                            checked_pow(b, std::abs(q.q2 - q.r2)) /
                            (1.0 - pc.gamma * pc.gamma)
                      : 0.0;
      return out;
    case RegionTag::kEdge2:
      out.kappa = 1.0;
      out.value = (q.s1 == q.s2)
                      ? std::min(q.t1, q.t2) *
                            checked_pow(a, std::abs(q.q1 - q.r1)) /
                            (1.0 - pc.gamma * pc.gamma)
                      : 0.0;
      return out;
    case RegionTag::kFacePlus: {
      if (!(std::abs(a + b + pc.gamma - 1.0) <= 1e-9 && a >= 0.0 &&
            b >= 0.0 && a < 1.0 && b < 1.0 && a + b > 0.0))
        throw DomainError(
            "variance_growth_limit: face case requires the canonical "
            "alpha+beta+gamma = 1 stratum");
      out.kappa = 0.5;
      if (q.s1 == q.s2 && q.t1 == q.t2) {
        double num = std::min(std::sqrt((1.0 - a) * q.s1),
                              std::sqrt((1.0 - b) * q.t1));
        out.value = num / (std::sqrt(M_PI) * std::sqrt(a + b) * (1.0 - a) *
                           (1.0 - b));
        return out;
      }
      if ((1.0 - a) * (q.s1 - q.s2) != (1.0 - b) * (q.t1 - q.t2)) {
        out.value = 0.0;
        return out;
      }
      throw DomainError(
          "variance_growth_limit: distinct points on the resonance ridge "
          "(1-alpha)(s1-s2) = (1-beta)(t1-t2) are not covered");
    }
    default:
      throw DomainError(
          "variance_growth_limit: no limit on this region (plus face, "
          "edges 1,2 and vertices only)");
  }
}

}  // namespace ar2d

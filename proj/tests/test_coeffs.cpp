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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ar2d/coeffs.hpp"
#include "ar2d/errors.hpp"
#include "test_util.hpp"

using namespace ar2d;
using ar2d_test::TestRng;

TEST_CASE("g_table: anchor values and the face probability property") {
  Params p{0.3, 0.5, 0.2};
  GTable t = g_table(p, 10, 10);
  CHECK(t.at(0, 0) == 1.0);
  CHECK(t.at(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t.at(2, 1) == doctest::Approx(0.255).epsilon(1e-14));

  GTable v = g_table(Params{1, 1, -1}, 10, 10);
  for (int m = 0; m <= 10; ++m)
    for (int n = 0; n <= 10; ++n) CHECK(v.at(m, n) == doctest::Approx(1.0));

  // on the plus face the coefficients are probabilities
  for (int m = 0; m <= 10; ++m)
    for (int n = 0; n <= 10; ++n) {
      CHECK(t.at(m, n) >= 0.0);
      CHECK(t.at(m, n) <= 1.0);
    }

  CHECK(g_table(p, 0, 0).at(0, 0) == 1.0);
  CHECK_THROWS_AS(g_table(p, 1 << 13, 1 << 13), CapacityError);
}

TEST_CASE("g_value: examples on every route") {
  Params p{0.3, 0.5, 0.2};
  CHECK(g_value(1, 1, p, GMethod::kClosedForm) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g_value(2, 1, p, GMethod::kBinomial) ==
        doctest::Approx(0.255).epsilon(1e-13));
  for (auto [m, n] : {std::pair{0, 0}, std::pair{3, 2}, std::pair{5, 5}})
    CHECK(g_value(m, n, Params{1, 1, -1}, GMethod::kClosedForm) ==
          doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(g_value(1, 1, Params{0, 0.5, 0.5}, GMethod::kHypergeometric),
                  DomainError);
  CHECK_THROWS_AS(g_value(40, 40, p, GMethod::kClosedForm), DomainError);
  CHECK_THROWS_AS(g_value(1, 1, Params{0.3, 0.5, 0.3}, GMethod::kBinomial),
                  DomainError);
}

TEST_CASE("g_value: routes agree with the table recursion") {
  TestRng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    // signs from the flip orbit: alpha*beta*gamma >= 0 keeps each route a
    // one-signed series, so relative comparisons are well posed
    double a = rng.uniform(0.25, 0.9);
    double b = rng.uniform(0.25, 0.9);
    double g = std::min(rng.uniform(0.1, 1.4) * a * b, 0.95);
    int d1 = rng.sign(), d2 = rng.sign();
    Params p{d1 * a, d2 * b, d1 * d2 * g};
    GTable t = g_table(p, 30, 30);
    for (int m = 0; m <= 30; m += 3) {
      for (int n = 0; n <= 30; n += 3) {
        double ref = t.at(m, n);
        double scale = std::max(std::abs(ref), 1e-30);
        CHECK(std::abs(g_value(m, n, p, GMethod::kClosedForm) - ref) <=
              1e-9 * scale);
        CHECK(std::abs(g_value(m, n, p, GMethod::kHypergeometric) - ref) <=
              1e-9 * scale);
      }
    }
  }
  // plus-face points: the binomial identity holds to 1e-10
  for (int trial = 0; trial < 5; ++trial) {
    double a = rng.uniform(0.05, 0.9);
    double b = rng.uniform(0.05, 0.95 - a);
    Params p{a, b, 1 - a - b};
    GTable t = g_table(p, 30, 30);
    for (int m = 0; m <= 30; m += 5)
      for (int n = 0; n <= 30; n += 5)
        CHECK(std::abs(g_value(m, n, p, GMethod::kBinomial) - t.at(m, n)) <=
              1e-10 * std::max(std::abs(t.at(m, n)), 1e-30));
  }
}

TEST_CASE("binom_conv_pmf: examples and normalization") {
  BinConvLaw law = binom_conv_pmf(1, 0.3, 1, 0.5);
  REQUIRE(law.pmf.size() == 3);
  CHECK(law.pmf[0] == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(law.pmf[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(law.pmf[2] == doctest::Approx(0.15).epsilon(1e-14));

  BinConvLaw degenerate = binom_conv_pmf(4, 0.0, 3, 0.0);
  CHECK(degenerate.pmf[0] == 1.0);
  for (std::size_t j = 1; j < degenerate.pmf.size(); ++j)
    CHECK(degenerate.pmf[j] == 0.0);

  CHECK(binom_conv_pmf(0, 0.4, 0, 0.7).pmf ==
        std::vector<double>{1.0});

  CHECK_THROWS_AS(binom_conv_pmf(3, 1.2, 2, 0.5), DomainError);

  TestRng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    int k = rng.uniform_int(0, 80);
    int l = rng.uniform_int(0, 80);
    if (trial >= 17) {  // exercise large counts
      k = rng.uniform_int(300, 400);
      l = rng.uniform_int(300, 400);
    }
    BinConvLaw big = binom_conv_pmf(k, rng.uniform(), l, rng.uniform());
    double sum = 0.0;
    for (double x : big.pmf) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("local_clt_approx: frame values and fitted error constant") {
  LocalCltFrame f(50, 0.3, 50, 0.5);
  CHECK(f.m_kl == doctest::Approx(40.0));
  CHECK(f.b_kl == doctest::Approx(23.0));
  CHECK(local_clt_approx(f, 40) ==
        doctest::Approx(1.0 / std::sqrt(2 * M_PI * 23.0)).epsilon(1e-12));

  LocalCltFrame bad(0, 0.3, 0, 0.5);
  CHECK_THROWS_AS(local_clt_approx(bad, 0), DomainError);

  // fit C at (10,10), then the stated O(1/b) envelope holds at larger sizes
  double nu = 0.3, mu = 0.5;
  auto max_err = [&](int k, int l) {
    BinConvLaw law = binom_conv_pmf(k, nu, l, mu);
    LocalCltFrame fr(k, nu, l, mu);
    double worst = 0.0;
    for (int j = 0; j <= k + l; ++j)
      worst = std::max(worst, std::abs(law.pmf[j] - local_clt_approx(fr, j)));
    return worst;
  };
  LocalCltFrame f10(10, nu, 10, mu);
  double c_fit = 1.5 * max_err(10, 10) * f10.b_kl;
  for (auto [k, l] : {std::pair{20, 20}, std::pair{40, 25}, std::pair{30, 60},
                      std::pair{80, 80}}) {
    LocalCltFrame fr(k, nu, l, mu);
    CHECK(max_err(k, l) <= c_fit / fr.b_kl);
  }
}

TEST_CASE("first differences decay like 1/b (no blow-up across sizes)") {
  double nu = 0.3, mu = 0.5;
  auto scaled_diff = [&](int klo, int khi) {
    double worst = 0.0;
    for (int k = klo; k <= khi; k += 5) {
      for (int l = klo; l <= khi; l += 5) {
        BinConvLaw law = binom_conv_pmf(k, nu, l, mu);
        LocalCltFrame fr(k, nu, l, mu);
        for (int j = 0; j + 1 <= k + l; ++j)
          worst = std::max(worst,
                           fr.b_kl * std::abs(law.pmf[j + 1] - law.pmf[j]));
      }
    }
    return worst;
  };
  CHECK(scaled_diff(10, 50) <= 1.5 * scaled_diff(10, 20));
}

TEST_CASE("rate_function: zeros, endpoint values, infinities") {
  for (double theta : {0.1, 0.4, 0.9})
    CHECK(rate_function(theta, theta) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rate_function(0.5, 1.0) == doctest::Approx(std::log(2.0)));
  CHECK(std::isinf(rate_function(0.5, 1.1)));
  CHECK(std::isinf(rate_function(0.5, -0.1)));
  CHECK_THROWS_AS(rate_function(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(rate_function(1.0, 0.5), DomainError);
}

TEST_CASE("tail_bound: example, limit at theta, and domination") {
  double i = rate_function(0.4, 0.9);
  CHECK(tail_bound(1, 1, 0.3, 0.5, 0.9, TailSide::kUpper) ==
        doctest::Approx(std::exp(-2.0 * i)).epsilon(1e-13));
  CHECK(tail_bound(1, 1, 0.3, 0.5, 0.9, TailSide::kUpper) ==
        doctest::Approx(0.33241).epsilon(1e-4));
  // exact upper tail P(S >= 1.8) = P(S=2) = 0.15 is dominated
  CHECK(0.15 <= tail_bound(1, 1, 0.3, 0.5, 0.9, TailSide::kUpper));

  CHECK(tail_bound(3, 4, 0.3, 0.5, (0.3 * 3 + 0.5 * 4) / 7.0 + 1e-9,
                   TailSide::kUpper) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(tail_bound(1, 1, 0.3, 0.5, 0.2, TailSide::kUpper),
                  DomainError);
  CHECK_THROWS_AS(tail_bound(1, 1, 0.3, 0.5, 0.9, TailSide::kLower),
                  DomainError);

  // domination sweep on a smaller grid than the acceptance run
  double nu = 0.3, mu = 0.5;
  for (int k = 1; k <= 25; k += 4) {
    for (int l = 1; l <= 25; l += 4) {
      BinConvLaw law = binom_conv_pmf(k, nu, l, mu);
      double theta = (nu * k + mu * l) / (k + l);
      for (int gi = 1; gi <= 10; ++gi) {
        double x = theta + (1.0 - theta) * gi / 11.0;
        double exact = 0.0;
        for (int j = int(std::ceil((k + l) * x)); j <= k + l; ++j)
          exact += law.pmf[j];
        CHECK(exact <= tail_bound(k, l, nu, mu, x, TailSide::kUpper));
        double xl = theta * gi / 11.0;
        double exact_lo = 0.0;
        for (int j = 0; j <= int(std::floor((k + l) * xl)); ++j)
          exact_lo += law.pmf[j];
        CHECK(exact_lo <= tail_bound(k, l, nu, mu, xl, TailSide::kLower));
      }
    }
  }
}

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

#include "ar2d/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "ar2d/errors.hpp"
#include "ar2d/estimator.hpp"
#include "ar2d/rng.hpp"
#include "ar2d/stats.hpp"

namespace ar2d {

int worker_count() {
  if (const char* env = std::getenv("AR2D_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

CovComparison compare_cov(const Mat3& empirical, const Mat3& theoretical,
                          int n_eff, double entry_floor) {
  CovComparison c;
  double fro_gap = 0.0, fro_theo = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double gap = empirical[i][j] - theoretical[i][j];
      fro_gap += gap * gap;
      fro_theo += theoretical[i][j] * theoretical[i][j];
      c.max_abs_entry_gap = std::max(c.max_abs_entry_gap, std::abs(gap));
      if (std::abs(theoretical[i][j]) > entry_floor)
        c.max_rel_entry_gap =
            std::max(c.max_rel_entry_gap,
                     std::abs(gap) / std::abs(theoretical[i][j]));
      // Gaussian fourth-moment variance of a covariance estimate.
      double var = (theoretical[i][i] * theoretical[j][j] +
                    theoretical[i][j] * theoretical[i][j]) /
                   std::max(1, n_eff - 1);
      c.z_scores[i][j] = var > 0.0 ? gap / std::sqrt(var) : 0.0;
    }
  }
  c.frobenius_rel =
      fro_theo > 0.0 ? std::sqrt(fro_gap / fro_theo) : std::sqrt(fro_gap);
  return c;
}

RateFit rate_fit(const std::vector<int>& sizes,
                 const std::vector<double>& median_abs_errors) {
  if (sizes.size() < 3)
    throw DomainError("rate_fit: need at least three sizes");
  if (sizes.size() != median_abs_errors.size())
    throw DomainError("rate_fit: size/error length mismatch");
  std::size_t n = sizes.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(double(sizes[i]));
    ys[i] = std::log(median_abs_errors[i]);
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = ys[i] - my - fit.slope * (xs[i] - mx);
    rss += e * e;
  }
  fit.stderr = std::sqrt(rss / double(n - 2) / sxx);
  return fit;
}

namespace {

struct ReplicateResult {
  Vec3 theta_hat{0, 0, 0};
  double det_b = 0.0;
  bool excluded = false;
};

std::uint64_t size_token(int n, int m) {
  return (std::uint64_t(std::uint32_t(n)) << 32) | std::uint32_t(m);
}

double median(std::vector<double> v) {
  std::size_t h = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + h, v.end());
  double hi = v[h];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + h - 1, v.end());
  return 0.5 * (v[h - 1] + hi);
}

}  // namespace

MCReport run_experiment(const MCConfig& cfg, std::vector<RawRecord>* raw) {
  if (cfg.replicates < 2)
    throw DomainError("run_experiment: need at least two replicates");
  if (cfg.sizes.empty()) throw DomainError("run_experiment: no sizes");
  for (const auto& [n, m] : cfg.sizes) {
    if (n < 2 || m < 2) throw DomainError("run_experiment: sizes must be >= 2");
    // all m/n equal, in exact rational arithmetic
    if (std::int64_t(m) * cfg.sizes[0].first !=
        std::int64_t(cfg.sizes[0].second) * n)
      throw DomainError("run_experiment: sizes must share one aspect ratio");
  }

  MCReport report;
  report.config = cfg;
  report.law = limit_law(cfg.params, cfg.rho_tol);
  if (!report.law.supported && !cfg.raw_output)
    throw DomainError(
        "run_experiment: no supported limit law for this region (use raw "
        "output mode)");

  const Vec3 theta{cfg.params.alpha, cfg.params.beta, cfg.params.gamma};
  std::vector<int> fit_sizes;
  std::vector<double> fit_medians;

  for (const auto& [n, m] : cfg.sizes) {
    std::vector<ReplicateResult> results(cfg.replicates);
    std::atomic<int> next{0};
    auto body = [&]() {
      for (;;) {
        int r = next.fetch_add(1);
        if (r >= cfg.replicates) return;
        NoiseSpec spec{cfg.noise_kind,
                       derive_seed(cfg.base_seed, size_token(n, m),
                                   std::uint64_t(r))};
        NoiseMatrix eps = draw_noise(spec, n, m);
        Field field = simulate_recursion(cfg.params, eps);
        Accumulators acc = accumulate(field, Rect{n, m});
        try {
          Estimate e = lse(acc, field);
          results[r].theta_hat = e.theta_hat;
          results[r].det_b = e.det_b;
        } catch (const SingularMatrixError&) {
          results[r].excluded = true;
          results[r].det_b = det3(acc.B);
        }
      }
    };
    int workers = std::min(worker_count(), cfg.replicates);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();

    SizeReport sr;
    sr.n = n;
    sr.m = m;
    double scale = report.law.supported
                       ? std::pow(double(n) * double(m),
                                  report.law.rate_exponent)
                       : 1.0;
    std::vector<Vec3> scaled;
    std::vector<double> abs_errors;
    scaled.reserve(cfg.replicates);
    for (int r = 0; r < cfg.replicates; ++r) {
      if (raw)
        raw->push_back(RawRecord{n, m, r, results[r].theta_hat,
                                 results[r].det_b, results[r].excluded});
      if (results[r].excluded) {
        ++sr.excluded;
        continue;
      }
      Vec3 err{results[r].theta_hat[0] - theta[0],
               results[r].theta_hat[1] - theta[1],
               results[r].theta_hat[2] - theta[2]};
      abs_errors.push_back(std::sqrt(err[0] * err[0] + err[1] * err[1] +
                                     err[2] * err[2]));
      scaled.push_back(Vec3{scale * err[0], scale * err[1], scale * err[2]});
    }
    sr.n_eff = int(scaled.size());
    if (sr.excluded * 100 > cfg.replicates)
      throw Error("run_experiment: more than 1% of replicates were singular");
    if (sr.n_eff < 2)
      throw Error("run_experiment: not enough usable replicates");

    for (int c = 0; c < 3; ++c) {
      KahanSum s;
      for (const auto& v : scaled) s.add(v[c]);
      sr.empirical_mean[c] = s.value() / double(sr.n_eff);
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        KahanSum s;
        for (const auto& v : scaled)
          s.add((v[i] - sr.empirical_mean[i]) * (v[j] - sr.empirical_mean[j]));
        sr.empirical_cov[i][j] = sr.empirical_cov[j][i] =
            s.value() / double(sr.n_eff - 1);
      }
    }
    if (report.law.supported) {
      // Shape test: studentized marginals against the standard normal,
      // skipped where the limiting variance is zero.
      for (int c = 0; c < 3; ++c) {
        if (report.law.covariance[c][c] <= 0.0) {
          sr.ks_pvalues[c] = -1.0;
          continue;
        }
        double sd = std::sqrt(sr.empirical_cov[c][c]);
        std::vector<double> z;
        z.reserve(scaled.size());
        for (const auto& v : scaled)
          z.push_back((v[c] - sr.empirical_mean[c]) / sd);
        sr.ks_pvalues[c] = ks_test_normal(std::move(z));
      }
      sr.comparison = compare_cov(sr.empirical_cov, report.law.covariance,
                                  sr.n_eff, cfg.cov_entry_floor);
    }
    sr.median_abs_error = median(std::move(abs_errors));
    fit_sizes.push_back(n);
    fit_medians.push_back(sr.median_abs_error);
    report.per_size.push_back(sr);
  }

  if (fit_sizes.size() >= 3) {
    report.rate = rate_fit(fit_sizes, fit_medians);
    report.rate_available = true;
  }

  report.passed = true;
  if (report.law.supported) {
    const SizeReport& last = report.per_size.back();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double theo = report.law.covariance[i][j];
        double gap = std::abs(last.empirical_cov[i][j] - theo);
        if (std::abs(theo) > cfg.cov_entry_floor) {
          if (gap / std::abs(theo) > cfg.cov_rel_tol) report.passed = false;
        } else if (gap > cfg.cov_abs_tol) {
          report.passed = false;
        }
      }
    }
    for (int c = 0; c < 3; ++c)
      if (last.ks_pvalues[c] >= 0.0 && last.ks_pvalues[c] < cfg.ks_min_p)
        report.passed = false;
  }
  return report;
}

WienerSamples wiener_functionals(int grid, int samples, std::uint64_t seed) {
  if (grid < 10) throw DomainError("wiener_functionals: grid must be >= 10");
  WienerSamples out;
  out.w2.reserve(samples);
  out.wdw.reserve(samples);
  double inv_g = 1.0 / double(grid);
  Params unit_root{1.0, 1.0, -1.0};  // cumulative double sum
  for (int s = 0; s < samples; ++s) {
    NoiseSpec spec{NoiseKind::kGaussian, derive_seed(seed, 0x77EEAA, s)};
    NoiseMatrix dw = draw_noise(spec, grid, grid);
    Field w = simulate_recursion(unit_root, dw);
    // Riemann sum over lower-left corners (the lattice statistics it is
    // compared against sum the (k-1,l-1) values) and the Ito-type sum.
    KahanSum w2, wdw;
    for (int i = 1; i <= grid; ++i) {
      for (int j = 1; j <= grid; ++j) {
        double wll = w.at(i - 1, j - 1) * inv_g;
        w2.add(wll * wll);
        wdw.add(wll * dw.at(i, j) * inv_g);
      }
    }
    out.w2.push_back(w2.value() * inv_g * inv_g);
    out.wdw.push_back(wdw.value());
  }
  return out;
}

namespace {

nlohmann::json mat_to_json(const Mat3& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    rows.push_back({m[i][0], m[i][1], m[i][2]});
  return rows;
}

}  // namespace

std::string report_to_json(const MCReport& report) {
  nlohmann::json j;
  j["params"] = {{"alpha", report.config.params.alpha},
                 {"beta", report.config.params.beta},
                 {"gamma", report.config.params.gamma}};
  j["noise"] = to_string(report.config.noise_kind);
  j["base_seed"] = report.config.base_seed;
  j["replicates"] = report.config.replicates;
  j["law"] = {{"region", region_name(report.law.region.tag)},
              {"supported", report.law.supported},
              {"rate_exponent", report.law.rate_exponent},
              {"covariance", mat_to_json(report.law.covariance)}};
  nlohmann::json sizes = nlohmann::json::array();
  for (const auto& sr : report.per_size) {
    nlohmann::json s;
    s["n"] = sr.n;
    s["m"] = sr.m;
    s["n_eff"] = sr.n_eff;
    s["excluded"] = sr.excluded;
    s["empirical_mean"] = {sr.empirical_mean[0], sr.empirical_mean[1],
                           sr.empirical_mean[2]};
    s["empirical_cov"] = mat_to_json(sr.empirical_cov);
    s["ks_pvalues"] = {sr.ks_pvalues[0], sr.ks_pvalues[1], sr.ks_pvalues[2]};
    s["median_abs_error"] = sr.median_abs_error;
    s["cov_comparison"] = {{"max_abs_entry_gap", sr.comparison.max_abs_entry_gap},
                           {"max_rel_entry_gap", sr.comparison.max_rel_entry_gap},
                           {"frobenius_rel", sr.comparison.frobenius_rel},
                           {"z_scores", mat_to_json(sr.comparison.z_scores)}};
    sizes.push_back(s);
  }
  j["per_size"] = sizes;
  if (report.rate_available)
    j["rate"] = {{"slope", report.rate.slope},
                 {"stderr", report.rate.stderr}};
  j["passed"] = report.passed;
  return j.dump(2);
}

void write_raw_csv(const std::vector<RawRecord>& raw, std::ostream& out) {
  out << "size,replicate,alpha_hat,beta_hat,gamma_hat,detB\n";
  out.precision(17);
  for (const auto& r : raw) {
    out << r.n << ',' << r.replicate << ',' << r.theta_hat[0] << ','
        << r.theta_hat[1] << ',' << r.theta_hat[2] << ',' << r.det_b << '\n';
  }
}

}  // namespace ar2d

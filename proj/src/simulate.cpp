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

#include "ar2d/simulate.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ar2d/coeffs.hpp"
#include "ar2d/errors.hpp"
#include "ar2d/rng.hpp"

namespace ar2d {

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "gaussian") return NoiseKind::kGaussian;
  if (s == "rademacher") return NoiseKind::kRademacher;
  if (s == "uniform") return NoiseKind::kUniform;
  throw ParseError("unknown noise kind: " + s);
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kGaussian:
      return "gaussian";
    case NoiseKind::kRademacher:
      return "rademacher";
    case NoiseKind::kUniform:
      return "uniform";
  }
  return "gaussian";
}

NoiseMatrix draw_noise(const NoiseSpec& spec, int n, int m) {
  if (n < 1 || m < 1) throw DomainError("draw_noise: lattice must be >= 1x1");
  NoiseMatrix eps(n, m);
  const double sqrt3 = std::sqrt(3.0);
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= m; ++l) {
      std::uint64_t w = counter_word(spec.seed, std::uint64_t(k),
                                     std::uint64_t(l));
      double value = 0.0;
      switch (spec.kind) {
        case NoiseKind::kGaussian:
          value = normal_quantile(u64_to_open_unit(w));
          break;
        case NoiseKind::kRademacher:
          value = (w & 1ull) ? 1.0 : -1.0;
          break;
        case NoiseKind::kUniform:
          value = sqrt3 * (2.0 * u64_to_open_unit(w) - 1.0);
          break;
      }
      eps.at(k, l) = value;
    }
  }
  return eps;
}

Field simulate_recursion(const Params& p, const NoiseMatrix& eps) {
  Field f(eps.n, eps.m);
  for (int k = 1; k <= eps.n; ++k) {
    for (int l = 1; l <= eps.m; ++l) {
      f.at(k, l) = p.alpha * f.at(k - 1, l) + p.beta * f.at(k, l - 1) +
                   p.gamma * f.at(k - 1, l - 1) + eps.at(k, l);
    }
  }
  return f;
}

Field simulate_ma(const Params& p, const NoiseMatrix& eps) {
  if (std::int64_t(eps.n) * eps.m > kMaCellCap)
    throw CapacityError("simulate_ma: lattice exceeds the convolution guard");
  GTable g = g_table(p, eps.n - 1, eps.m - 1);
  Field f(eps.n, eps.m);
  for (int k = 1; k <= eps.n; ++k) {
    for (int l = 1; l <= eps.m; ++l) {
      double s = 0.0;
      for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= l; ++j)
          s += g.at(k - i, l - j) * eps.at(i, j);
      f.at(k, l) = s;
    }
  }
  return f;
}

void write_field_csv(const Field& field, std::ostream& out) {
  out << "k,l,x\n";
  out.precision(17);
  for (int k = 0; k <= field.n; ++k)
    for (int l = 0; l <= field.m; ++l)
      out << k << ',' << l << ',' << field.at(k, l) << '\n';
}

namespace {

struct CsvRow {
  int k;
  int l;
  double x;
};

std::vector<CsvRow> read_csv_rows(std::istream& in, const char* expected) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty input");
  if (line != expected)
    throw ParseError(std::string("csv: expected header '") + expected + "'");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    CsvRow r{};
    char c1 = 0, c2 = 0;
    if (!(ss >> r.k >> c1 >> r.l >> c2 >> r.x) || c1 != ',' || c2 != ',')
      throw ParseError("csv: malformed row '" + line + "'");
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

Field read_field_csv(std::istream& in) {
  auto rows = read_csv_rows(in, "k,l,x");
  int n = 0, m = 0;
  for (const auto& r : rows) {
    if (r.k < 0 || r.l < 0) throw ParseError("field csv: negative index");
    n = std::max(n, r.k);
    m = std::max(m, r.l);
  }
  Field f(n, m);
  for (const auto& r : rows) f.at(r.k, r.l) = r.x;
  for (int k = 0; k <= n; ++k)
    if (f.at(k, 0) != 0.0)
      throw ParseError("field csv: nonzero boundary row");
  for (int l = 0; l <= m; ++l)
    if (f.at(0, l) != 0.0)
      throw ParseError("field csv: nonzero boundary column");
  return f;
}

void write_noise_csv(const NoiseMatrix& eps, std::ostream& out) {
  out << "k,l,eps\n";
  out.precision(17);
  for (int k = 1; k <= eps.n; ++k)
    for (int l = 1; l <= eps.m; ++l)
      out << k << ',' << l << ',' << eps.at(k, l) << '\n';
}

NoiseMatrix read_noise_csv(std::istream& in) {
  auto rows = read_csv_rows(in, "k,l,eps");
  int n = 0, m = 0;
  for (const auto& r : rows) {
    if (r.k < 1 || r.l < 1) throw ParseError("noise csv: index must be >= 1");
    n = std::max(n, r.k);
    m = std::max(m, r.l);
  }
  NoiseMatrix eps(n, m);
  for (const auto& r : rows) eps.at(r.k, r.l) = r.x;
  return eps;
}

}  // namespace ar2d

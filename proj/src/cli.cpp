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

#include "ar2d/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ar2d/asymptotics.hpp"
#include "ar2d/errors.hpp"
#include "ar2d/estimator.hpp"

namespace ar2d {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ParseError("config: unknown key '" + it.key() + "' in " + context);
  }
}

double require_number(const json& obj, const char* key,
                      const std::string& context) {
  if (!obj.contains(key))
    throw ParseError("config: missing key '" + std::string(key) + "' in " +
                     context);
  if (!obj[key].is_number())
    throw ParseError("config: key '" + std::string(key) + "' in " + context +
                     " must be a number");
  return obj[key].get<double>();
}

Params parse_params(const json& obj) {
  if (!obj.is_object()) throw ParseError("config: 'params' must be an object");
  check_keys(obj, {"alpha", "beta", "gamma"}, "params");
  return Params{require_number(obj, "alpha", "params"),
                require_number(obj, "beta", "params"),
                require_number(obj, "gamma", "params")};
}

NoiseSpec parse_noise(const json& obj) {
  if (!obj.is_object()) throw ParseError("config: 'noise' must be an object");
  check_keys(obj, {"kind", "seed"}, "noise");
  NoiseSpec spec;
  if (obj.contains("kind")) {
    if (!obj["kind"].is_string())
      throw ParseError("config: noise.kind must be a string");
    spec.kind = noise_kind_from_string(obj["kind"].get<std::string>());
  }
  if (obj.contains("seed")) {
    if (!obj["seed"].is_number_unsigned() && !obj["seed"].is_number_integer())
      throw ParseError("config: noise.seed must be an integer");
    spec.seed = obj["seed"].get<std::uint64_t>();
  }
  return spec;
}

}  // namespace

CliConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config: document must be an object");
  check_keys(doc,
             {"command", "params", "tol", "size", "noise", "out", "field",
              "noise_csv", "mc", "report", "raw"},
             "document");

  CliConfig cfg;
  if (!doc.contains("command") || !doc["command"].is_string())
    throw ParseError("config: missing string key 'command'");
  std::string cmd = doc["command"].get<std::string>();
  if (cmd == "classify")
    cfg.command = Command::kClassify;
  else if (cmd == "simulate")
    cfg.command = Command::kSimulate;
  else if (cmd == "estimate")
    cfg.command = Command::kEstimate;
  else if (cmd == "asymptotics")
    cfg.command = Command::kAsymptotics;
  else if (cmd == "mc")
    cfg.command = Command::kMc;
  else
    throw ParseError("config: unknown command '" + cmd + "'");

  if (doc.contains("tol")) {
    cfg.tol = require_number(doc, "tol", "document");
    if (!(cfg.tol >= 0)) throw ParseError("config: tol must be >= 0");
  }
  bool needs_params = cfg.command != Command::kEstimate;
  if (needs_params) {
    if (!doc.contains("params"))
      throw ParseError("config: missing key 'params'");
    cfg.params = parse_params(doc["params"]);
  }

  if (doc.contains("noise")) cfg.noise = parse_noise(doc["noise"]);
  if (doc.contains("out")) cfg.out_path = doc["out"].get<std::string>();
  if (doc.contains("field")) cfg.field_path = doc["field"].get<std::string>();
  if (doc.contains("noise_csv"))
    cfg.noise_path = doc["noise_csv"].get<std::string>();
  if (doc.contains("report")) cfg.report_path = doc["report"].get<std::string>();
  if (doc.contains("raw")) cfg.raw_path = doc["raw"].get<std::string>();

  if (cfg.command == Command::kSimulate) {
    if (!doc.contains("size")) throw ParseError("config: missing key 'size'");
    const json& sz = doc["size"];
    check_keys(sz, {"n", "m"}, "size");
    cfg.n = int(require_number(sz, "n", "size"));
    cfg.m = int(require_number(sz, "m", "size"));
    if (cfg.n < 1 || cfg.m < 1)
      throw ParseError("config: size.n and size.m must be >= 1");
  }

  if (cfg.command == Command::kMc) {
    if (!doc.contains("mc")) throw ParseError("config: missing key 'mc'");
    const json& mc = doc["mc"];
    check_keys(mc,
               {"sizes", "replicates", "base_seed", "rho_tol", "raw_output",
                "cov_rel_tol", "cov_abs_tol", "cov_entry_floor", "ks_min_p"},
               "mc");
    if (!mc.contains("sizes") || !mc["sizes"].is_array() ||
        mc["sizes"].empty())
      throw ParseError("config: mc.sizes must be a nonempty array");
    for (const auto& s : mc["sizes"]) {
      if (s.is_array() && s.size() == 2)
        cfg.mc.sizes.emplace_back(s[0].get<int>(), s[1].get<int>());
      else if (s.is_number_integer())
        cfg.mc.sizes.emplace_back(s.get<int>(), s.get<int>());
      else
        throw ParseError("config: mc.sizes entries must be n or [n,m]");
    }
    cfg.mc.replicates = int(require_number(mc, "replicates", "mc"));
    if (cfg.mc.replicates < 2)
      throw ParseError("config: mc.replicates must be >= 2");
    if (mc.contains("base_seed"))
      cfg.mc.base_seed = mc["base_seed"].get<std::uint64_t>();
    if (mc.contains("rho_tol")) {
      cfg.mc.rho_tol = mc["rho_tol"].get<double>();
      if (!(cfg.mc.rho_tol > 0))
        throw ParseError("config: mc.rho_tol must be > 0");
    }
    if (mc.contains("raw_output"))
      cfg.mc.raw_output = mc["raw_output"].get<bool>();
    if (mc.contains("cov_rel_tol"))
      cfg.mc.cov_rel_tol = mc["cov_rel_tol"].get<double>();
    if (mc.contains("cov_abs_tol"))
      cfg.mc.cov_abs_tol = mc["cov_abs_tol"].get<double>();
    if (mc.contains("cov_entry_floor"))
      cfg.mc.cov_entry_floor = mc["cov_entry_floor"].get<double>();
    if (mc.contains("ks_min_p"))
      cfg.mc.ks_min_p = mc["ks_min_p"].get<double>();
    cfg.mc.params = cfg.params;
    cfg.mc.noise_kind = cfg.noise.kind;
  }

  if (cfg.command == Command::kEstimate && cfg.field_path.empty())
    throw ParseError("config: estimate requires key 'field'");
  return cfg;
}

namespace {

json mat3_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m[i][0], m[i][1], m[i][2]});
  return rows;
}

int run_classify(const CliConfig& cfg, std::ostream& out) {
  out << region_name(classify(cfg.params, cfg.tol).tag) << "\n";
  return 0;
}

int run_simulate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  NoiseMatrix eps = draw_noise(cfg.noise, cfg.n, cfg.m);
  Field field = simulate_recursion(cfg.params, eps);
  if (cfg.out_path.empty()) {
    write_field_csv(field, out);
    return 0;
  }
  std::ofstream f(cfg.out_path);
  if (!f) {
    err << "simulate: cannot open '" << cfg.out_path << "'\n";
    return 1;
  }
  write_field_csv(field, f);
  return 0;
}

int run_estimate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ifstream f(cfg.field_path);
  if (!f) {
    err << "estimate: cannot open '" << cfg.field_path << "'\n";
    return 1;
  }
  Field field = read_field_csv(f);
  Accumulators acc;
  if (!cfg.noise_path.empty()) {
    std::ifstream nf(cfg.noise_path);
    if (!nf) {
      err << "estimate: cannot open '" << cfg.noise_path << "'\n";
      return 1;
    }
    NoiseMatrix eps = read_noise_csv(nf);
    acc = accumulate_with_noise(field, eps, Rect{field.n, field.m});
  } else {
    acc = accumulate(field, Rect{field.n, field.m});
  }
  Estimate e = lse(acc, field);
  out << estimate_to_json(e) << "\n";
  return 0;
}

int run_asymptotics(const CliConfig& cfg, std::ostream& out,
                    std::ostream& err) {
  const double rho_tol = 1e-6;
  AsymptoticLaw law = limit_law(cfg.params, rho_tol);
  if (!law.supported) {
    err << "asymptotics: region " << region_name(law.region.tag)
        << " has no supported limit law\n";
    return 1;
  }
  json j;
  j["params"] = {{"alpha", cfg.params.alpha},
                 {"beta", cfg.params.beta},
                 {"gamma", cfg.params.gamma}};
  j["region"] = region_name(law.region.tag);
  j["rate_exponent"] = law.rate_exponent;
  j["covariance"] = mat3_json(law.covariance);
  if (law.region.tag == RegionTag::kFacePlus) {
    auto [pc, flip] = canonicalize(cfg.params);
    (void)flip;
    RhoPair rho = rho_pair(pc.alpha, pc.beta, rho_tol);
    j["rho"] = {{"rho1_ab", rho.rho1_ab},
                {"rho1_ba", rho.rho1_ba},
                {"rho2", rho.rho2},
                {"truncation_k", rho.truncation_k},
                {"tail_estimate", rho.tail_estimate}};
  }
  out << j.dump(2) << "\n";
  return 0;
}

int run_mc(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<RawRecord> raw;
  MCReport report = run_experiment(cfg.mc, &raw);
  std::string text = report_to_json(report);
  if (cfg.report_path.empty()) {
    out << text << "\n";
  } else {
    std::ofstream f(cfg.report_path);
    if (!f) {
      err << "mc: cannot open '" << cfg.report_path << "'\n";
      return 1;
    }
    f << text << "\n";
  }
  if (!cfg.raw_path.empty()) {
    std::ofstream f(cfg.raw_path);
    if (!f) {
      err << "mc: cannot open '" << cfg.raw_path << "'\n";
      return 1;
    }
    write_raw_csv(raw, f);
  }
  return report.passed ? 0 : 2;
}

}  // namespace

int dispatch(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::kClassify:
        return run_classify(cfg, out);
      case Command::kSimulate:
        return run_simulate(cfg, out, err);
      case Command::kEstimate:
        return run_estimate(cfg, out, err);
      case Command::kAsymptotics:
        return run_asymptotics(cfg, out, err);
      case Command::kMc:
        return run_mc(cfg, out, err);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace ar2d

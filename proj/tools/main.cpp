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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ar2d/cli.hpp"
#include "ar2d/errors.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ar2d::ParseError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Load a JSON experiment config and overlay command and output paths taken
// from the command line.
ar2d::CliConfig load(const std::string& path, const std::string& command) {
  std::string text = slurp(path);
  auto doc = nlohmann::json::parse(text);
  if (!doc.contains("command")) doc["command"] = command;
  return ar2d::parse_config(doc.dump());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ar2d: unilateral spatial AR(1,1) unit-root toolkit"};
  app.require_subcommand(1);

  double alpha = 0, beta = 0, gamma = 0, tol = 1e-12;
  std::string config_path, out_path, report_path, raw_path, field_path,
      noise_path;

  CLI::App* classify =
      app.add_subcommand("classify", "Classify (alpha,beta,gamma) against "
                                     "the stability tetrahedron");
  classify->add_option("--alpha", alpha)->required();
  classify->add_option("--beta", beta)->required();
  classify->add_option("--gamma", gamma)->required();
  classify->add_option("--tol", tol);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Simulate a field from a JSON config, write CSV");
  simulate->add_option("--config", config_path)->required();
  simulate->add_option("--out", out_path);

  CLI::App* estimate = app.add_subcommand(
      "estimate", "Least-squares estimate from a field CSV");
  estimate->add_option("--field", field_path)->required();
  estimate->add_option("--noise", noise_path);

  CLI::App* asym = app.add_subcommand(
      "asymptotics", "Limiting law table for a JSON config");
  asym->add_option("--config", config_path)->required();

  CLI::App* mc = app.add_subcommand(
      "mc", "Replicated Monte Carlo experiment from a JSON config");
  mc->add_option("--config", config_path)->required();
  mc->add_option("--report", report_path);
  mc->add_option("--raw", raw_path);

  CLI11_PARSE(app, argc, argv);

  try {
    ar2d::CliConfig cfg;
    if (classify->parsed()) {
      cfg.command = ar2d::Command::kClassify;
      cfg.params = ar2d::Params{alpha, beta, gamma};
      cfg.tol = tol;
    } else if (simulate->parsed()) {
      cfg = load(config_path, "simulate");
      if (!out_path.empty()) cfg.out_path = out_path;
    } else if (estimate->parsed()) {
      cfg.command = ar2d::Command::kEstimate;
      cfg.field_path = field_path;
      cfg.noise_path = noise_path;
    } else if (asym->parsed()) {
      cfg = load(config_path, "asymptotics");
    } else if (mc->parsed()) {
      cfg = load(config_path, "mc");
      if (!report_path.empty()) cfg.report_path = report_path;
      if (!raw_path.empty()) cfg.raw_path = raw_path;
    }
    return ar2d::dispatch(cfg, std::cout, std::cerr);
  } catch (const ar2d::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

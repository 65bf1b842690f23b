// Copyright 2026 The GATS Lab Authors. All rights reserved.
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

// Command-line front end for experiments and bound certification.
//
//   gats_cli run --config cfg.json --algo gats --depth 4 --out results.csv
//   gats_cli bound-check --instances 1000 --depths 1,2,3 --gammas 0.5,0.9,0.99
//   gats_cli sweep --config cfg.json --axis depth --values 0,1,2,4,10 --out dir
//   gats_cli goldfish-layout
//
// Exit codes: 0 success, 1 config error, 2 bound violation, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gats/bound_checker.h"
#include "gats/experiment.h"
#include "gats/json_io.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolation = 2;
constexpr int kExitIo = 3;

using nlohmann::json;

std::vector<std::string> SplitCsv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
std::vector<T> ParseList(const std::string& text, const char* what) {
  std::vector<T> out;
  for (const std::string& item : SplitCsv(text)) {
    try {
      std::size_t used = 0;
      if constexpr (std::is_floating_point_v<T>) {
        out.push_back(static_cast<T>(std::stod(item, &used)));
      } else {
        out.push_back(static_cast<T>(std::stoull(item, &used)));
      }
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw gats::ConfigError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

json LoadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gats::ConfigError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw gats::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

struct Overrides {
  std::string config;
  std::string seeds;
  std::string out;
  std::string algo;
  std::optional<int> depth;
  std::optional<int> episodes;

  void Attach(CLI::App* cmd, const char* out_help) {
    cmd->add_option("--config", config, "JSON experiment config");
    cmd->add_option("--seeds", seeds, "comma-separated seed list");
    cmd->add_option("--out", out, out_help);
    cmd->add_option("--algo", algo, "dqn, gats, gats-dyna or gats-optimism");
    cmd->add_option("--depth", depth, "lookahead depth H");
    cmd->add_option("--episodes", episodes, "episodes per seed");
  }

  // Flags override top-level fields of the config document.
  gats::ExperimentConfig Resolve() const {
    json doc = config.empty() ? json::object() : LoadJson(config);
    if (!doc.is_object()) throw gats::ConfigError("config must be a JSON object");
    if (!seeds.empty()) doc["seeds"] = ParseList<std::uint64_t>(seeds, "seed");
    if (!out.empty()) doc["output"] = out;
    if (!algo.empty()) doc["algorithm"] = algo;
    if (depth) doc["depth"] = *depth;
    if (episodes) doc["episodes"] = *episodes;
    return gats::ConfigFromJson(doc);
  }
};

int Run(const Overrides& flags) {
  const gats::ExperimentConfig cfg = flags.Resolve();
  const auto runs = gats::RunExperiment(cfg);
  gats::WriteFileAtomic(cfg.output, gats::ResultsCsv(cfg, runs));
  std::cerr << "wrote " << cfg.output << " (" << runs.size() << " seeds x " << cfg.episodes
            << " episodes)\n";
  return kExitOk;
}

struct BoundFlags {
  gats::BoundCheckParams params;
  std::string depths = "1,2,3";
  std::string gammas = "0.5,0.9,0.99";
  std::string out;
};

int BoundCheck(BoundFlags flags) {
  flags.params.depths = ParseList<int>(flags.depths, "depth");
  flags.params.gammas = ParseList<double>(flags.gammas, "gamma");
  try {
    flags.params.Validate();
  } catch (const std::invalid_argument& e) {
    throw gats::ConfigError(e.what());
  }
  const auto rows = gats::RunBoundCheck(flags.params);
  const std::string csv = gats::BoundCheckCsv(rows);
  if (flags.out.empty()) {
    std::cout << csv;
  } else {
    gats::WriteFileAtomic(flags.out, csv);
  }
  int violations = 0;
  for (const auto& row : rows) violations += row.report.holds ? 0 : 1;
  std::cerr << rows.size() << " checks, " << violations << " violations\n";
  return violations == 0 ? kExitOk : kExitViolation;
}

int Sweep(const Overrides& flags, const std::string& axis, const std::string& values) {
  const gats::ExperimentConfig base = flags.Resolve();
  std::vector<json> parsed;
  for (const std::string& item : SplitCsv(values)) {
    json v = json::parse(item, nullptr, /*allow_exceptions=*/false);
    parsed.push_back(v.is_discarded() ? json(item) : v);
  }
  const std::string dir = flags.out.empty() ? "sweep" : flags.out;
  const auto entries = gats::RunSweep(base, axis, parsed, dir);
  std::cerr << "wrote " << entries.size() << " result files and manifest.json to " << dir
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-depth lookahead over Q-learners: experiments and bound checks"};
  app.require_subcommand(1);

  Overrides run_flags;
  CLI::App* run = app.add_subcommand("run", "run one experiment config over its seeds");
  run_flags.Attach(run, "results CSV path");

  BoundFlags bound;
  CLI::App* bc = app.add_subcommand("bound-check", "certify the lookahead error bound");
  bc->add_option("--instances", bound.params.n_instances, "number of random MDPs");
  bc->add_option("--states", bound.params.n_states, "states per MDP");
  bc->add_option("--actions", bound.params.n_actions, "actions per MDP");
  bc->add_option("--depths", bound.depths, "comma-separated depths");
  bc->add_option("--gammas", bound.gammas, "comma-separated discounts");
  bc->add_option("--seed", bound.params.seed, "base seed");
  bc->add_option("--out", bound.out, "CSV path (stdout if omitted)");

  Overrides sweep_flags;
  std::string axis, values;
  CLI::App* sweep = app.add_subcommand("sweep", "run one config per value of an axis");
  sweep_flags.Attach(sweep, "output directory");
  sweep->add_option("--axis", axis, "config field to vary")->required();
  sweep->add_option("--values", values, "comma-separated values (may be empty)");

  app.add_subcommand("goldfish-layout", "print the default goldfish layout as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return Run(run_flags);
    if (bc->parsed()) return BoundCheck(bound);
    if (sweep->parsed()) return Sweep(sweep_flags, axis, values);
    std::cout << gats::GridWorldToJson(gats::DefaultGoldfish10x10()).dump(2) << "\n";
    return kExitOk;
  } catch (const gats::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

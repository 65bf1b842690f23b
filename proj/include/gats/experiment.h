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

#ifndef GATS_EXPERIMENT_H_
#define GATS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gats/gats_agent.h"
#include "gats/goldfish.h"
#include "gats/optimism.h"
#include "gats/planner.h"
#include "gats/q_learner.h"

namespace gats {

// Raised for invalid experiment configurations (CLI exit code 1).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an output file cannot be written (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { kDqn, kGats, kGatsDyna, kGatsOptimism };
std::string ToString(Algorithm algorithm);
Algorithm ParseAlgorithm(const std::string& name);

struct RandomMdpEnv {
  int n_states = 10;
  int n_actions = 2;
  double reward_density = 0.2;
  std::uint64_t seed = 0;
  double gamma = 0.9;
  int max_steps = 100;
};

struct ExperimentConfig {
  // Exactly one environment: the goldfish layout unless random_mdp is set.
  GridWorldSpec goldfish = DefaultGoldfish10x10();
  std::optional<RandomMdpEnv> random_mdp;

  Algorithm algorithm = Algorithm::kDqn;
  int depth = 0;
  ModelSource model_source = ModelSource::kTrue;
  std::optional<DynaStrategy> dyna;

  LearnerConfig learner = [] {
    LearnerConfig c;
    c.learning_rate = 0.03;
    return c;
  }();
  QBackend backend = QBackend::kTabular;
  // Tabular Q starts uniform in [q_init_low, q_init_high). The default is
  // optimistic: untried moves look better than anything reachable, so an
  // agent that never tries a shark move never learns its true value.
  double q_init_low = 0.8;
  double q_init_high = 1.0;
  // Epsilon reaches its final value after this fraction of the episodes.
  double epsilon_decay_fraction = 0.3;

  OptimismConfig optimism;
  int episodes = 500;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::string output = "results.csv";
  int threads = 0;  // 0: one per hardware thread

  void Validate() const;  // throws ConfigError
  MdpSpec BuildEnvironment() const;
  int StartState() const;
  int MaxSteps() const;
  GatsConfig ToGatsConfig() const;
  LearnerConfig EffectiveLearnerConfig() const;
};

nlohmann::json ConfigToJson(const ExperimentConfig& cfg);
// Missing fields keep their defaults. Throws ConfigError.
ExperimentConfig ConfigFromJson(const nlohmann::json& doc);

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<EpisodeLog> episodes;
};

// One decision loop per seed, fanned out over worker threads. Each run owns
// a generator seeded with its seed, so results do not depend on scheduling.
// Returned runs are sorted by seed.
std::vector<SeedRun> RunExperiment(const ExperimentConfig& cfg);
SeedRun RunSeed(const ExperimentConfig& cfg, std::uint64_t seed);

// Per-episode rows sorted by seed then episode, followed by a "# summary"
// block with the mean and standard error across seeds and a 20-episode
// moving average of the mean.
std::string ResultsCsv(const ExperimentConfig& cfg, const std::vector<SeedRun>& runs);

// Writes to a temporary sibling and renames it into place. Throws IoError.
void WriteFileAtomic(const std::string& path, const std::string& content);

// Mean undiscounted return over episodes [begin, end) of one run.
double MeanReturn(const SeedRun& run, int begin, int end);
int CountTerminations(const SeedRun& run, int begin, int end, Termination kind);

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};
// Sample mean and standard error (n - 1 denominator; 0 for a single value).
MeanStderr Summarize(const std::vector<double>& values);

// Valid sweep axes, in the order they are listed in error messages.
const std::vector<std::string>& SweepAxes();
// Returns base with `axis` set to `value` (a JSON scalar or string).
ExperimentConfig ApplySweepValue(const ExperimentConfig& base, const std::string& axis,
                                 const nlohmann::json& value);

struct SweepEntry {
  nlohmann::json value;
  std::string file;
};
// One result file per value in `directory`, plus manifest.json.
std::vector<SweepEntry> RunSweep(const ExperimentConfig& base, const std::string& axis,
                                 const std::vector<nlohmann::json>& values,
                                 const std::string& directory);

}  // namespace gats

#endif  // GATS_EXPERIMENT_H_

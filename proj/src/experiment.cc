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

#include "gats/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "gats/csv.h"
#include "gats/json_io.h"

namespace gats {

using nlohmann::json;

std::string ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kDqn: return "dqn";
    case Algorithm::kGats: return "gats";
    case Algorithm::kGatsDyna: return "gats-dyna";
    case Algorithm::kGatsOptimism: return "gats-optimism";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(const std::string& name) {
  for (auto a : {Algorithm::kDqn, Algorithm::kGats, Algorithm::kGatsDyna,
                 Algorithm::kGatsOptimism}) {
    if (ToString(a) == name) return a;
  }
  throw ConfigError("unknown algorithm '" + name +
                    "' (expected dqn, gats, gats-dyna or gats-optimism)");
}

void ExperimentConfig::Validate() const {
  try {
    if (random_mdp) {
      if (random_mdp->max_steps < 1) throw ConfigError("random_mdp.max_steps must be at least 1");
      RandomMdp(random_mdp->n_states, random_mdp->n_actions, random_mdp->reward_density,
                random_mdp->seed, random_mdp->gamma);
    } else {
      goldfish.Validate();
    }
    EffectiveLearnerConfig().Validate();
    ToGatsConfig().Validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (depth < 0) throw ConfigError("depth must be nonnegative");
  if (algorithm == Algorithm::kDqn && depth != 0) {
    throw ConfigError("algorithm dqn requires depth 0");
  }
  if ((algorithm == Algorithm::kGatsDyna) != dyna.has_value()) {
    throw ConfigError("a dyna strategy is required for gats-dyna and only for gats-dyna");
  }
  if (episodes < 0) throw ConfigError("episodes must be nonnegative");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("seeds must be distinct");
  }
  if (!(q_init_low <= q_init_high)) throw ConfigError("q_init_low must not exceed q_init_high");
  if (!(epsilon_decay_fraction >= 0.0 && epsilon_decay_fraction <= 1.0)) {
    throw ConfigError("epsilon_decay_fraction must lie in [0, 1]");
  }
  if (threads < 0) throw ConfigError("threads must be nonnegative");
}

MdpSpec ExperimentConfig::BuildEnvironment() const {
  if (random_mdp) {
    return RandomMdp(random_mdp->n_states, random_mdp->n_actions, random_mdp->reward_density,
                     random_mdp->seed, random_mdp->gamma);
  }
  return BuildGoldfish(goldfish);
}

int ExperimentConfig::StartState() const { return random_mdp ? 0 : goldfish.StartState(); }

int ExperimentConfig::MaxSteps() const {
  return random_mdp ? random_mdp->max_steps : goldfish.max_steps;
}

LearnerConfig ExperimentConfig::EffectiveLearnerConfig() const {
  LearnerConfig out = learner;
  out.discount = random_mdp ? random_mdp->gamma : goldfish.gamma;
  out.epsilon.decay = static_cast<int>(std::lround(epsilon_decay_fraction * episodes));
  return out;
}

GatsConfig ExperimentConfig::ToGatsConfig() const {
  GatsConfig g;
  g.depth = depth;
  g.dyna = dyna;
  g.model_source = model_source;
  g.optimism = algorithm == Algorithm::kGatsOptimism;
  g.optimism_cfg = optimism;
  g.max_steps = MaxSteps();
  return g;
}

// ---------------------------------------------------------------------------

namespace {

json DynaToJson(const DynaStrategy& d) {
  return json{{"kind", ToString(d.kind)}, {"k", d.k}, {"epsilon", d.epsilon}, {"p", d.p}};
}

template <typename T>
void Read(const json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field '") + key + "': " + e.what());
  }
}

}  // namespace

json ConfigToJson(const ExperimentConfig& cfg) {
  json env;
  if (cfg.random_mdp) {
    const auto& r = *cfg.random_mdp;
    env = {{"kind", "random_mdp"},     {"n_states", r.n_states},
           {"n_actions", r.n_actions}, {"reward_density", r.reward_density},
           {"seed", r.seed},           {"gamma", r.gamma},
           {"max_steps", r.max_steps}};
  } else {
    env = {{"kind", "goldfish"}, {"layout", GridWorldToJson(cfg.goldfish)}};
  }
  const LearnerConfig& l = cfg.learner;
  json doc{
      {"environment", std::move(env)},
      {"algorithm", ToString(cfg.algorithm)},
      {"depth", cfg.depth},
      {"model_source", cfg.model_source == ModelSource::kTrue ? "true" : "learned"},
      {"learner",
       {{"backend", cfg.backend == QBackend::kTabular ? "tabular" : "mlp"},
        {"learning_rate", l.learning_rate},
        {"batch_size", l.batch_size},
        {"target_sync_period", l.target_sync_period},
        {"update_period", l.update_period},
        {"buffer_capacity", l.buffer_capacity},
        {"hidden_width", l.hidden_width},
        {"sampling", l.sampling == ReplaySampling::kUniform ? "uniform" : "recency"},
        {"recency_lambda", l.recency_lambda},
        {"epsilon_start", l.epsilon.start},
        {"epsilon_end", l.epsilon.end},
        {"epsilon_decay_fraction", cfg.epsilon_decay_fraction},
        {"q_init_low", cfg.q_init_low},
        {"q_init_high", cfg.q_init_high}}},
      {"optimism",
       {{"c", cfg.optimism.c},
        {"count_floor", cfg.optimism.count_floor},
        {"bootstrap_through_terminals", cfg.optimism.bootstrap_through_terminals}}},
      {"episodes", cfg.episodes},
      {"seeds", cfg.seeds},
      {"output", cfg.output},
      {"threads", cfg.threads}};
  if (cfg.dyna) doc["dyna_strategy"] = DynaToJson(*cfg.dyna);
  return doc;
}

ExperimentConfig ConfigFromJson(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  if (doc.contains("environment")) {
    const json& env = doc["environment"];
    std::string kind = "goldfish";
    Read(env, "kind", kind);
    if (kind == "goldfish") {
      if (env.contains("layout")) {
        try {
          cfg.goldfish = GridWorldFromJson(env["layout"]);
        } catch (const std::exception& e) {
          throw ConfigError(std::string("bad goldfish layout: ") + e.what());
        }
      }
    } else if (kind == "random_mdp") {
      RandomMdpEnv r;
      Read(env, "n_states", r.n_states);
      Read(env, "n_actions", r.n_actions);
      Read(env, "reward_density", r.reward_density);
      Read(env, "seed", r.seed);
      Read(env, "gamma", r.gamma);
      Read(env, "max_steps", r.max_steps);
      cfg.random_mdp = r;
    } else {
      throw ConfigError("unknown environment kind '" + kind + "'");
    }
  }
  std::string algorithm = ToString(cfg.algorithm);
  Read(doc, "algorithm", algorithm);
  cfg.algorithm = ParseAlgorithm(algorithm);
  Read(doc, "depth", cfg.depth);
  std::string source = "true";
  Read(doc, "model_source", source);
  if (source == "true") {
    cfg.model_source = ModelSource::kTrue;
  } else if (source == "learned") {
    cfg.model_source = ModelSource::kLearned;
  } else {
    throw ConfigError("model_source must be 'true' or 'learned'");
  }
  if (doc.contains("dyna_strategy") && !doc["dyna_strategy"].is_null()) {
    const json& d = doc["dyna_strategy"];
    DynaStrategy strategy;
    std::string kind = ToString(strategy.kind);
    if (d.is_string()) {
      kind = d.get<std::string>();
    } else {
      Read(d, "kind", kind);
      Read(d, "k", strategy.k);
      Read(d, "epsilon", strategy.epsilon);
      Read(d, "p", strategy.p);
    }
    try {
      strategy.kind = ParseDynaKind(kind);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    cfg.dyna = strategy;
  }
  if (doc.contains("learner")) {
    const json& l = doc["learner"];
    std::string backend = "tabular", sampling = "uniform";
    Read(l, "backend", backend);
    if (backend == "tabular") {
      cfg.backend = QBackend::kTabular;
    } else if (backend == "mlp") {
      cfg.backend = QBackend::kMlp;
    } else {
      throw ConfigError("learner.backend must be 'tabular' or 'mlp'");
    }
    Read(l, "learning_rate", cfg.learner.learning_rate);
    Read(l, "batch_size", cfg.learner.batch_size);
    Read(l, "target_sync_period", cfg.learner.target_sync_period);
    Read(l, "update_period", cfg.learner.update_period);
    Read(l, "buffer_capacity", cfg.learner.buffer_capacity);
    Read(l, "hidden_width", cfg.learner.hidden_width);
    Read(l, "sampling", sampling);
    if (sampling == "uniform") {
      cfg.learner.sampling = ReplaySampling::kUniform;
    } else if (sampling == "recency") {
      cfg.learner.sampling = ReplaySampling::kRecency;
    } else {
      throw ConfigError("learner.sampling must be 'uniform' or 'recency'");
    }
    Read(l, "recency_lambda", cfg.learner.recency_lambda);
    Read(l, "epsilon_start", cfg.learner.epsilon.start);
    Read(l, "epsilon_end", cfg.learner.epsilon.end);
    Read(l, "epsilon_decay_fraction", cfg.epsilon_decay_fraction);
    Read(l, "q_init_low", cfg.q_init_low);
    Read(l, "q_init_high", cfg.q_init_high);
  }
  if (doc.contains("optimism")) {
    const json& o = doc["optimism"];
    Read(o, "c", cfg.optimism.c);
    Read(o, "count_floor", cfg.optimism.count_floor);
    Read(o, "bootstrap_through_terminals", cfg.optimism.bootstrap_through_terminals);
  }
  Read(doc, "episodes", cfg.episodes);
  Read(doc, "seeds", cfg.seeds);
  Read(doc, "output", cfg.output);
  Read(doc, "threads", cfg.threads);
  cfg.Validate();
  return cfg;
}

// ---------------------------------------------------------------------------

SeedRun RunSeed(const ExperimentConfig& cfg, std::uint64_t seed) {
  const MdpSpec env = cfg.BuildEnvironment();
  const LearnerConfig learner_cfg = cfg.EffectiveLearnerConfig();
  Rng rng(seed);
  QFunction q = cfg.backend == QBackend::kTabular
                    ? QFunction::TabularUniform(env.n_states(), env.n_actions(),
                                                cfg.q_init_low, cfg.q_init_high, rng)
                    : QFunction::Mlp(env.n_states(), env.n_actions(),
                                     learner_cfg.hidden_width, rng);
  QLearner learner(std::move(q), learner_cfg);
  SeedRun run;
  run.seed = seed;
  run.episodes = GatsDecisionLoop(env, cfg.StartState(), learner, cfg.ToGatsConfig(),
                                  cfg.episodes, rng, seed);
  return run;
}

std::vector<SeedRun> RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  std::vector<std::uint64_t> seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());
  std::vector<SeedRun> runs(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        runs[i] = RunSeed(cfg, seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(seeds.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return runs;
}

MeanStderr Summarize(const std::vector<double>& values) {
  MeanStderr out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

std::string ResultsCsv(const ExperimentConfig& cfg, const std::vector<SeedRun>& runs) {
  std::ostringstream out;
  out << "seed,algorithm,depth,episode,undiscounted_return,discounted_return,steps,termination\n";
  const std::string algorithm = ToString(cfg.algorithm);
  std::size_t n_episodes = 0;
  for (const SeedRun& run : runs) {
    n_episodes = std::max(n_episodes, run.episodes.size());
    for (std::size_t e = 0; e < run.episodes.size(); ++e) {
      const EpisodeLog& log = run.episodes[e];
      out << run.seed << ',' << algorithm << ',' << cfg.depth << ',' << e << ','
          << FormatDouble(log.undiscounted_return) << ','
          << FormatDouble(log.discounted_return) << ',' << log.steps() << ','
          << ToString(log.termination) << '\n';
    }
  }
  out << "# summary\n";
  out << "episode,mean_return,stderr_return,moving_average_20\n";
  std::vector<double> means;
  for (std::size_t e = 0; e < n_episodes; ++e) {
    std::vector<double> values;
    for (const SeedRun& run : runs) {
      if (e < run.episodes.size()) values.push_back(run.episodes[e].undiscounted_return);
    }
    const MeanStderr s = Summarize(values);
    means.push_back(s.mean);
    const std::size_t window = std::min<std::size_t>(20, means.size());
    double moving = 0.0;
    for (std::size_t i = means.size() - window; i < means.size(); ++i) moving += means[i];
    moving /= static_cast<double>(window);
    out << e << ',' << FormatDouble(s.mean) << ',' << FormatDouble(s.std_error) << ','
        << FormatDouble(moving) << '\n';
  }
  return out.str();
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into '" + path + "'");
  }
}

double MeanReturn(const SeedRun& run, int begin, int end) {
  begin = std::max(begin, 0);
  end = std::min(end, static_cast<int>(run.episodes.size()));
  if (end <= begin) return 0.0;
  double total = 0.0;
  for (int e = begin; e < end; ++e) total += run.episodes[e].undiscounted_return;
  return total / (end - begin);
}

int CountTerminations(const SeedRun& run, int begin, int end, Termination kind) {
  int count = 0;
  end = std::min(end, static_cast<int>(run.episodes.size()));
  for (int e = std::max(begin, 0); e < end; ++e) {
    if (run.episodes[e].termination == kind) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------

namespace {

struct AxisPath {
  const char* axis;
  const char* pointer;
};

constexpr AxisPath kAxes[] = {
    {"depth", "/depth"},
    {"algorithm", "/algorithm"},
    {"dyna_strategy", "/dyna_strategy/kind"},
    {"model_source", "/model_source"},
    {"episodes", "/episodes"},
    {"learning_rate", "/learner/learning_rate"},
    {"batch_size", "/learner/batch_size"},
    {"target_sync_period", "/learner/target_sync_period"},
    {"update_period", "/learner/update_period"},
    {"sampling", "/learner/sampling"},
    {"q_init_high", "/learner/q_init_high"},
    {"optimism_c", "/optimism/c"},
};

std::string ValueLabel(const json& value) {
  std::string label = value.is_string() ? value.get<std::string>() : value.dump();
  for (char& ch : label) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '.') ch = '_';
  }
  return label;
}

}  // namespace

const std::vector<std::string>& SweepAxes() {
  static const std::vector<std::string> axes = [] {
    std::vector<std::string> out;
    for (const auto& a : kAxes) out.emplace_back(a.axis);
    return out;
  }();
  return axes;
}

ExperimentConfig ApplySweepValue(const ExperimentConfig& base, const std::string& axis,
                                 const json& value) {
  const AxisPath* path = nullptr;
  for (const auto& a : kAxes) {
    if (axis == a.axis) path = &a;
  }
  if (path == nullptr) {
    std::string valid;
    for (const auto& a : SweepAxes()) valid += (valid.empty() ? "" : ", ") + a;
    throw ConfigError("unknown sweep axis '" + axis + "' (valid axes: " + valid + ")");
  }
  json doc = ConfigToJson(base);
  if (axis == "dyna_strategy" && !doc.contains("dyna_strategy")) {
    doc["dyna_strategy"] = DynaToJson(DynaStrategy{});
    doc["algorithm"] = "gats-dyna";
  }
  doc[json::json_pointer(path->pointer)] = value;
  return ConfigFromJson(doc);
}

std::vector<SweepEntry> RunSweep(const ExperimentConfig& base, const std::string& axis,
                                 const std::vector<json>& values,
                                 const std::string& directory) {
  // Validate every value before running anything.
  std::vector<ExperimentConfig> configs;
  for (const json& v : values) configs.push_back(ApplySweepValue(base, axis, v));
  std::vector<SweepEntry> entries;
  json manifest{{"axis", axis}, {"base_config", ConfigToJson(base)}, {"entries", json::array()}};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string name = axis + "_" + ValueLabel(values[i]) + ".csv";
    const std::string path = (std::filesystem::path(directory) / name).string();
    configs[i].output = path;
    WriteFileAtomic(path, ResultsCsv(configs[i], RunExperiment(configs[i])));
    entries.push_back({values[i], name});
    manifest["entries"].push_back({{"value", values[i]}, {"file", name}});
  }
  WriteFileAtomic((std::filesystem::path(directory) / "manifest.json").string(),
                  manifest.dump(2) + "\n");
  return entries;
}

}  // namespace gats

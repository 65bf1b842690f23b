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

#include "gats/json_io.h"

#include <stdexcept>
#include <string>

namespace gats {

using nlohmann::json;

namespace {

template <typename T>
T Field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad field '") + key + "': " + e.what());
  }
}

json CellToJson(Cell c) { return json::array({c.row, c.col}); }

Cell CellFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("cell must be [row, col]");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

json MdpToJson(const MdpSpec& mdp) {
  const int ns = mdp.n_states(), na = mdp.n_actions();
  json transition = json::array();
  json reward = json::array();
  for (int s = 0; s < ns; ++s) {
    json t_rows = json::array();
    json r_row = json::array();
    for (int a = 0; a < na; ++a) {
      const auto row = mdp.row(s, a);
      t_rows.push_back(std::vector<double>(row.begin(), row.end()));
      r_row.push_back(mdp.reward(s, a));
    }
    transition.push_back(std::move(t_rows));
    reward.push_back(std::move(r_row));
  }
  return json{{"n_states", ns},          {"n_actions", na},
              {"gamma", mdp.gamma()},     {"transition", std::move(transition)},
              {"reward", std::move(reward)}, {"terminal", mdp.terminal_states()}};
}

MdpSpec MdpFromJson(const json& doc) {
  const int ns = Field<int>(doc, "n_states");
  const int na = Field<int>(doc, "n_actions");
  const double gamma = Field<double>(doc, "gamma");
  const auto transition = Field<std::vector<std::vector<std::vector<double>>>>(doc, "transition");
  const auto reward = Field<std::vector<std::vector<double>>>(doc, "reward");
  std::vector<int> terminal;
  if (doc.contains("terminal")) terminal = Field<std::vector<int>>(doc, "terminal");
  if (ns <= 0 || na <= 0 || transition.size() != static_cast<std::size_t>(ns) ||
      reward.size() != static_cast<std::size_t>(ns)) {
    throw std::invalid_argument("MDP document dimensions are inconsistent");
  }
  std::vector<double> flat_t, flat_r;
  flat_t.reserve(static_cast<std::size_t>(ns) * na * ns);
  for (int s = 0; s < ns; ++s) {
    if (transition[s].size() != static_cast<std::size_t>(na) ||
        reward[s].size() != static_cast<std::size_t>(na)) {
      throw std::invalid_argument("MDP document dimensions are inconsistent");
    }
    for (int a = 0; a < na; ++a) {
      if (transition[s][a].size() != static_cast<std::size_t>(ns)) {
        throw std::invalid_argument("MDP transition row has wrong length");
      }
      flat_t.insert(flat_t.end(), transition[s][a].begin(), transition[s][a].end());
      flat_r.push_back(reward[s][a]);
    }
  }
  return MdpSpec(ns, na, gamma, std::move(flat_t), std::move(flat_r), std::move(terminal));
}

json GridWorldToJson(const GridWorldSpec& spec) {
  json sharks = json::array();
  for (const Cell& c : spec.sharks) sharks.push_back(CellToJson(c));
  return json{{"width", spec.width},
              {"height", spec.height},
              {"start", CellToJson(spec.start)},
              {"gold", CellToJson(spec.gold)},
              {"sharks", std::move(sharks)},
              {"cost_of_living", spec.cost_of_living},
              {"gamma", spec.gamma},
              {"max_steps", spec.max_steps}};
}

GridWorldSpec GridWorldFromJson(const json& doc) {
  GridWorldSpec spec;
  spec.width = Field<int>(doc, "width");
  spec.height = Field<int>(doc, "height");
  spec.start = CellFromJson(Field<json>(doc, "start"));
  spec.gold = CellFromJson(Field<json>(doc, "gold"));
  spec.sharks.clear();
  for (const json& c : Field<json>(doc, "sharks")) spec.sharks.push_back(CellFromJson(c));
  spec.cost_of_living = Field<double>(doc, "cost_of_living");
  spec.gamma = Field<double>(doc, "gamma");
  spec.max_steps = Field<int>(doc, "max_steps");
  spec.Validate();
  return spec;
}

json QFunctionToJson(const QFunction& q) {
  const auto live = q.parameters();
  const auto target = q.target_parameters();
  return json{
      {"format", "gats-qfunction"},
      {"version", kCheckpointVersion},
      {"backend", q.backend() == QBackend::kTabular ? "tabular" : "mlp"},
      {"dims",
       {{"n_states", q.n_states()},
        {"n_actions", q.n_actions()},
        {"hidden_width", q.hidden_width()}}},
      {"live", std::vector<double>(live.begin(), live.end())},
      {"target", std::vector<double>(target.begin(), target.end())}};
}

QFunction QFunctionFromJson(const json& doc) {
  if (Field<std::string>(doc, "format") != "gats-qfunction") {
    throw std::invalid_argument("not a Q-function checkpoint");
  }
  if (Field<int>(doc, "version") != kCheckpointVersion) {
    throw std::invalid_argument("unsupported checkpoint version");
  }
  const std::string backend = Field<std::string>(doc, "backend");
  if (backend != "tabular" && backend != "mlp") {
    throw std::invalid_argument("unknown backend '" + backend + "'");
  }
  const json dims = Field<json>(doc, "dims");
  return QFunction::FromParameters(
      backend == "tabular" ? QBackend::kTabular : QBackend::kMlp,
      Field<int>(dims, "n_states"), Field<int>(dims, "n_actions"),
      Field<int>(dims, "hidden_width"), Field<std::vector<double>>(doc, "live"),
      Field<std::vector<double>>(doc, "target"));
}

json CTableToJson(std::span<const double> c_table, int n_states, int n_actions) {
  return json{{"format", "gats-ctable"},
              {"version", kCheckpointVersion},
              {"dims", {{"n_states", n_states}, {"n_actions", n_actions}}},
              {"values", std::vector<double>(c_table.begin(), c_table.end())}};
}

json EmpiricalModelToJson(const EmpiricalModel& model) {
  json pairs = json::array();
  for (int s = 0; s < model.n_states(); ++s) {
    for (int a = 0; a < model.n_actions(); ++a) {
      const auto n = model.Visits(s, a);
      if (n == 0) continue;
      json successors = json::object();
      for (int s2 = 0; s2 < model.n_states(); ++s2) {
        if (const auto c = model.SuccessorCount(s, a, s2); c > 0) successors[std::to_string(s2)] = c;
      }
      const auto classes = model.ClassCounts(s, a);
      pairs.push_back({{"state", s},
                       {"action", a},
                       {"visits", n},
                       {"successors", std::move(successors)},
                       {"reward_classes", {classes[0], classes[1], classes[2]}},
                       {"mean_reward", model.MeanReward(s, a)}});
    }
  }
  return json{{"n_states", model.n_states()},
              {"n_actions", model.n_actions()},
              {"fallback", model.fallback() == FallbackRule::kUniform ? "uniform" : "self-loop"},
              {"pairs", std::move(pairs)}};
}

json PlanResultToJson(const PlanResult& plan) {
  return json{{"root_state", plan.root_state},
              {"depth", plan.depth},
              {"root_values", plan.root_values},
              {"chosen_action", plan.chosen_action},
              {"nodes_expanded", plan.nodes_expanded}};
}

}  // namespace gats

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

// JSON documents for the on-disk formats. Parsing functions throw
// std::invalid_argument on malformed or inconsistent input.

#ifndef GATS_JSON_IO_H_
#define GATS_JSON_IO_H_

#include <span>

#include "json.hpp"

#include "gats/empirical_model.h"
#include "gats/goldfish.h"
#include "gats/mdp.h"
#include "gats/planner.h"
#include "gats/q_learner.h"

namespace gats {

// {"n_states", "n_actions", "gamma", "transition": [[[...]]], "reward": [[...]],
//  "terminal": [...]}
nlohmann::json MdpToJson(const MdpSpec& mdp);
MdpSpec MdpFromJson(const nlohmann::json& doc);

// {"width", "height", "start": [r, c], "gold": [r, c], "sharks": [[r, c], ...],
//  "cost_of_living", "gamma", "max_steps"}
nlohmann::json GridWorldToJson(const GridWorldSpec& spec);
GridWorldSpec GridWorldFromJson(const nlohmann::json& doc);

// Versioned checkpoint: {"format": "gats-qfunction", "version": 1,
//  "backend", "dims": {...}, "live": [...], "target": [...]}
inline constexpr int kCheckpointVersion = 1;
nlohmann::json QFunctionToJson(const QFunction& q);
QFunction QFunctionFromJson(const nlohmann::json& doc);

// C table stored next to Q checkpoints.
nlohmann::json CTableToJson(std::span<const double> c_table, int n_states, int n_actions);

nlohmann::json EmpiricalModelToJson(const EmpiricalModel& model);
// Root values, chosen action, expanded-node count.
nlohmann::json PlanResultToJson(const PlanResult& plan);

}  // namespace gats

#endif  // GATS_JSON_IO_H_

// Copyright 2026 The chsh-stochastic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON strategy configs and matrix files.
//
//   {"kind": "deterministic", "q_of_x": [0, 0], "r_of_y": [0, 0]}
//   {"kind": "mixture", "components": [{"weight": 0.5, "q_of_x": .., "r_of_y": ..}, ..]}
//   {"kind": "ns_box", "E": 0.5}
//   {"kind": "quantum", "state": [[re, im], ..], "alice": [U0, U1], "bob": [U0, U1],
//    "alice_partition": [0, 1], "bob_partition": [0, 1]}
//   {"kind": "box", "table": [[P00, P01, P10, P11] for (x,y) = 00, 01, 10, 11]}
//
// Complex entries are [re, im] pairs; a bare number means a real entry. A
// quantum config may give "preparation": {"unitary": C, "q0": 0, "r0": 0}
// instead of "state". Matrices are arrays of rows.

#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

#include "chsh/game.hpp"

namespace chsh {

/// Malformed config: JSON syntax, a missing field or a wrong type. The message
/// names the line or the field path. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct StrategyConfig {
    std::string kind;
    /// Absent for kind "box", which describes correlations without a strategy.
    std::optional<Strategy> strategy;
    CorrelationBox box;
};

nlohmann::json parse_json(const std::string& text);

/// Parses and validates. Shape problems throw ConfigError, invariant
/// violations (|E| > 1, non-unitary operators, ...) throw InvariantError.
StrategyConfig parse_strategy_config(const std::string& text);
StrategyConfig strategy_config_from_json(const nlohmann::json& j);

nlohmann::json strategy_to_json(const Strategy& strategy);
nlohmann::json box_to_json(const CorrelationBox& box);

ComplexMatrix complex_matrix_from_json(const nlohmann::json& j, const std::string& field);
RealMatrix real_matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json complex_matrix_to_json(const ComplexMatrix& m);
nlohmann::json real_matrix_to_json(const RealMatrix& m);

}  // namespace chsh

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

#include "chsh/config.hpp"

#include <algorithm>

namespace chsh {

using nlohmann::json;

namespace {

const json& field(const json& j, const std::string& name, const std::string& path) {
    if (!j.is_object()) throw ConfigError("field '" + path + "': expected an object");
    const auto it = j.find(name);
    if (it == j.end()) {
        throw ConfigError("field '" + (path.empty() ? name : path + "." + name) + "': missing");
    }
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("field '" + path + "': expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError("field '" + path + "': expected an integer");
    return j.get<int>();
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError("field '" + path + "': expected an array");
    return j;
}

Complex complex_entry(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ConfigError("field '" + path + "': expected a number or a [re, im] pair");
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::array<int, 2> bit_pair(const json& j, const std::string& path) {
    const json& a = array(j, path);
    if (a.size() != 2) throw ConfigError("field '" + path + "': expected 2 entries");
    return {integer(a[0], at(path, 0)), integer(a[1], at(path, 1))};
}

Deterministic deterministic(const json& j, const std::string& path) {
    const std::string prefix = path.empty() ? "" : path + ".";
    return Deterministic{bit_pair(field(j, "q_of_x", path), prefix + "q_of_x"),
                         bit_pair(field(j, "r_of_y", path), prefix + "r_of_y")};
}

OutcomePartition partition(const json& j, const std::string& name) {
    if (!j.contains(name)) return {};
    const json& a = array(j[name], name);
    OutcomePartition p;
    for (std::size_t i = 0; i < a.size(); ++i) p.push_back(integer(a[i], at(name, i)));
    return p;
}

QuantumSetup quantum(const json& j) {
    auto pair_of = [&](const std::string& name) {
        const json& a = array(field(j, name, ""), name);
        if (a.size() != 2) throw ConfigError("field '" + name + "': expected two unitaries");
        return std::array<ComplexMatrix, 2>{complex_matrix_from_json(a[0], at(name, 0)),
                                            complex_matrix_from_json(a[1], at(name, 1))};
    };
    auto alice = pair_of("alice");
    auto bob = pair_of("bob");
    const int da = static_cast<int>(alice[0].rows());
    const int db = static_cast<int>(bob[0].rows());

    std::optional<StateVector> state;
    if (j.contains("state")) {
        const json& a = array(j["state"], "state");
        ComplexVector v(static_cast<Eigen::Index>(a.size()));
        for (std::size_t i = 0; i < a.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = complex_entry(a[i], at("state", i));
        }
        state.emplace(std::move(v));
    } else if (j.contains("preparation")) {
        const json& prep = j["preparation"];
        const int q0 = prep.contains("q0") ? integer(prep["q0"], "preparation.q0") : 0;
        const int r0 = prep.contains("r0") ? integer(prep["r0"], "preparation.r0") : 0;
        state.emplace(prepare_state(PreparationUnitary(
            complex_matrix_from_json(field(prep, "unitary", "preparation"), "preparation.unitary"), da,
            db, q0, r0)));
    } else {
        throw ConfigError("field 'state': missing (give 'state' or 'preparation')");
    }
    return QuantumSetup(std::move(*state), std::move(alice), std::move(bob), partition(j, "alice_partition"),
                        partition(j, "bob_partition"));
}

CorrelationBox raw_box(const json& j) {
    const json& rows = array(field(j, "table", ""), "table");
    if (rows.size() != 4) throw ConfigError("field 'table': expected 4 rows, one per (x, y)");
    CorrelationBox::Table t{};
    for (std::size_t xy = 0; xy < 4; ++xy) {
        const json& row = array(rows[xy], at("table", xy));
        if (row.size() != 4) throw ConfigError("field '" + at("table", xy) + "': expected 4 entries");
        for (std::size_t k = 0; k < 4; ++k) {
            const int x = static_cast<int>(xy >> 1);
            const int y = static_cast<int>(xy & 1);
            t[CorrelationBox::index(static_cast<int>(k >> 1), static_cast<int>(k & 1), x, y)] =
                number(row[k], at(at("table", xy), k));
        }
    }
    return CorrelationBox(t);
}

json deterministic_to_json(const Deterministic& d) {
    return json{{"q_of_x", d.q_of_x}, {"r_of_y", d.r_of_y}};
}

}  // namespace

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(stop), '\n');
        throw ConfigError("line " + std::to_string(line) + ": " + e.what());
    }
}

StrategyConfig parse_strategy_config(const std::string& text) {
    return strategy_config_from_json(parse_json(text));
}

StrategyConfig strategy_config_from_json(const json& j) {
    const json& kind_field = field(j, "kind", "");
    if (!kind_field.is_string()) throw ConfigError("field 'kind': expected a string");
    const std::string kind = kind_field.get<std::string>();

    if (kind == "box") {
        return StrategyConfig{kind, std::nullopt, raw_box(j)};
    }

    Strategy strategy = Deterministic{};
    if (kind == "deterministic") {
        strategy = deterministic(j, "");
    } else if (kind == "mixture") {
        const json& comps = array(field(j, "components", ""), "components");
        SharedRandomness mix;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const std::string path = at("components", i);
            mix.mixture.emplace_back(number(field(comps[i], "weight", path), path + ".weight"),
                                     deterministic(comps[i], path));
        }
        strategy = std::move(mix);
    } else if (kind == "ns_box") {
        strategy = NSBox{number(field(j, "E", ""), "E")};
    } else if (kind == "quantum") {
        strategy = quantum(j);
    } else {
        throw ConfigError("field 'kind': unknown kind '" + kind +
                          "' (expected deterministic, mixture, ns_box, quantum or box)");
    }
    CorrelationBox box = box_of_strategy(strategy);
    return StrategyConfig{kind, std::move(strategy), box};
}

json strategy_to_json(const Strategy& strategy) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Deterministic>) {
                json j = deterministic_to_json(s);
                j["kind"] = "deterministic";
                return j;
            } else if constexpr (std::is_same_v<T, SharedRandomness>) {
                json comps = json::array();
                for (const auto& [w, d] : s.mixture) {
                    json c = deterministic_to_json(d);
                    c["weight"] = w;
                    comps.push_back(std::move(c));
                }
                return json{{"kind", "mixture"}, {"components", std::move(comps)}};
            } else if constexpr (std::is_same_v<T, NSBox>) {
                return json{{"kind", "ns_box"}, {"E", s.E}};
            } else {
                json state = json::array();
                for (Eigen::Index i = 0; i < s.state().dim(); ++i) {
                    state.push_back({s.state()[i].real(), s.state()[i].imag()});
                }
                return json{{"kind", "quantum"},
                            {"state", std::move(state)},
                            {"alice",
                             {complex_matrix_to_json(s.local(Side::Alice, 0)),
                              complex_matrix_to_json(s.local(Side::Alice, 1))}},
                            {"bob",
                             {complex_matrix_to_json(s.local(Side::Bob, 0)),
                              complex_matrix_to_json(s.local(Side::Bob, 1))}},
                            {"alice_partition", s.partition(Side::Alice)},
                            {"bob_partition", s.partition(Side::Bob)}};
            }
        },
        strategy);
}

json box_to_json(const CorrelationBox& box) {
    json rows = json::array();
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            rows.push_back({box(0, 0, x, y), box(0, 1, x, y), box(1, 0, x, y), box(1, 1, x, y)});
    return json{{"kind", "box"}, {"table", std::move(rows)}};
}

ComplexMatrix complex_matrix_from_json(const json& j, const std::string& path) {
    const json& rows = array(j, path);
    if (rows.empty()) throw ConfigError("field '" + path + "': empty matrix");
    const std::size_t cols = array(rows[0], at(path, 0)).size();
    ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = array(rows[i], at(path, i));
        if (row.size() != cols) throw ConfigError("field '" + at(path, i) + "': ragged row");
        for (std::size_t k = 0; k < cols; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                complex_entry(row[k], at(at(path, i), k));
        }
    }
    return m;
}

RealMatrix real_matrix_from_json(const json& j, const std::string& path) {
    const json& rows = array(j, path);
    if (rows.empty()) throw ConfigError("field '" + path + "': empty matrix");
    const std::size_t cols = array(rows[0], at(path, 0)).size();
    RealMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = array(rows[i], at(path, i));
        if (row.size() != cols) throw ConfigError("field '" + at(path, i) + "': ragged row");
        for (std::size_t k = 0; k < cols; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                number(row[k], at(at(path, i), k));
        }
    }
    return m;
}

json complex_matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json real_matrix_to_json(const RealMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace chsh

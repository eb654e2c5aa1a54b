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

// The CHSH game. Alice receives x and answers q, Bob receives y and answers
// r; the round is won when q xor r == x*y and scores +1, otherwise -1.
// A strategy is summarized by its correlation box P(q, r | x, y).

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "chsh/quantum_setup.hpp"

namespace chsh {

inline constexpr double kBoxTol = 1e-10;
inline constexpr double kNoSignalingTol = 1e-9;

/// P(q, r | x, y) for bits q, r, x, y.
class CorrelationBox {
   public:
    using Table = std::array<double, 16>;

    /// Entries indexed by index(q, r, x, y). Checks nonnegativity and that
    /// each (x, y) block sums to 1 within kBoxTol.
    explicit CorrelationBox(const Table& table);

    static constexpr std::size_t index(int q, int r, int x, int y) {
        return static_cast<std::size_t>(((x * 2 + y) * 2 + q) * 2 + r);
    }

    double operator()(int q, int r, int x, int y) const { return table_[index(q, r, x, y)]; }
    const Table& table() const { return table_; }

   private:
    Table table_;
};

/// P(x, y), indexed x * 2 + y.
class InputDistribution {
   public:
    explicit InputDistribution(const std::array<double, 4>& p);
    static InputDistribution uniform() { return InputDistribution({0.25, 0.25, 0.25, 0.25}); }

    double operator()(int x, int y) const { return p_[static_cast<std::size_t>(x * 2 + y)]; }

   private:
    std::array<double, 4> p_;
};

constexpr bool wins(int q, int r, int x, int y) { return (q ^ r) == (x & y); }

struct Deterministic {
    std::array<int, 2> q_of_x{0, 0};
    std::array<int, 2> r_of_y{0, 0};

    friend bool operator==(const Deterministic&, const Deterministic&) = default;
};

struct SharedRandomness {
    std::vector<std::pair<double, Deterministic>> mixture;
};

struct NSBox {
    double E = 0.0;
};

using Strategy = std::variant<Deterministic, SharedRandomness, NSBox, QuantumSetup>;

/// Throws InvariantError on non-bit maps, negative or unnormalized mixture
/// weights, or |E| > 1. Quantum setups are validated on construction.
void validate(const Strategy& strategy);

/// P(q, r | x, y) = (1 + (-1)^(xy - q xor r) E) / 4.
CorrelationBox ns_box(double E);

CorrelationBox box_of_strategy(const Strategy& strategy);

/// sum (-1)^(xy - q xor r) P(q, r | x, y) P(x, y).
double expected_score(const CorrelationBox& box,
                      const InputDistribution& inputs = InputDistribution::uniform());

// Alternative closed forms of the expected score. They are algebraically equal
// to expected_score and are kept as independent cross-checks.

/// sum P(q,r,x,y) [win] - P(q,r,x,y) [loss] over the joint distribution.
double score_from_win_loss(const CorrelationBox& box, const InputDistribution& inputs);
/// 1 - 2 P(1,1) - 2 sum (-1)^(xy) (P(0,1|x,y) + P(1,0|x,y)) P(x,y).
double score_from_flip_probabilities(const CorrelationBox& box, const InputDistribution& inputs);
/// Uniform inputs: (1/2)(1 - sum (-1)^(xy) (P(0,1|x,y) + P(1,0|x,y))).
double score_from_flip_probabilities_uniform(const CorrelationBox& box);
/// Uniform inputs: (1/4) sum (-1)^(xy) (P00 - P01 - P10 + P11).
double score_from_correlators_uniform(const CorrelationBox& box);

/// (score + 1) / 2. Throws InvariantError for |score| > 1.
double win_probability(double score);

/// sum P(q,r|x,y) P(x,y) [q xor r == xy].
double win_probability_direct(const CorrelationBox& box,
                              const InputDistribution& inputs = InputDistribution::uniform());

/// A marginal that depends on the other player's input: P(outcome | own, other)
/// differs from P(outcome | own, other_alt) by `gap`.
struct SignalingWitness {
    Side side;
    int outcome;
    int own_setting;
    int other_setting;
    int other_setting_alt;
    double gap;
};

std::optional<SignalingWitness> signaling_witness(const CorrelationBox& box,
                                                  double tol = kNoSignalingTol);

bool is_no_signaling(const CorrelationBox& box, double tol = kNoSignalingTol);

struct DeterministicOptimum {
    double best_score;
    /// Every maximizer, in lexicographic (q(0), q(1), r(0), r(1)) order.
    std::vector<Deterministic> argmax;
};

/// All 16 deterministic strategies in lexicographic order.
std::vector<Deterministic> all_deterministic();

/// Exhaustive search over deterministic strategies under uniform inputs.
DeterministicOptimum enumerate_deterministic();

// -- Monte Carlo rounds ------------------------------------------------------

struct RoundRecord {
    std::uint64_t round_index;
    std::uint8_t x;
    std::uint8_t y;
    std::uint8_t q;
    std::uint8_t r;
    bool win;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct SimulationSummary {
    std::uint64_t n_rounds = 0;
    std::uint64_t wins = 0;
    double empirical_score = 0.0;
    double empirical_win_rate = 0.0;
};

struct SimulationResult {
    std::vector<RoundRecord> records;
    SimulationSummary summary;
};

/// Rounds are grouped in fixed chunks of this size; chunk c draws from the
/// substream derived from (seed, c).
inline constexpr std::uint64_t kSimulationChunk = 4096;

/// Draws uniform (x, y) then (q, r) by inverse CDF from the strategy's box.
/// Chunks run under OpenMP; output is identical to simulate_rounds_serial.
SimulationResult simulate_rounds(const Strategy& strategy, std::uint64_t n, std::uint64_t seed);
SimulationResult simulate_rounds_serial(const Strategy& strategy, std::uint64_t n, std::uint64_t seed);

/// Header "round_index,x,y,q,r,win" then one CSV row per record.
void write_records_csv(std::ostream& out, const std::vector<RoundRecord>& records);

}  // namespace chsh

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

#include "chsh/game.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "test_support.hpp"

namespace chsh {
namespace {

using testing::Rng;

constexpr std::array<double, 4> kUniform{0.25, 0.25, 0.25, 0.25};

CorrelationBox deterministic_box(int (*q)(int x, int y), int (*r)(int x, int y)) {
    CorrelationBox::Table t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) t[CorrelationBox::index(q(x, y), r(x, y), x, y)] = 1.0;
    return CorrelationBox(t);
}

TEST(NsBox, Examples) {
    const CorrelationBox zero = ns_box(0.0);
    for (double p : zero.table()) EXPECT_EQ(p, 0.25);

    const CorrelationBox half = ns_box(0.5);
    EXPECT_NEAR(half(0, 0, 0, 0), 0.375, 1e-15);
    EXPECT_NEAR(half(0, 1, 0, 0), 0.125, 1e-15);

    const CorrelationBox pr = ns_box(1.0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r) EXPECT_EQ(pr(q, r, x, y), wins(q, r, x, y) ? 0.5 : 0.0);
}

TEST(NsBox, RejectsOutOfRange) {
    EXPECT_THROW(ns_box(1.5), InvariantError);
    EXPECT_THROW(ns_box(-1.0000001), InvariantError);
    EXPECT_THROW(validate(NSBox{2.0}), InvariantError);
}

TEST(CorrelationBox, Validation) {
    CorrelationBox::Table t{};
    EXPECT_THROW(CorrelationBox{t}, InvariantError);
    t.fill(0.25);
    t[0] = -0.25;
    t[1] = 0.75;
    EXPECT_THROW(CorrelationBox{t}, InvariantError);
}

TEST(ExpectedScore, NsBoxEqualsE) {
    for (double e : {0.0, 0.5, 1.0 / std::numbers::sqrt2, 1.0}) EXPECT_NEAR(expected_score(ns_box(e)), e, 1e-12);
}

TEST(ExpectedScore, NsBoxEqualsERandom) {
    Rng rng(51);
    for (int i = 0; i < 1000; ++i) {
        const double e = testing::uniform(rng, -1, 1);
        EXPECT_NEAR(expected_score(ns_box(e)), e, 1e-12);
    }
}

TEST(ExpectedScore, AllZeroDeterministic) {
    EXPECT_EQ(expected_score(box_of_strategy(Deterministic{})), 0.5);
}

TEST(ExpectedScore, ConcentratedInputs) {
    Rng rng(52);
    const InputDistribution only00({1.0, 0.0, 0.0, 0.0});
    for (int i = 0; i < 50; ++i) {
        const CorrelationBox box = testing::random_box(rng);
        const double win = box(0, 0, 0, 0) + box(1, 1, 0, 0);
        const double lose = box(0, 1, 0, 0) + box(1, 0, 0, 0);
        EXPECT_NEAR(expected_score(box, only00), win - lose, 1e-15);
    }
}

TEST(ExpectedScore, MatchesWinCountingOracle) {
    Rng rng(53);
    for (int i = 0; i < 500; ++i) {
        const CorrelationBox box = testing::random_box(rng);
        const Eigen::VectorXd p = testing::random_simplex(rng, 4);
        const std::array<double, 4> pxy{p(0), p(1), p(2), p(3)};
        const InputDistribution inputs(pxy);
        const double oracle = testing::oracle_score(box, pxy);
        EXPECT_NEAR(expected_score(box, inputs), oracle, 1e-12);
        EXPECT_NEAR(score_from_win_loss(box, inputs), oracle, 1e-12);
        EXPECT_NEAR(score_from_flip_probabilities(box, inputs), oracle, 1e-12);
    }
}

TEST(ExpectedScore, UniformFormulasAgreeProperty) {
    Rng rng(54);
    for (int i = 0; i < 1000; ++i) {
        const CorrelationBox box = testing::random_box(rng);
        const double a = score_from_win_loss(box, InputDistribution::uniform());
        EXPECT_NEAR(score_from_flip_probabilities_uniform(box), a, 1e-12);
        EXPECT_NEAR(score_from_correlators_uniform(box), a, 1e-12);
        EXPECT_NEAR(testing::oracle_score(box, kUniform), a, 1e-12);
    }
}

TEST(WinProbability, Examples) {
    EXPECT_NEAR(win_probability(1.0 / std::numbers::sqrt2), (1.0 + std::numbers::sqrt2) / (2.0 * std::numbers::sqrt2),
                1e-15);
    EXPECT_NEAR(win_probability(1.0 / std::numbers::sqrt2), 0.853553, 1e-6);
    EXPECT_EQ(win_probability(0.5), 0.75);
    EXPECT_EQ(win_probability(0.0), 0.5);
    EXPECT_THROW(win_probability(1.1), InvariantError);
}

TEST(WinProbability, MatchesDirectSumProperty) {
    Rng rng(55);
    for (int i = 0; i < 500; ++i) {
        const CorrelationBox box = testing::random_box(rng);
        const Eigen::VectorXd p = testing::random_simplex(rng, 4);
        const InputDistribution inputs({p(0), p(1), p(2), p(3)});
        EXPECT_NEAR(win_probability(expected_score(box, inputs)), win_probability_direct(box, inputs), 1e-12);
    }
}

TEST(NoSignaling, Examples) {
    EXPECT_TRUE(is_no_signaling(ns_box(0.3)));

    // Alice outputs Bob's input.
    const CorrelationBox leaky = deterministic_box([](int, int y) { return y; }, [](int, int) { return 0; });
    EXPECT_FALSE(is_no_signaling(leaky));
    const auto w = signaling_witness(leaky);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->side, Side::Alice);
    EXPECT_NEAR(w->gap, 1.0, 1e-15);
    EXPECT_NE(w->other_setting, w->other_setting_alt);

    for (const Deterministic& d : all_deterministic()) EXPECT_TRUE(is_no_signaling(box_of_strategy(d)));
}

TEST(NoSignaling, BobSideWitness) {
    const CorrelationBox leaky = deterministic_box([](int, int) { return 0; }, [](int x, int) { return x; });
    const auto w = signaling_witness(leaky);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->side, Side::Bob);
}

TEST(NoSignaling, ClassicalArmsProperty) {
    Rng rng(56);
    for (int i = 0; i < 200; ++i) {
        EXPECT_TRUE(is_no_signaling(box_of_strategy(testing::random_mixture(rng, 1 + i % 5))));
        EXPECT_TRUE(is_no_signaling(box_of_strategy(NSBox{testing::uniform(rng, -1, 1)})));
    }
}

TEST(BoxOfStrategy, Examples) {
    const CorrelationBox zero = box_of_strategy(Deterministic{});
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) EXPECT_EQ(zero(0, 0, x, y), 1.0);
    EXPECT_EQ(box_of_strategy(NSBox{0.37}).table(), ns_box(0.37).table());
}

TEST(BoxOfStrategy, MixtureIsWeightedSum) {
    Rng rng(57);
    const SharedRandomness mix = testing::random_mixture(rng, 4);
    const CorrelationBox box = box_of_strategy(mix);
    for (std::size_t k = 0; k < 16; ++k) {
        double expected = 0.0;
        for (const auto& [w, d] : mix.mixture) expected += w * box_of_strategy(d).table()[k];
        EXPECT_NEAR(box.table()[k], expected, 1e-15);
    }
}

TEST(Strategy, Validation) {
    EXPECT_THROW(validate(Deterministic{{0, 2}, {0, 0}}), InvariantError);
    EXPECT_THROW(validate(SharedRandomness{}), InvariantError);
    EXPECT_THROW(validate(SharedRandomness{{{0.7, Deterministic{}}, {0.7, Deterministic{}}}}), InvariantError);
    EXPECT_THROW(validate(SharedRandomness{{{-0.5, Deterministic{}}, {1.5, Deterministic{}}}}), InvariantError);
}

TEST(Enumerate, ClassicalBound) {
    const DeterministicOptimum best = enumerate_deterministic();
    EXPECT_EQ(best.best_score, 0.5);
    EXPECT_EQ(all_deterministic().size(), 16u);
    EXPECT_NE(std::find(best.argmax.begin(), best.argmax.end(), Deterministic{}), best.argmax.end());

    // q(x) = x, r(y) = y wins only at (x, y) = (0, 0).
    const Deterministic identity_maps{{0, 1}, {0, 1}};
    EXPECT_EQ(expected_score(box_of_strategy(identity_maps)), -0.5);
    EXPECT_EQ(std::find(best.argmax.begin(), best.argmax.end(), identity_maps), best.argmax.end());
}

TEST(Enumerate, ArgmaxMatchesBruteForceInOrder) {
    std::vector<Deterministic> expected;
    for (int code = 0; code < 16; ++code) {
        const Deterministic d{{(code >> 3) & 1, (code >> 2) & 1}, {(code >> 1) & 1, code & 1}};
        if (testing::oracle_score(box_of_strategy(d), kUniform) == 0.5) expected.push_back(d);
    }
    EXPECT_EQ(enumerate_deterministic().argmax, expected);
    EXPECT_EQ(expected.size(), 8u);
}

TEST(SharedRandomness, NeverBeatsDeterministicProperty) {
    Rng rng(58);
    const double best = enumerate_deterministic().best_score;
    for (int i = 0; i < 500; ++i) {
        EXPECT_LE(expected_score(box_of_strategy(testing::random_mixture(rng, 1 + i % 8))), best + 1e-12);
    }
}

}  // namespace
}  // namespace chsh

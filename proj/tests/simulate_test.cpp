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

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "chsh/game.hpp"
#include "test_support.hpp"

namespace chsh {
namespace {

using testing::Rng;

std::string csv_of(const SimulationResult& r) {
    std::ostringstream out;
    write_records_csv(out, r.records);
    return out.str();
}

TEST(Simulate, DeterministicAllZero) {
    const SimulationResult r = simulate_rounds(Deterministic{}, 8, 1);
    ASSERT_EQ(r.records.size(), 8u);
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const RoundRecord& rec = r.records[i];
        EXPECT_EQ(rec.round_index, i);
        EXPECT_EQ(rec.q, 0);
        EXPECT_EQ(rec.r, 0);
        EXPECT_EQ(rec.win, rec.x * rec.y == 0);
    }
}

TEST(Simulate, CsvLayout) {
    const std::string csv = csv_of(simulate_rounds(Deterministic{}, 3, 5));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "round_index,x,y,q,r,win");
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(line.rfind(std::to_string(rows) + ",", 0), 0u);
        ++rows;
    }
    EXPECT_EQ(rows, 3);
}

TEST(Simulate, Reproducible) {
    const Strategy s = NSBox{0.3};
    EXPECT_EQ(simulate_rounds(s, 10000, 42).records, simulate_rounds(s, 10000, 42).records);
    EXPECT_NE(simulate_rounds(s, 10000, 42).records, simulate_rounds(s, 10000, 43).records);
}

TEST(Simulate, ParallelMatchesSerialAcrossChunkBoundaries) {
    Rng rng(61);
    const Strategy s = testing::random_setup(rng, 2, 2);
    for (std::uint64_t n : {std::uint64_t{1}, kSimulationChunk - 1, kSimulationChunk, kSimulationChunk + 1,
                            3 * kSimulationChunk + 17}) {
        const std::string serial = csv_of(simulate_rounds_serial(s, n, 9));
        for (int threads : {1, 2, 5}) {
            omp_set_num_threads(threads);
            EXPECT_EQ(csv_of(simulate_rounds(s, n, 9)), serial) << "n=" << n << " threads=" << threads;
        }
    }
}

TEST(Simulate, PrefixStable) {
    // Round i depends only on (seed, i), so a longer run extends a shorter one.
    const auto shorter = simulate_rounds(NSBox{0.5}, 5000, 3).records;
    const auto longer = simulate_rounds(NSBox{0.5}, 9000, 3).records;
    EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), longer.begin()));
}

TEST(Simulate, PrBoxAlwaysWins) {
    const SimulationResult r = simulate_rounds(NSBox{1.0}, 100000, 17);
    EXPECT_EQ(r.summary.empirical_win_rate, 1.0);
    EXPECT_EQ(r.summary.wins, 100000u);
}

TEST(Simulate, SummaryConsistent) {
    const SimulationResult r = simulate_rounds(NSBox{0.2}, 12345, 4);
    std::uint64_t won = 0;
    for (const auto& rec : r.records) {
        EXPECT_EQ(rec.win, wins(rec.q, rec.r, rec.x, rec.y));
        won += rec.win;
    }
    EXPECT_EQ(r.summary.wins, won);
    EXPECT_EQ(r.summary.n_rounds, 12345u);
    EXPECT_NEAR(r.summary.empirical_win_rate, (r.summary.empirical_score + 1.0) / 2.0, 1e-15);
}

TEST(Simulate, RejectsZeroRounds) { EXPECT_THROW(simulate_rounds(Deterministic{}, 0, 1), InvariantError); }

TEST(Simulate, ConvergesForEveryArm) {
    Rng rng(62);
    const std::vector<Strategy> arms{Deterministic{{1, 0}, {1, 1}}, testing::random_mixture(rng, 3), NSBox{0.5},
                                     NSBox{1.0 / std::numbers::sqrt2}, testing::random_setup(rng, 2, 2),
                                     testing::random_setup(rng, 3, 2)};
    const std::uint64_t n = 1000000;
    for (std::size_t i = 0; i < arms.size(); ++i) {
        const double exact = expected_score(box_of_strategy(arms[i]));
        const SimulationResult r = simulate_rounds(arms[i], n, 1000 + i);
        EXPECT_LT(std::abs(r.summary.empirical_score - exact), 5.0 / std::sqrt(static_cast<double>(n)))
            << "arm " << i;
    }
}

TEST(Simulate, EmpiricalBoxMatchesExact) {
    // Per-setting outcome frequencies, not just the aggregate score.
    Rng rng(63);
    const QuantumSetup setup = testing::random_setup(rng, 2, 2);
    const CorrelationBox box = box_of_strategy(setup);
    const std::uint64_t n = 400000;
    const SimulationResult r = simulate_rounds(setup, n, 5);
    std::array<double, 16> counts{};
    std::array<double, 4> settings{};
    for (const auto& rec : r.records) {
        counts[CorrelationBox::index(rec.q, rec.r, rec.x, rec.y)] += 1;
        settings[static_cast<std::size_t>(rec.x * 2 + rec.y)] += 1;
    }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double m = settings[static_cast<std::size_t>(x * 2 + y)];
            EXPECT_NEAR(m / static_cast<double>(n), 0.25, 5.0 * std::sqrt(0.1875 / static_cast<double>(n)));
            for (int q = 0; q < 2; ++q)
                for (int rr = 0; rr < 2; ++rr) {
                    const double p = box(q, rr, x, y);
                    const double f = counts[CorrelationBox::index(q, rr, x, y)] / m;
                    EXPECT_NEAR(f, p, 5.0 * std::sqrt(p * (1 - p) / m) + 1e-12);
                }
        }
}

}  // namespace
}  // namespace chsh

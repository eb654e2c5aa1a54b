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

#include <ostream>

#include "chsh/errors.hpp"
#include "chsh/game.hpp"
#include "chsh/random.hpp"

namespace chsh {

namespace {

// Cumulative distribution over (q, r) in order 00, 01, 10, 11 for each (x, y).
struct Sampler {
    std::array<std::array<double, 4>, 4> cdf{};
    std::array<std::array<bool, 4>, 4> possible{};

    explicit Sampler(const CorrelationBox& box) {
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                auto& c = cdf[static_cast<std::size_t>(x * 2 + y)];
                auto& ok = possible[static_cast<std::size_t>(x * 2 + y)];
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) {
                    const double p = box(k >> 1, k & 1, x, y);
                    acc += p;
                    c[static_cast<std::size_t>(k)] = acc;
                    ok[static_cast<std::size_t>(k)] = p > 0.0;
                }
            }
        }
    }

    int draw(int x, int y, double u) const {
        const auto& c = cdf[static_cast<std::size_t>(x * 2 + y)];
        const auto& ok = possible[static_cast<std::size_t>(x * 2 + y)];
        for (int k = 0; k < 4; ++k) {
            if (ok[static_cast<std::size_t>(k)] && u < c[static_cast<std::size_t>(k)]) return k;
        }
        // u landed above a cumulative total that rounded below 1.
        for (int k = 3; k >= 0; --k) {
            if (ok[static_cast<std::size_t>(k)]) return k;
        }
        return 3;
    }
};

void run_chunk(const Sampler& sampler, std::uint64_t seed, std::uint64_t chunk, std::uint64_t n,
               RoundRecord* out) {
    const std::uint64_t key = rng::derive_seed(seed, chunk);
    const std::uint64_t begin = chunk * kSimulationChunk;
    const std::uint64_t end = std::min(n, begin + kSimulationChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
        const std::uint64_t local = i - begin;
        const std::uint64_t inputs = rng::word(key, 2 * local);
        const double u = rng::to_unit(rng::word(key, 2 * local + 1));
        const int x = static_cast<int>(inputs >> 63);
        const int y = static_cast<int>((inputs >> 62) & 1);
        const int k = sampler.draw(x, y, u);
        const int q = k >> 1;
        const int r = k & 1;
        out[i - begin] = RoundRecord{i,
                                     static_cast<std::uint8_t>(x),
                                     static_cast<std::uint8_t>(y),
                                     static_cast<std::uint8_t>(q),
                                     static_cast<std::uint8_t>(r),
                                     wins(q, r, x, y)};
    }
}

SimulationSummary summarize(const std::vector<RoundRecord>& records) {
    SimulationSummary s;
    s.n_rounds = records.size();
    for (const RoundRecord& rec : records) s.wins += rec.win ? 1 : 0;
    const double n = static_cast<double>(s.n_rounds);
    s.empirical_win_rate = static_cast<double>(s.wins) / n;
    s.empirical_score = (2.0 * static_cast<double>(s.wins) - n) / n;
    return s;
}

void check_rounds(std::uint64_t n) {
    if (n < 1) throw InvariantError("simulate: number of rounds must be at least 1");
}

}  // namespace

SimulationResult simulate_rounds_serial(const Strategy& strategy, std::uint64_t n, std::uint64_t seed) {
    check_rounds(n);
    const Sampler sampler(box_of_strategy(strategy));
    SimulationResult result;
    result.records.resize(n);
    const std::uint64_t chunks = (n + kSimulationChunk - 1) / kSimulationChunk;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        run_chunk(sampler, seed, c, n, result.records.data() + c * kSimulationChunk);
    }
    result.summary = summarize(result.records);
    return result;
}

SimulationResult simulate_rounds(const Strategy& strategy, std::uint64_t n, std::uint64_t seed) {
    check_rounds(n);
    const Sampler sampler(box_of_strategy(strategy));
    SimulationResult result;
    result.records.resize(n);
    const auto chunks = static_cast<std::int64_t>((n + kSimulationChunk - 1) / kSimulationChunk);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const auto chunk = static_cast<std::uint64_t>(c);
        run_chunk(sampler, seed, chunk, n, result.records.data() + chunk * kSimulationChunk);
    }
    result.summary = summarize(result.records);
    return result;
}

void write_records_csv(std::ostream& out, const std::vector<RoundRecord>& records) {
    out << "round_index,x,y,q,r,win\n";
    for (const RoundRecord& r : records) {
        out << r.round_index << ',' << int{r.x} << ',' << int{r.y} << ',' << int{r.q} << ','
            << int{r.r} << ',' << (r.win ? 1 : 0) << '\n';
    }
}

}  // namespace chsh

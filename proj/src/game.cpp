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

#include <algorithm>
#include <cmath>
#include <string>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

constexpr int sign(int x, int y, int q, int r) { return wins(q, r, x, y) ? 1 : -1; }
constexpr int parity_sign(int x, int y) { return (x & y) ? -1 : 1; }

void require_bit(int b, const char* what) {
    if (b != 0 && b != 1) {
        throw InvariantError(std::string(what) + " must be 0 or 1, got " + std::to_string(b));
    }
}

void validate_deterministic(const Deterministic& d) {
    for (int b : d.q_of_x) require_bit(b, "deterministic q(x)");
    for (int b : d.r_of_y) require_bit(b, "deterministic r(y)");
}

CorrelationBox deterministic_box(const Deterministic& d) {
    CorrelationBox::Table t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) t[CorrelationBox::index(d.q_of_x[x], d.r_of_y[y], x, y)] = 1.0;
    return CorrelationBox(t);
}

// P(q, r | x, y) = sum over configurations in each outcome class of
// |((A_x (x) B_y) psi)(i, j)|^2, computed as A_x Psi B_y^T on the reshaped state.
CorrelationBox quantum_box(const QuantumSetup& s) {
    const int da = s.dim_a();
    const int db = s.dim_b();
    ComplexMatrix psi(da, db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) psi(i, j) = s.state()[static_cast<Eigen::Index>(i) * db + j];

    const OutcomePartition& pa = s.partition(Side::Alice);
    const OutcomePartition& pb = s.partition(Side::Bob);
    CorrelationBox::Table t{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const ComplexMatrix evolved =
                s.local(Side::Alice, x) * psi * s.local(Side::Bob, y).transpose();
            for (int i = 0; i < da; ++i)
                for (int j = 0; j < db; ++j)
                    t[CorrelationBox::index(pa[static_cast<std::size_t>(i)],
                                            pb[static_cast<std::size_t>(j)], x, y)] +=
                        std::norm(evolved(i, j));
        }
    }
    return CorrelationBox(t);
}

}  // namespace

CorrelationBox::CorrelationBox(const Table& table) : table_(table) {
    for (double& p : table_) {
        if (!std::isfinite(p) || p < -kBoxTol) {
            throw InvariantError("correlation box: negative or non-finite probability");
        }
        p = std::max(p, 0.0);
    }
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double sum = 0.0;
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r) sum += (*this)(q, r, x, y);
            if (std::abs(sum - 1.0) > kBoxTol) {
                throw InvariantError("correlation box: P(.,.|x=" + std::to_string(x) +
                                     ",y=" + std::to_string(y) + ") sums to " + std::to_string(sum));
            }
        }
    }
}

InputDistribution::InputDistribution(const std::array<double, 4>& p) : p_(p) {
    double sum = 0.0;
    for (double v : p_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvariantError("input distribution: negative or non-finite probability");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kBoxTol) {
        throw InvariantError("input distribution: probabilities sum to " + std::to_string(sum));
    }
}

void validate(const Strategy& strategy) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Deterministic>) {
                validate_deterministic(s);
            } else if constexpr (std::is_same_v<T, SharedRandomness>) {
                if (s.mixture.empty()) throw InvariantError("mixture: no components");
                double total = 0.0;
                for (const auto& [w, d] : s.mixture) {
                    if (!std::isfinite(w) || w < 0.0) {
                        throw InvariantError("mixture: weights must be nonnegative");
                    }
                    validate_deterministic(d);
                    total += w;
                }
                if (std::abs(total - 1.0) > kBoxTol) {
                    throw InvariantError("mixture: weights sum to " + std::to_string(total) +
                                         ", not 1");
                }
            } else if constexpr (std::is_same_v<T, NSBox>) {
                if (!(std::abs(s.E) <= 1.0)) {
                    throw InvariantError("ns_box: E must lie in [-1, 1], got " + std::to_string(s.E));
                }
            }
        },
        strategy);
}

CorrelationBox ns_box(double E) {
    if (!(std::abs(E) <= 1.0)) {
        throw InvariantError("ns_box: E must lie in [-1, 1], got " + std::to_string(E));
    }
    CorrelationBox::Table t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r)
                    t[CorrelationBox::index(q, r, x, y)] = (1.0 + sign(x, y, q, r) * E) / 4.0;
    return CorrelationBox(t);
}

CorrelationBox box_of_strategy(const Strategy& strategy) {
    validate(strategy);
    return std::visit(
        [](const auto& s) -> CorrelationBox {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Deterministic>) {
                return deterministic_box(s);
            } else if constexpr (std::is_same_v<T, SharedRandomness>) {
                CorrelationBox::Table t{};
                for (const auto& [w, d] : s.mixture) {
                    const auto& component = deterministic_box(d).table();
                    for (std::size_t i = 0; i < t.size(); ++i) t[i] += w * component[i];
                }
                return CorrelationBox(t);
            } else if constexpr (std::is_same_v<T, NSBox>) {
                return ns_box(s.E);
            } else {
                return quantum_box(s);
            }
        },
        strategy);
}

double expected_score(const CorrelationBox& box, const InputDistribution& inputs) {
    double score = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r) score += sign(x, y, q, r) * box(q, r, x, y) * inputs(x, y);
    return score;
}

double score_from_win_loss(const CorrelationBox& box, const InputDistribution& inputs) {
    double win = 0.0;
    double loss = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r) {
                    const double joint = box(q, r, x, y) * inputs(x, y);
                    (wins(q, r, x, y) ? win : loss) += joint;
                }
    return win - loss;
}

double score_from_flip_probabilities(const CorrelationBox& box, const InputDistribution& inputs) {
    double flips = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            flips += parity_sign(x, y) * (box(0, 1, x, y) + box(1, 0, x, y)) * inputs(x, y);
    return 1.0 - 2.0 * inputs(1, 1) - 2.0 * flips;
}

double score_from_flip_probabilities_uniform(const CorrelationBox& box) {
    double flips = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) flips += parity_sign(x, y) * (box(0, 1, x, y) + box(1, 0, x, y));
    return 0.5 * (1.0 - flips);
}

double score_from_correlators_uniform(const CorrelationBox& box) {
    double total = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            total += parity_sign(x, y) *
                     (box(0, 0, x, y) - box(0, 1, x, y) - box(1, 0, x, y) + box(1, 1, x, y));
    return total / 4.0;
}

double win_probability(double score) {
    if (!(std::abs(score) <= 1.0 + 1e-12)) {
        throw InvariantError("win_probability: score must lie in [-1, 1], got " +
                             std::to_string(score));
    }
    return (score + 1.0) / 2.0;
}

double win_probability_direct(const CorrelationBox& box, const InputDistribution& inputs) {
    double p = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r)
                    if (wins(q, r, x, y)) p += box(q, r, x, y) * inputs(x, y);
    return p;
}

std::optional<SignalingWitness> signaling_witness(const CorrelationBox& box, double tol) {
    std::optional<SignalingWitness> worst;
    auto consider = [&](Side side, int outcome, int own, double a, double b) {
        const double gap = std::abs(a - b);
        if (gap > tol && (!worst || gap > worst->gap)) {
            worst = SignalingWitness{side, outcome, own, 0, 1, gap};
        }
    };
    for (int own = 0; own < 2; ++own) {
        for (int o = 0; o < 2; ++o) {
            // Alice: P(q | x, y) = sum_r P(q, r | x, y) must not depend on y.
            consider(Side::Alice, o, own, box(o, 0, own, 0) + box(o, 1, own, 0),
                     box(o, 0, own, 1) + box(o, 1, own, 1));
            // Bob: P(r | x, y) = sum_q P(q, r | x, y) must not depend on x.
            consider(Side::Bob, o, own, box(0, o, 0, own) + box(1, o, 0, own),
                     box(0, o, 1, own) + box(1, o, 1, own));
        }
    }
    return worst;
}

bool is_no_signaling(const CorrelationBox& box, double tol) {
    return !signaling_witness(box, tol).has_value();
}

std::vector<Deterministic> all_deterministic() {
    std::vector<Deterministic> out;
    out.reserve(16);
    for (int code = 0; code < 16; ++code) {
        out.push_back(Deterministic{{(code >> 3) & 1, (code >> 2) & 1}, {(code >> 1) & 1, code & 1}});
    }
    return out;
}

DeterministicOptimum enumerate_deterministic() {
    DeterministicOptimum best{-2.0, {}};
    for (const Deterministic& d : all_deterministic()) {
        // Score straight from the win condition over the four equally likely inputs.
        int total = 0;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) total += sign(x, y, d.q_of_x[x], d.r_of_y[y]);
        const double score = total / 4.0;
        if (score > best.best_score) {
            best.best_score = score;
            best.argmax.clear();
        }
        if (score == best.best_score) best.argmax.push_back(d);
    }
    return best;
}

}  // namespace chsh

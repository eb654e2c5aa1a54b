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

#include <algorithm>
#include <cmath>
#include <random>

#include "chsh/errors.hpp"
#include "chsh/game.hpp"
#include "chsh/random.hpp"
#include "chsh/tsirelson.hpp"

namespace chsh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinStep = 1e-7;

// Layout of the flat parameter vector: [state | a0 | a1 | b0 | b1].
struct Layout {
    int dim_a;
    int dim_b;
    bool classical;
    int state_count;
    int alice_count;
    int bob_count;

    explicit Layout(const OptimizeOptions& o)
        : dim_a(o.dim_a), dim_b(o.dim_b), classical(o.classical_only) {
        if (classical) {
            state_count = 2 * (dim_a + dim_b);
        } else if (dim_a == 2 && dim_b == 2) {
            state_count = 1;
        } else {
            state_count = 2 * dim_a * dim_b;
        }
        alice_count = local_count(dim_a);
        bob_count = local_count(dim_b);
    }

    int local_count(int d) const {
        if (classical) return d;
        return d == 2 ? 3 : givens_parameter_count(d);
    }

    int size() const { return state_count + 2 * alice_count + 2 * bob_count; }

    // Angles live in [0, 2 pi); amplitude coordinates in [-1, 1].
    bool is_amplitude(int k) const { return k < state_count && state_count > 1; }
};

ComplexVector amplitudes_from(std::span<const double> p) {
    ComplexVector v(static_cast<Eigen::Index>(p.size() / 2));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = Complex(p[static_cast<std::size_t>(2 * i)], p[static_cast<std::size_t>(2 * i + 1)]);
    }
    return v;
}

ComplexMatrix local_unitary(const Layout& layout, int dim, std::span<const double> p) {
    if (layout.classical) {
        ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) u(i, i) = std::polar(1.0, p[static_cast<std::size_t>(i)]);
        return u;
    }
    if (dim == 2) return euler_zyz(p[0], p[1], p[2]);
    return givens_unitary(dim, p);
}

StateVector state_from(const Layout& layout, std::span<const double> p) {
    if (layout.classical) {
        const auto a = amplitudes_from(p.subspan(0, static_cast<std::size_t>(2 * layout.dim_a)));
        const auto b = amplitudes_from(p.subspan(static_cast<std::size_t>(2 * layout.dim_a),
                                                 static_cast<std::size_t>(2 * layout.dim_b)));
        ComplexVector product(static_cast<Eigen::Index>(layout.dim_a) * layout.dim_b);
        for (int i = 0; i < layout.dim_a; ++i)
            for (int j = 0; j < layout.dim_b; ++j) product(i * layout.dim_b + j) = a(i) * b(j);
        if (!(product.norm() > 1e-150)) return StateVector::basis(product.size(), 0);
        return StateVector::normalize(product);
    }
    if (layout.state_count == 1) {
        ComplexVector v = ComplexVector::Zero(4);
        v(0) = std::cos(p[0]);
        v(3) = std::sin(p[0]);
        return StateVector::normalize(v);
    }
    const ComplexVector v = amplitudes_from(p);
    if (!(v.norm() > 1e-150)) return StateVector::basis(v.size(), 0);
    return StateVector::normalize(v);
}

QuantumSetup setup_from(const Layout& layout, std::span<const double> p) {
    std::size_t at = 0;
    auto take = [&](int n) {
        auto s = p.subspan(at, static_cast<std::size_t>(n));
        at += static_cast<std::size_t>(n);
        return s;
    };
    StateVector state = state_from(layout, take(layout.state_count));
    ComplexMatrix a0 = local_unitary(layout, layout.dim_a, take(layout.alice_count));
    ComplexMatrix a1 = local_unitary(layout, layout.dim_a, take(layout.alice_count));
    ComplexMatrix b0 = local_unitary(layout, layout.dim_b, take(layout.bob_count));
    ComplexMatrix b1 = local_unitary(layout, layout.dim_b, take(layout.bob_count));
    return QuantumSetup(std::move(state), {std::move(a0), std::move(a1)}, {std::move(b0), std::move(b1)});
}

double objective(const Layout& layout, std::span<const double> p) {
    return expected_score(box_of_strategy(Strategy(setup_from(layout, p))));
}

// Golden-section maximization of g over [lo, hi].
template <typename F>
std::pair<double, double> golden_max(F&& g, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c);
    double gd = g(d);
    while (b - a > 1e-11 * std::max(1.0, std::abs(a))) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    return gc > gd ? std::pair{c, gc} : std::pair{d, gd};
}

struct RestartResult {
    std::vector<double> params;
    double score;
};

RestartResult run_restart(const Layout& layout, const OptimizeOptions& options, int restart) {
    std::mt19937_64 gen(rng::derive_seed(options.seed, static_cast<std::uint64_t>(restart)));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> amplitude(-1.0, 1.0);

    const int n = layout.size();
    std::vector<double> p(static_cast<std::size_t>(n));
    std::vector<double> step(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const bool amp = layout.is_amplitude(k);
        p[static_cast<std::size_t>(k)] = amp ? amplitude(gen) : angle(gen);
        step[static_cast<std::size_t>(k)] = amp ? 1.0 : kPi;
    }

    double f = objective(layout, p);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        const double before = f;
        for (int k = 0; k < n; ++k) {
            auto& pk = p[static_cast<std::size_t>(k)];
            auto& sk = step[static_cast<std::size_t>(k)];
            const double origin = pk;
            auto g = [&](double t) {
                pk = t;
                return objective(layout, p);
            };
            const auto [t, gt] = golden_max(g, origin - sk, origin + sk);
            if (gt > f) {
                pk = t;
                f = gt;
            } else {
                pk = origin;
            }
            // Follow the size of the last move; the line search stays bracketed
            // around the current point.
            const double cap = layout.is_amplitude(k) ? 1.0 : kPi;
            sk = std::clamp(3.0 * std::abs(pk - origin), kMinStep, cap);
        }
        if (f - before < options.tol && sweep > 0) break;
    }
    return {std::move(p), f};
}

void check_options(const OptimizeOptions& o) {
    if (o.dim_a < 2 || o.dim_b < 2 || o.dim_a * o.dim_b > 16) {
        throw DimensionError("optimize: local dimensions must be >= 2 with product <= 16");
    }
    if (o.restarts < 1) throw InvariantError("optimize: restarts must be at least 1");
}

OptimizeResult assemble(const Layout& layout, const std::vector<RestartResult>& runs) {
    std::size_t best = 0;
    std::vector<double> scores;
    scores.reserve(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) {
        scores.push_back(runs[r].score);
        if (runs[r].score > runs[best].score) best = r;
    }
    QuantumSetup setup = setup_from(layout, runs[best].params);
    const double score = score_of_setup(setup);
    return OptimizeResult{std::move(setup), score, static_cast<int>(best), std::move(scores)};
}

}  // namespace

ComplexMatrix euler_zyz(double alpha, double beta, double gamma) {
    auto rz = [](double t) {
        ComplexMatrix m = ComplexMatrix::Zero(2, 2);
        m(0, 0) = std::polar(1.0, -t / 2.0);
        m(1, 1) = std::polar(1.0, t / 2.0);
        return m;
    };
    return rz(alpha) * rotation(beta / 2.0) * rz(gamma);
}

int givens_parameter_count(int dim) { return dim * dim; }

ComplexMatrix givens_unitary(int dim, std::span<const double> params) {
    if (static_cast<int>(params.size()) != givens_parameter_count(dim)) {
        throw DimensionError("givens_unitary: expected dim^2 parameters");
    }
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    std::size_t at = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const double theta = params[at++];
            const double phi = params[at++];
            ComplexMatrix g = ComplexMatrix::Identity(dim, dim);
            g(i, i) = std::cos(theta);
            g(j, j) = std::cos(theta);
            g(i, j) = -std::polar(std::sin(theta), -phi);
            g(j, i) = std::polar(std::sin(theta), phi);
            u = g * u;
        }
    }
    for (int i = 0; i < dim; ++i) u.row(i) *= std::polar(1.0, params[at++]);
    return u;
}

OptimizeResult optimize_serial(const OptimizeOptions& options) {
    check_options(options);
    const Layout layout(options);
    std::vector<RestartResult> runs;
    runs.reserve(static_cast<std::size_t>(options.restarts));
    for (int r = 0; r < options.restarts; ++r) runs.push_back(run_restart(layout, options, r));
    return assemble(layout, runs);
}

OptimizeResult optimize(const OptimizeOptions& options) {
    check_options(options);
    const Layout layout(options);
    std::vector<RestartResult> runs(static_cast<std::size_t>(options.restarts));
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < options.restarts; ++r) {
        runs[static_cast<std::size_t>(r)] = run_restart(layout, options, r);
    }
    return assemble(layout, runs);
}

}  // namespace chsh

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

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "chsh/errors.hpp"
#include "chsh/random.hpp"
#include "chsh/stochastic.hpp"

namespace chsh {

namespace {

struct RestartOutcome {
    std::optional<ComplexMatrix> unitary;
    double best_residual = std::numeric_limits<double>::infinity();
};

void check_dilation_input(const StochasticMatrix& gamma, const DilationOptions& options) {
    if (gamma.dim_out() != gamma.dim_in()) {
        throw DilationInputError("dilate: matrix is not square");
    }
    if (!gamma.is_doubly_stochastic(std::max(options.tol, kColumnSumTol))) {
        throw DilationInputError("dilate: matrix is not doubly stochastic (row sums differ from 1)");
    }
    if (options.max_restarts < 1 || options.max_iterations < 1 || !(options.tol > 0.0)) {
        throw InvariantError("dilate: restarts, iterations and tol must be positive");
    }
}

// One alternating-projection run from random phases.
RestartOutcome run_restart(const RealMatrix& moduli, const RealMatrix& gamma,
                           const DilationOptions& options, int restart) {
    const Eigen::Index n = moduli.rows();
    std::mt19937_64 gen(rng::derive_seed(options.seed, static_cast<std::uint64_t>(restart)));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    ComplexMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            m(i, j) = std::polar(moduli(i, j), phase(gen));
        }
    }

    RestartOutcome outcome;
    double previous = std::numeric_limits<double>::infinity();
    int flat = 0;
    for (int it = 0; it < options.max_iterations; ++it) {
        const ComplexMatrix u = polar_unitary(m);
        const double modulus_residual = max_abs(RealMatrix(u.cwiseAbs2() - gamma));
        outcome.best_residual = std::min(outcome.best_residual, modulus_residual);
        if (modulus_residual <= options.tol) {
            const double unitary_residual =
                max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(n, n)));
            if (unitary_residual <= options.tol) {
                outcome.unitary = u;
                return outcome;
            }
        }
        // A fixed point that is not a solution: further iterations change nothing.
        flat = std::abs(previous - modulus_residual) < 1e-15 ? flat + 1 : 0;
        if (flat >= 50) break;
        previous = modulus_residual;

        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const double r = std::abs(u(i, j));
                const Complex unit = r > 0.0 ? u(i, j) / r : Complex(1.0, 0.0);
                m(i, j) = moduli(i, j) * unit;
            }
        }
    }
    return outcome;
}

DilationResult collect(std::vector<RestartOutcome>& outcomes) {
    DilationResult result;
    result.best_residual = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        result.best_residual = std::min(result.best_residual, outcomes[r].best_residual);
        if (!result.unitary && outcomes[r].unitary) {
            result.unitary = std::move(outcomes[r].unitary);
            result.restart = static_cast<int>(r);
        }
    }
    return result;
}

}  // namespace

DilationResult find_unitary_dilation_serial(const StochasticMatrix& gamma,
                                            const DilationOptions& options) {
    check_dilation_input(gamma, options);
    const RealMatrix moduli = gamma.matrix().cwiseSqrt();
    std::vector<RestartOutcome> outcomes;
    for (int r = 0; r < options.max_restarts; ++r) {
        outcomes.push_back(run_restart(moduli, gamma.matrix(), options, r));
        if (outcomes.back().unitary) break;
    }
    return collect(outcomes);
}

DilationResult find_unitary_dilation(const StochasticMatrix& gamma, const DilationOptions& options) {
    check_dilation_input(gamma, options);
    const RealMatrix moduli = gamma.matrix().cwiseSqrt();
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(options.max_restarts));

    // Restarts above the lowest known success are skipped; the outcome of every
    // restart below it is still computed, so the winner does not depend on
    // scheduling.
    std::atomic<int> first_success{options.max_restarts};
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < options.max_restarts; ++r) {
        if (r > first_success.load(std::memory_order_relaxed)) continue;
        outcomes[static_cast<std::size_t>(r)] = run_restart(moduli, gamma.matrix(), options, r);
        if (outcomes[static_cast<std::size_t>(r)].unitary) {
            int known = first_success.load();
            while (r < known && !first_success.compare_exchange_weak(known, r)) {
            }
        }
    }
    const int cut = std::min(first_success.load() + 1, options.max_restarts);
    outcomes.resize(static_cast<std::size_t>(cut));
    return collect(outcomes);
}

}  // namespace chsh

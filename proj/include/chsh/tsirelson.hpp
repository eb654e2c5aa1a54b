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

// Operator view of a factorized quantum strategy. For settings x, y the
// joint operation is A_x (x) B_y, so outcome projectors conjugated by the
// local unitaries act on one tensor factor each. Their +-1 combinations give
// the CHSH operator C = A0 (B0 + B1) + A1 (B0 - B1), whose expectation is four
// times the game score and whose spectral norm never exceeds 2 sqrt 2.

#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "chsh/quantum_setup.hpp"

namespace chsh {

inline constexpr double kTsirelsonScore = 1.0 / std::numbers::sqrt2;
inline constexpr double kTsirelsonNorm = 2.0 * std::numbers::sqrt2;

/// A_x^q = A_x^dagger P_q A_x (x) I for Alice, I (x) B_y^dagger P_r B_y for
/// Bob, where P_q sums configuration projectors over the outcome class q.
ComplexMatrix outcome_observable(Side side, int setting, int outcome, const QuantumSetup& setup);

/// Outcome-0 projector minus outcome-1 projector. Squares to the identity.
ComplexMatrix dichotomic(Side side, int setting, const QuantumSetup& setup);

ComplexMatrix chsh_operator(const QuantumSetup& setup);

/// (1/4) <Psi| C |Psi>.
double score_of_setup(const QuantumSetup& setup);

/// Same, with the state taken from a preparation unitary instead of the one
/// stored in `setup`.
double score_of_setup(const QuantumSetup& setup, const PreparationUnitary& prep);

struct OptimizeOptions {
    int dim_a = 2;
    int dim_b = 2;
    int restarts = 100;
    std::uint64_t seed = 0;
    /// A restart stops once a full coordinate sweep improves the score by less
    /// than this.
    double tol = 1e-13;
    int max_sweeps = 400;
    /// Restrict to diagonal local unitaries and product states.
    bool classical_only = false;
};

struct OptimizeResult {
    QuantumSetup setup;
    double score;
    int best_restart;
    /// Final score of every restart, in restart order.
    std::vector<double> restart_scores;
};

/// Multi-restart coordinate ascent with golden-section line searches. Qubit
/// pairs use the Schmidt form cos(phi)|00> + sin(phi)|11> and Z-Y-Z Euler
/// angles per local unitary; larger dimensions use a general normalized state
/// and Givens-rotation unitaries. Restarts run under OpenMP with seeds derived
/// from (seed, restart); ties go to the lowest restart index.
OptimizeResult optimize(const OptimizeOptions& options);
OptimizeResult optimize_serial(const OptimizeOptions& options);

/// Parameterized unitaries used by the optimizer, exposed for tests.
ComplexMatrix euler_zyz(double alpha, double beta, double gamma);
ComplexMatrix givens_unitary(int dim, std::span<const double> params);
int givens_parameter_count(int dim);

}  // namespace chsh

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

// Column-stochastic transition matrices and the operations on them:
// evolution of distributions, division at an intermediate time, unistochastic
// matrices, numerical unitary dilation, and the interference (qCor) matrix.
//
// Convention: gamma(q_t, q_0) = p(q_t | q_0). Columns sum to one, and
// evolution is a matrix-vector product.

#pragma once

#include <cstdint>
#include <optional>

#include "chsh/errors.hpp"
#include "chsh/linalg.hpp"

namespace chsh {

inline constexpr double kColumnSumTol = 1e-10;
/// Round-off negatives down to this value are zeroed on construction.
inline constexpr double kNegativeClip = 1e-12;

class StochasticMatrix {
   public:
    /// Validates entries in [0, 1] (with kNegativeClip slack) and unit column
    /// sums within kColumnSumTol. Throws InvariantError otherwise.
    explicit StochasticMatrix(RealMatrix entries);

    static StochasticMatrix identity(Eigen::Index dim);
    /// Every entry 1/dim.
    static StochasticMatrix uniform(Eigen::Index dim);

    Eigen::Index dim_out() const { return entries_.rows(); }
    Eigen::Index dim_in() const { return entries_.cols(); }
    double operator()(Eigen::Index q_t, Eigen::Index q_0) const { return entries_(q_t, q_0); }
    const RealMatrix& matrix() const { return entries_; }

    bool is_doubly_stochastic(double tol = kColumnSumTol) const;

   private:
    RealMatrix entries_;
};

/// Composition a * b (apply b first). The product of stochastic matrices is
/// stochastic.
StochasticMatrix operator*(const StochasticMatrix& a, const StochasticMatrix& b);

class Distribution {
   public:
    explicit Distribution(Eigen::VectorXd probabilities);
    static Distribution point(Eigen::Index dim, Eigen::Index index);

    Eigen::Index dim() const { return probabilities_.size(); }
    double operator[](Eigen::Index i) const { return probabilities_(i); }
    const Eigen::VectorXd& vector() const { return probabilities_; }

   private:
    Eigen::VectorXd probabilities_;
};

/// p_t(q) = sum_{q0} gamma(q, q0) p0(q0).
Distribution evolve(const StochasticMatrix& gamma, const Distribution& p0);

struct DivisionResult {
    /// The later factor, present when total = later * first within tol.
    std::optional<StochasticMatrix> later;
    /// max |total - later * first| for the candidate that was tested.
    double residual = 0.0;
};

inline constexpr double kDefaultDivisionTol = 1e-8;

/// Searches for a stochastic Gamma' with total = Gamma' * first. Solves the
/// linear system in the least-squares (minimum-norm) sense, zeroes negatives
/// no larger than tol in magnitude, renormalizes columns and accepts when the
/// residual is within tol. When `first` is singular the accepted factor is
/// one feasible choice among many.
DivisionResult divide_with_residual(const StochasticMatrix& total, const StochasticMatrix& first,
                                    double tol = kDefaultDivisionTol);

std::optional<StochasticMatrix> divide(const StochasticMatrix& total, const StochasticMatrix& first,
                                       double tol = kDefaultDivisionTol);

/// gamma(i, j) = |u(i, j)|^2 for a unitary u.
StochasticMatrix unistochastic_of(const ComplexMatrix& u);

struct DilationOptions {
    double tol = 1e-8;
    int max_restarts = 64;
    int max_iterations = 10000;
    std::uint64_t seed = 0;
};

struct DilationResult {
    std::optional<ComplexMatrix> unitary;
    /// Index of the restart that succeeded, or -1.
    int restart = -1;
    /// Best modulus residual max ||U|^2 - gamma| seen over all restarts.
    double best_residual = 0.0;
};

/// Thrown for inputs that cannot be dilated in principle (not square, not
/// doubly stochastic). Distinct from a search that finds nothing.
class DilationInputError : public InvariantError {
   public:
    using InvariantError::InvariantError;
};

/// Alternating projections between matrices with moduli sqrt(gamma) and the
/// unitary group (polar decomposition), restarted from random phases. Restarts
/// run under OpenMP; the reported unitary is the one from the lowest
/// successful restart index, so the result is independent of thread count.
/// An empty result means "not found", not "does not exist".
DilationResult find_unitary_dilation(const StochasticMatrix& gamma, const DilationOptions& options);

/// Serial reference of find_unitary_dilation. Produces identical results.
DilationResult find_unitary_dilation_serial(const StochasticMatrix& gamma,
                                            const DilationOptions& options);

/// qCor = Gamma_total - Gamma' Gamma_first where Gamma' = |u_total u_first^dagger|^2.
/// Columns sum to zero.
RealMatrix qcor(const ComplexMatrix& u_total, const ComplexMatrix& u_first);

}  // namespace chsh

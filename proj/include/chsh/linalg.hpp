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

// Dense complex linear algebra for small configuration spaces, plus the
// primitives that translate between unitary amplitudes and transition
// probabilities: projectors, Kronecker products, the trace dictionary,
// amplitude (phase) representations and configuration-basis dephasing.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string_view>

namespace chsh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

class StochasticMatrix;

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kStateNormTol = 1e-12;
inline constexpr Eigen::Index kMaxDim = 64;

/// Throws InvariantError if `m` is empty, larger than kMaxDim on a side, or
/// holds a NaN/Inf entry. `what` names the operand in the message.
void require_valid(const ComplexMatrix& m, std::string_view what);
void require_valid(const RealMatrix& m, std::string_view what);

/// Normalized complex vector. Construction checks the norm against
/// kStateNormTol; use `normalize` to build one from arbitrary amplitudes.
class StateVector {
   public:
    explicit StateVector(ComplexVector amplitudes);

    static StateVector normalize(const ComplexVector& amplitudes);
    static StateVector basis(Eigen::Index dim, Eigen::Index index);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }
    Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

   private:
    ComplexVector amplitudes_;
};

/// Real phases in radians, one per matrix entry.
class PhaseMatrix {
   public:
    explicit PhaseMatrix(RealMatrix phases);
    static PhaseMatrix zeros(Eigen::Index rows, Eigen::Index cols);

    Eigen::Index rows() const { return phases_.rows(); }
    Eigen::Index cols() const { return phases_.cols(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return phases_(i, j); }
    const RealMatrix& matrix() const { return phases_; }

   private:
    RealMatrix phases_;
};

ComplexMatrix identity(Eigen::Index dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_z();

/// Real rotation [[cos t, -sin t], [sin t, cos t]].
ComplexMatrix rotation(double theta);

/// Kronecker product; a acts on the left (slow) factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |(u^dagger u - I)_ij| <= tol. Throws DimensionError when u is not square.
bool is_unitary(const ComplexMatrix& u, double tol = kUnitarityTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kUnitarityTol);

/// Throws InvariantError when `u` is not unitary within tol.
void require_unitary(const ComplexMatrix& u, std::string_view what, double tol = kUnitarityTol);

/// |index><index| in a `dim`-dimensional configuration basis.
ComplexMatrix projector(Eigen::Index dim, Eigen::Index index);

/// p(q_t | q_0) = Tr[P_{q_t} U P_{q_0} U^dagger] = |U(q_t, q_0)|^2.
double dictionary_prob(const ComplexMatrix& u, Eigen::Index q_t, Eigen::Index q_0);

/// Theta(i, j) = exp(i phase(i, j)) sqrt(gamma(i, j)). The result need not be
/// unitary; its entrywise squared modulus reproduces gamma.
ComplexMatrix amplitude_representation(const StochasticMatrix& gamma, const PhaseMatrix& phases);

/// Zeroes off-diagonal entries in the configuration basis. Requires a
/// Hermitian, unit-trace input.
ComplexMatrix dephase(const ComplexMatrix& rho);

/// Entrywise |m_ij|^2.
RealMatrix squared_moduli(const ComplexMatrix& m);

/// Largest absolute eigenvalue of a Hermitian matrix, from a dense
/// self-adjoint eigendecomposition.
double spectral_norm_hermitian(const ComplexMatrix& h);

/// Unitary factor W V^dagger of the polar decomposition of m = W S V^dagger.
ComplexMatrix polar_unitary(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
double max_abs(const RealMatrix& m);

}  // namespace chsh

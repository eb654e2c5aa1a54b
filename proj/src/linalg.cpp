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

#include "chsh/linalg.hpp"

#include <cmath>
#include <string>

#include "chsh/errors.hpp"
#include "chsh/stochastic.hpp"

namespace chsh {

namespace {

template <typename Matrix>
void require_valid_impl(const Matrix& m, std::string_view what) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw DimensionError(std::string(what) + ": matrix must be at least 1x1");
    }
    if (m.rows() > kMaxDim || m.cols() > kMaxDim) {
        throw DimensionError(std::string(what) + ": dimension exceeds " + std::to_string(kMaxDim));
    }
    if (!m.allFinite()) {
        throw InvariantError(std::string(what) + ": non-finite entry");
    }
}

}  // namespace

void require_valid(const ComplexMatrix& m, std::string_view what) { require_valid_impl(m, what); }
void require_valid(const RealMatrix& m, std::string_view what) { require_valid_impl(m, what); }

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1 || amplitudes_.size() > kMaxDim * kMaxDim) {
        throw DimensionError("state vector: bad dimension " + std::to_string(amplitudes_.size()));
    }
    if (!amplitudes_.allFinite()) {
        throw InvariantError("state vector: non-finite amplitude");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kStateNormTol) {
        throw InvariantError("state vector: squared norm " + std::to_string(amplitudes_.squaredNorm()) +
                             " is not 1");
    }
}

StateVector StateVector::normalize(const ComplexVector& amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvariantError("state vector: cannot normalize a zero or non-finite vector");
    }
    return StateVector(amplitudes / norm);
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw DimensionError("basis state index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return StateVector(std::move(v));
}

PhaseMatrix::PhaseMatrix(RealMatrix phases) : phases_(std::move(phases)) {
    require_valid(phases_, "phase matrix");
}

PhaseMatrix PhaseMatrix::zeros(Eigen::Index rows, Eigen::Index cols) {
    return PhaseMatrix(RealMatrix::Zero(rows, cols));
}

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    ComplexMatrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_valid(a, "tensor lhs");
    require_valid(b, "tensor rhs");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (u.rows() != u.cols()) {
        throw DimensionError("is_unitary: matrix is " + std::to_string(u.rows()) + "x" +
                             std::to_string(u.cols()) + ", not square");
    }
    if (!u.allFinite()) return false;
    const ComplexMatrix defect = u.adjoint() * u - identity(u.rows());
    return max_abs(defect) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(ComplexMatrix(m - m.adjoint())) <= tol;
}

void require_unitary(const ComplexMatrix& u, std::string_view what, double tol) {
    require_valid(u, what);
    if (u.rows() != u.cols()) {
        throw DimensionError(std::string(what) + ": unitary must be square");
    }
    if (!is_unitary(u, tol)) {
        throw InvariantError(std::string(what) + ": matrix is not unitary");
    }
}

ComplexMatrix projector(Eigen::Index dim, Eigen::Index index) {
    if (dim < 1 || dim > kMaxDim) {
        throw DimensionError("projector: dimension out of range");
    }
    if (index < 0 || index >= dim) {
        throw DimensionError("projector: index " + std::to_string(index) + " out of range for dim " +
                             std::to_string(dim));
    }
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(index, index) = 1.0;
    return p;
}

double dictionary_prob(const ComplexMatrix& u, Eigen::Index q_t, Eigen::Index q_0) {
    require_unitary(u, "dictionary_prob");
    if (q_t < 0 || q_t >= u.rows() || q_0 < 0 || q_0 >= u.cols()) {
        throw DimensionError("dictionary_prob: configuration index out of range");
    }
    return std::norm(u(q_t, q_0));
}

ComplexMatrix amplitude_representation(const StochasticMatrix& gamma, const PhaseMatrix& phases) {
    if (gamma.dim_out() != phases.rows() || gamma.dim_in() != phases.cols()) {
        throw DimensionError("amplitude_representation: phase matrix shape does not match gamma");
    }
    ComplexMatrix theta(gamma.dim_out(), gamma.dim_in());
    for (Eigen::Index i = 0; i < theta.rows(); ++i) {
        for (Eigen::Index j = 0; j < theta.cols(); ++j) {
            theta(i, j) = std::polar(std::sqrt(gamma(i, j)), phases(i, j));
        }
    }
    return theta;
}

ComplexMatrix dephase(const ComplexMatrix& rho) {
    require_valid(rho, "dephase");
    if (rho.rows() != rho.cols()) {
        throw DimensionError("dephase: density matrix must be square");
    }
    if (!is_hermitian(rho, kUnitarityTol)) {
        throw InvariantError("dephase: density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kUnitarityTol) {
        throw InvariantError("dephase: density matrix trace is not 1");
    }
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    out.diagonal() = rho.diagonal();
    return out;
}

RealMatrix squared_moduli(const ComplexMatrix& m) { return m.cwiseAbs2(); }

double spectral_norm_hermitian(const ComplexMatrix& h) {
    require_valid(h, "spectral_norm_hermitian");
    if (!is_hermitian(h, 1e-9)) {
        throw InvariantError("spectral_norm_hermitian: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace chsh

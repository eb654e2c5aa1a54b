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

#include "chsh/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chsh/errors.hpp"

namespace chsh {

StochasticMatrix::StochasticMatrix(RealMatrix entries) : entries_(std::move(entries)) {
    require_valid(entries_, "stochastic matrix");
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
        for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
            double& e = entries_(i, j);
            if (e < -kNegativeClip || e > 1.0 + kNegativeClip) {
                throw InvariantError("stochastic matrix: entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") = " + std::to_string(e) +
                                     " outside [0,1]");
            }
            e = std::clamp(e, 0.0, 1.0);
        }
        const double sum = entries_.col(j).sum();
        if (std::abs(sum - 1.0) > kColumnSumTol) {
            throw InvariantError("stochastic matrix: column " + std::to_string(j) + " sums to " +
                                 std::to_string(sum));
        }
    }
}

StochasticMatrix StochasticMatrix::identity(Eigen::Index dim) {
    return StochasticMatrix(RealMatrix::Identity(dim, dim));
}

StochasticMatrix StochasticMatrix::uniform(Eigen::Index dim) {
    return StochasticMatrix(RealMatrix::Constant(dim, dim, 1.0 / static_cast<double>(dim)));
}

bool StochasticMatrix::is_doubly_stochastic(double tol) const {
    if (dim_out() != dim_in()) return false;
    return (entries_.rowwise().sum().array() - 1.0).abs().maxCoeff() <= tol;
}

StochasticMatrix operator*(const StochasticMatrix& a, const StochasticMatrix& b) {
    if (a.dim_in() != b.dim_out()) {
        throw DimensionError("stochastic product: inner dimensions differ");
    }
    return StochasticMatrix(a.matrix() * b.matrix());
}

Distribution::Distribution(Eigen::VectorXd probabilities) : probabilities_(std::move(probabilities)) {
    if (probabilities_.size() < 1) {
        throw DimensionError("distribution: empty");
    }
    if (!probabilities_.allFinite()) {
        throw InvariantError("distribution: non-finite probability");
    }
    for (auto& p : probabilities_) {
        if (p < -kNegativeClip) {
            throw InvariantError("distribution: negative probability " + std::to_string(p));
        }
        p = std::max(p, 0.0);
    }
    if (std::abs(probabilities_.sum() - 1.0) > kColumnSumTol) {
        throw InvariantError("distribution: probabilities sum to " +
                             std::to_string(probabilities_.sum()));
    }
}

Distribution Distribution::point(Eigen::Index dim, Eigen::Index index) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
    p(index) = 1.0;
    return Distribution(std::move(p));
}

Distribution evolve(const StochasticMatrix& gamma, const Distribution& p0) {
    if (gamma.dim_in() != p0.dim()) {
        throw DimensionError("evolve: matrix has " + std::to_string(gamma.dim_in()) +
                             " input configurations, distribution has " + std::to_string(p0.dim()));
    }
    Eigen::VectorXd pt = gamma.matrix() * p0.vector();
    pt /= pt.sum();
    return Distribution(std::move(pt));
}

DivisionResult divide_with_residual(const StochasticMatrix& total, const StochasticMatrix& first,
                                    double tol) {
    if (total.dim_in() != first.dim_in()) {
        throw DimensionError("divide: total and first factor have different input dimensions");
    }
    const RealMatrix& t = total.matrix();
    const RealMatrix& f = first.matrix();
    const Eigen::Index out = t.rows();

    // X f = t  <=>  f^T X^T = t^T, minimum-norm least squares.
    Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(f.transpose());
    RealMatrix x = cod.solve(t.transpose()).transpose();

    // Column-sum defects d lie in the left null space of f whenever t and f are
    // stochastic, so adding (1/out) 1 d^T restores unit column sums without
    // moving x f.
    const Eigen::RowVectorXd defect = Eigen::RowVectorXd::Ones(x.cols()) - x.colwise().sum();
    x += Eigen::VectorXd::Constant(out, 1.0 / static_cast<double>(out)) * defect;

    DivisionResult result;
    result.residual = max_abs(RealMatrix(t - x * f));
    if (x.minCoeff() < -tol || x.maxCoeff() > 1.0 + tol) {
        return result;
    }
    x = x.cwiseMax(0.0).cwiseMin(1.0);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double sum = x.col(j).sum();
        if (sum <= 0.0) return result;
        x.col(j) /= sum;
    }
    result.residual = max_abs(RealMatrix(t - x * f));
    if (result.residual <= tol) {
        result.later = StochasticMatrix(std::move(x));
    }
    return result;
}

std::optional<StochasticMatrix> divide(const StochasticMatrix& total, const StochasticMatrix& first,
                                       double tol) {
    return divide_with_residual(total, first, tol).later;
}

StochasticMatrix unistochastic_of(const ComplexMatrix& u) {
    require_unitary(u, "unistochastic_of");
    return StochasticMatrix(squared_moduli(u));
}

RealMatrix qcor(const ComplexMatrix& u_total, const ComplexMatrix& u_first) {
    require_unitary(u_total, "qcor total");
    require_unitary(u_first, "qcor first");
    if (u_total.rows() != u_first.rows()) {
        throw DimensionError("qcor: unitaries have different dimensions");
    }
    const RealMatrix gamma_total = squared_moduli(u_total);
    const RealMatrix gamma_first = squared_moduli(u_first);
    const RealMatrix gamma_later = squared_moduli(u_total * u_first.adjoint());
    return gamma_total - gamma_later * gamma_first;
}

}  // namespace chsh

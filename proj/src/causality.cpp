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

#include "chsh/causality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

void require_dims(int dim_q, int dim_r) {
    if (dim_q < 1 || dim_r < 1 || dim_q * dim_r > kMaxDim) {
        throw DimensionError("joint conditional: bad dimensions " + std::to_string(dim_q) + "x" +
                             std::to_string(dim_r));
    }
}

}  // namespace

JointConditional::JointConditional(int dim_q, int dim_r, std::vector<double> table)
    : dim_q_(dim_q), dim_r_(dim_r), table_(std::move(table)) {
    require_dims(dim_q, dim_r);
    const auto n = static_cast<std::size_t>(dim_q) * dim_r;
    if (table_.size() != n * n) {
        throw DimensionError("joint conditional: table has " + std::to_string(table_.size()) +
                             " entries, expected " + std::to_string(n * n));
    }
    for (double& p : table_) {
        if (!std::isfinite(p) || p < -kNegativeClip) {
            throw InvariantError("joint conditional: negative or non-finite probability");
        }
        p = std::max(p, 0.0);
    }
    for (int q0 = 0; q0 < dim_q_; ++q0) {
        for (int r0 = 0; r0 < dim_r_; ++r0) {
            double sum = 0.0;
            for (int qt = 0; qt < dim_q_; ++qt) {
                for (int rt = 0; rt < dim_r_; ++rt) sum += (*this)(qt, rt, q0, r0);
            }
            if (std::abs(sum - 1.0) > kColumnSumTol) {
                throw InvariantError("joint conditional: column (q0=" + std::to_string(q0) +
                                     ", r0=" + std::to_string(r0) + ") sums to " +
                                     std::to_string(sum));
            }
        }
    }
}

JointConditional JointConditional::from_kernel(int dim_q, int dim_r, const Kernel& p) {
    require_dims(dim_q, dim_r);
    std::vector<double> table;
    table.reserve(static_cast<std::size_t>(dim_q * dim_r * dim_q * dim_r));
    for (int qt = 0; qt < dim_q; ++qt)
        for (int rt = 0; rt < dim_r; ++rt)
            for (int q0 = 0; q0 < dim_q; ++q0)
                for (int r0 = 0; r0 < dim_r; ++r0) table.push_back(p(qt, rt, q0, r0));
    return JointConditional(dim_q, dim_r, std::move(table));
}

JointConditional JointConditional::product(const StochasticMatrix& q_dynamics,
                                           const StochasticMatrix& r_dynamics) {
    if (q_dynamics.dim_out() != q_dynamics.dim_in() || r_dynamics.dim_out() != r_dynamics.dim_in()) {
        throw DimensionError("joint conditional: local dynamics must be square");
    }
    return from_kernel(static_cast<int>(q_dynamics.dim_in()), static_cast<int>(r_dynamics.dim_in()),
                       [&](int qt, int rt, int q0, int r0) {
                           return q_dynamics(qt, q0) * r_dynamics(rt, r0);
                       });
}

MixedConditional::MixedConditional(int dim_target, int dim_q0, int dim_r0, std::vector<double> table)
    : dim_target_(dim_target), dim_q0_(dim_q0), dim_r0_(dim_r0), table_(std::move(table)) {
    if (table_.size() != static_cast<std::size_t>(dim_target) * dim_q0 * dim_r0) {
        throw DimensionError("mixed conditional: table size mismatch");
    }
    for (int q0 = 0; q0 < dim_q0_; ++q0) {
        for (int r0 = 0; r0 < dim_r0_; ++r0) {
            double sum = 0.0;
            for (int t = 0; t < dim_target_; ++t) sum += (*this)(t, q0, r0);
            if (std::abs(sum - 1.0) > kColumnSumTol) {
                throw InvariantError("mixed conditional: column does not sum to 1");
            }
        }
    }
}

MixedConditional marginal_q(const JointConditional& joint) {
    const int nq = joint.dim_q();
    const int nr = joint.dim_r();
    std::vector<double> table(static_cast<std::size_t>(nq * nq * nr), 0.0);
    for (int qt = 0; qt < nq; ++qt)
        for (int q0 = 0; q0 < nq; ++q0)
            for (int r0 = 0; r0 < nr; ++r0) {
                double sum = 0.0;
                for (int rt = 0; rt < nr; ++rt) sum += joint(qt, rt, q0, r0);
                table[(static_cast<std::size_t>(qt) * nq + q0) * nr + r0] = sum;
            }
    return MixedConditional(nq, nq, nr, std::move(table));
}

MixedConditional marginal_r(const JointConditional& joint) {
    const int nq = joint.dim_q();
    const int nr = joint.dim_r();
    std::vector<double> table(static_cast<std::size_t>(nr * nq * nr), 0.0);
    for (int rt = 0; rt < nr; ++rt)
        for (int q0 = 0; q0 < nq; ++q0)
            for (int r0 = 0; r0 < nr; ++r0) {
                double sum = 0.0;
                for (int qt = 0; qt < nq; ++qt) sum += joint(qt, rt, q0, r0);
                table[(static_cast<std::size_t>(rt) * nq + q0) * nr + r0] = sum;
            }
    return MixedConditional(nr, nq, nr, std::move(table));
}

bool influences(const JointConditional& joint, Direction direction, double tol) {
    if (direction == Direction::RonQ) {
        const MixedConditional m = marginal_q(joint);
        for (int t = 0; t < m.dim_target(); ++t)
            for (int q0 = 0; q0 < m.dim_q0(); ++q0)
                for (int r0 = 0; r0 < m.dim_r0(); ++r0)
                    for (int r0b = r0 + 1; r0b < m.dim_r0(); ++r0b)
                        if (std::abs(m(t, q0, r0) - m(t, q0, r0b)) > tol) return true;
        return false;
    }
    const MixedConditional m = marginal_r(joint);
    for (int t = 0; t < m.dim_target(); ++t)
        for (int r0 = 0; r0 < m.dim_r0(); ++r0)
            for (int q0 = 0; q0 < m.dim_q0(); ++q0)
                for (int q0b = q0 + 1; q0b < m.dim_q0(); ++q0b)
                    if (std::abs(m(t, q0, r0) - m(t, q0b, r0)) > tol) return true;
    return false;
}

bool causally_independent(const JointConditional& joint, double tol) {
    return !influences(joint, Direction::RonQ, tol) && !influences(joint, Direction::QonR, tol);
}

bool non_interacting(const JointConditional& joint, double tol) {
    if (!causally_independent(joint, tol)) return false;
    const MixedConditional mq = marginal_q(joint);
    const MixedConditional mr = marginal_r(joint);
    for (int qt = 0; qt < joint.dim_q(); ++qt)
        for (int rt = 0; rt < joint.dim_r(); ++rt)
            for (int q0 = 0; q0 < joint.dim_q(); ++q0)
                for (int r0 = 0; r0 < joint.dim_r(); ++r0) {
                    // Marginals no longer depend on the remote index; read them at 0.
                    const double factorized = mq(qt, q0, 0) * mr(rt, 0, r0);
                    if (std::abs(joint(qt, rt, q0, r0) - factorized) > tol) return false;
                }
    return true;
}

JointConditional joint_from_unitary(const ComplexMatrix& u, int dim_q, int dim_r) {
    require_dims(dim_q, dim_r);
    if (u.rows() != static_cast<Eigen::Index>(dim_q) * dim_r) {
        throw DimensionError("joint_from_unitary: unitary dimension " + std::to_string(u.rows()) +
                             " does not match " + std::to_string(dim_q) + "x" + std::to_string(dim_r));
    }
    require_unitary(u, "joint_from_unitary");
    return JointConditional::from_kernel(dim_q, dim_r, [&](int qt, int rt, int q0, int r0) {
        return std::norm(u(qt * dim_r + rt, q0 * dim_r + r0));
    });
}

}  // namespace chsh

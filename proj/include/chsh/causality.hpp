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

// Two-part systems QR with configuration set C_Q x C_R. Joint dynamics are
// conditionals p(q_t, r_t | q_0, r_0); marginalizing one target gives mixed
// dynamics p(q_t | q_0, r_0). R causally influences Q when that marginal
// depends on r_0.

#pragma once

#include <functional>
#include <vector>

#include "chsh/linalg.hpp"
#include "chsh/stochastic.hpp"

namespace chsh {

inline constexpr double kCausalTol = 1e-9;

class JointConditional {
   public:
    /// `table` is indexed [q_t][r_t][q_0][r_0] in row-major order.
    JointConditional(int dim_q, int dim_r, std::vector<double> table);

    using Kernel = std::function<double(int q_t, int r_t, int q_0, int r_0)>;
    static JointConditional from_kernel(int dim_q, int dim_r, const Kernel& p);

    /// p(q_t | q_0) p(r_t | r_0).
    static JointConditional product(const StochasticMatrix& q_dynamics,
                                    const StochasticMatrix& r_dynamics);

    int dim_q() const { return dim_q_; }
    int dim_r() const { return dim_r_; }
    double operator()(int q_t, int r_t, int q_0, int r_0) const {
        return table_[index(q_t, r_t, q_0, r_0)];
    }

   private:
    std::size_t index(int q_t, int r_t, int q_0, int r_0) const {
        return ((static_cast<std::size_t>(q_t) * dim_r_ + r_t) * dim_q_ + q_0) * dim_r_ + r_0;
    }

    int dim_q_;
    int dim_r_;
    std::vector<double> table_;
};

/// p(target_t | q_0, r_0) for one subsystem's target configuration.
class MixedConditional {
   public:
    MixedConditional(int dim_target, int dim_q0, int dim_r0, std::vector<double> table);

    int dim_target() const { return dim_target_; }
    int dim_q0() const { return dim_q0_; }
    int dim_r0() const { return dim_r0_; }
    double operator()(int target, int q_0, int r_0) const {
        return table_[(static_cast<std::size_t>(target) * dim_q0_ + q_0) * dim_r0_ + r_0];
    }

   private:
    int dim_target_;
    int dim_q0_;
    int dim_r0_;
    std::vector<double> table_;
};

MixedConditional marginal_q(const JointConditional& joint);
MixedConditional marginal_r(const JointConditional& joint);

enum class Direction { RonQ, QonR };

/// True iff the marginal of the influenced side varies with the remote initial
/// configuration by more than tol.
bool influences(const JointConditional& joint, Direction direction, double tol = kCausalTol);

bool causally_independent(const JointConditional& joint, double tol = kCausalTol);

/// Causal independence plus entrywise factorization of the joint into the two
/// local marginals. Strictly stronger than causal independence.
bool non_interacting(const JointConditional& joint, double tol = kCausalTol);

/// table[q_t][r_t][q_0][r_0] = |<q_t r_t| u |q_0 r_0>|^2 with u acting on the
/// dim_q * dim_r Kronecker space (q is the slow index).
JointConditional joint_from_unitary(const ComplexMatrix& u, int dim_q, int dim_r);

}  // namespace chsh

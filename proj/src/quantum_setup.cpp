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

#include "chsh/quantum_setup.hpp"

#include <string>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

void check_partition(const OutcomePartition& p, int dim, const char* side) {
    if (static_cast<int>(p.size()) != dim) {
        throw DimensionError(std::string(side) + " outcome partition has " + std::to_string(p.size()) +
                             " entries, expected " + std::to_string(dim));
    }
    for (int bit : p) {
        if (bit != 0 && bit != 1) {
            throw InvariantError(std::string(side) + " outcome partition maps to a non-bit value");
        }
    }
}

}  // namespace

OutcomePartition parity_partition(int dim) {
    OutcomePartition p(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) p[static_cast<std::size_t>(c)] = c % 2;
    return p;
}

QuantumSetup::QuantumSetup(StateVector state, std::array<ComplexMatrix, 2> alice,
                           std::array<ComplexMatrix, 2> bob, OutcomePartition alice_partition,
                           OutcomePartition bob_partition)
    : state_(std::move(state)),
      alice_(std::move(alice)),
      bob_(std::move(bob)),
      alice_partition_(std::move(alice_partition)),
      bob_partition_(std::move(bob_partition)) {
    require_unitary(alice_[0], "alice setting 0");
    require_unitary(alice_[1], "alice setting 1");
    require_unitary(bob_[0], "bob setting 0");
    require_unitary(bob_[1], "bob setting 1");
    if (alice_[0].rows() != alice_[1].rows() || bob_[0].rows() != bob_[1].rows()) {
        throw DimensionError("quantum setup: a player's two unitaries differ in dimension");
    }
    if (dim_a() < 2 || dim_b() < 2) {
        throw DimensionError("quantum setup: local dimensions must be at least 2");
    }
    if (state_.dim() != static_cast<Eigen::Index>(dim_a()) * dim_b()) {
        throw DimensionError("quantum setup: state dimension " + std::to_string(state_.dim()) +
                             " is not " + std::to_string(dim_a()) + "x" + std::to_string(dim_b()));
    }
    if (alice_partition_.empty()) alice_partition_ = parity_partition(dim_a());
    if (bob_partition_.empty()) bob_partition_ = parity_partition(dim_b());
    check_partition(alice_partition_, dim_a(), "alice");
    check_partition(bob_partition_, dim_b(), "bob");
}

const ComplexMatrix& QuantumSetup::local(Side side, int setting) const {
    if (setting != 0 && setting != 1) {
        throw InvariantError("quantum setup: setting must be 0 or 1");
    }
    return side == Side::Alice ? alice_[static_cast<std::size_t>(setting)]
                               : bob_[static_cast<std::size_t>(setting)];
}

PreparationUnitary::PreparationUnitary(ComplexMatrix c, int da, int db, int q0, int r0)
    : c_psi(std::move(c)), dim_a(da), dim_b(db), q_0(q0), r_0(r0) {
    require_unitary(c_psi, "preparation unitary");
    if (c_psi.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
        throw DimensionError("preparation unitary: dimension does not match dim_a * dim_b");
    }
    if (q_0 < 0 || q_0 >= dim_a || r_0 < 0 || r_0 >= dim_b) {
        throw DimensionError("preparation unitary: initial configuration out of range");
    }
}

StateVector prepare_state(const PreparationUnitary& prep) {
    const Eigen::Index column = static_cast<Eigen::Index>(prep.q_0) * prep.dim_b + prep.r_0;
    return StateVector::normalize(prep.c_psi.col(column));
}

}  // namespace chsh

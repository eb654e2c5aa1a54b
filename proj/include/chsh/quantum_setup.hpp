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

#pragma once

#include <array>
#include <vector>

#include "chsh/linalg.hpp"

namespace chsh {

enum class Side { Alice, Bob };

/// Maps each local configuration to the one bit a player reports.
using OutcomePartition = std::vector<int>;

/// Parity partition c -> c mod 2. For qubits this is the identity map.
OutcomePartition parity_partition(int dim);

/// Shared state plus the two local unitaries per player (indexed by setting)
/// and the coarse-graining of configurations to outcome bits. The joint
/// operation for settings (x, y) is always alice[x] (x) bob[y].
class QuantumSetup {
   public:
    QuantumSetup(StateVector state, std::array<ComplexMatrix, 2> alice, std::array<ComplexMatrix, 2> bob,
                 OutcomePartition alice_partition = {}, OutcomePartition bob_partition = {});

    int dim_a() const { return static_cast<int>(alice_[0].rows()); }
    int dim_b() const { return static_cast<int>(bob_[0].rows()); }
    const StateVector& state() const { return state_; }
    const ComplexMatrix& local(Side side, int setting) const;
    const OutcomePartition& partition(Side side) const {
        return side == Side::Alice ? alice_partition_ : bob_partition_;
    }

   private:
    StateVector state_;
    std::array<ComplexMatrix, 2> alice_;
    std::array<ComplexMatrix, 2> bob_;
    OutcomePartition alice_partition_;
    OutcomePartition bob_partition_;
};

/// A unitary applied to the configuration-basis state |q_0, r_0>.
struct PreparationUnitary {
    PreparationUnitary(ComplexMatrix c_psi, int dim_a, int dim_b, int q_0 = 0, int r_0 = 0);

    ComplexMatrix c_psi;
    int dim_a;
    int dim_b;
    int q_0;
    int r_0;
};

/// |Psi> = C_Psi |q_0, r_0>.
StateVector prepare_state(const PreparationUnitary& prep);

}  // namespace chsh

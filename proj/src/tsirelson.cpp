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

#include "chsh/tsirelson.hpp"

#include "chsh/errors.hpp"

namespace chsh {

namespace {

ComplexMatrix outcome_class_projector(const OutcomePartition& partition, int outcome) {
    const auto dim = static_cast<Eigen::Index>(partition.size());
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        if (partition[static_cast<std::size_t>(c)] == outcome) p += projector(dim, c);
    }
    return p;
}

double expectation(const ComplexMatrix& op, const StateVector& psi) {
    return (psi.amplitudes().adjoint() * op * psi.amplitudes())(0, 0).real();
}

}  // namespace

ComplexMatrix outcome_observable(Side side, int setting, int outcome, const QuantumSetup& setup) {
    if (outcome != 0 && outcome != 1) {
        throw InvariantError("outcome_observable: outcome must be 0 or 1");
    }
    const ComplexMatrix& u = setup.local(side, setting);
    const ComplexMatrix local = u.adjoint() * outcome_class_projector(setup.partition(side), outcome) * u;
    return side == Side::Alice ? tensor(local, identity(setup.dim_b()))
                               : tensor(identity(setup.dim_a()), local);
}

ComplexMatrix dichotomic(Side side, int setting, const QuantumSetup& setup) {
    return outcome_observable(side, setting, 0, setup) - outcome_observable(side, setting, 1, setup);
}

ComplexMatrix chsh_operator(const QuantumSetup& setup) {
    const ComplexMatrix a0 = dichotomic(Side::Alice, 0, setup);
    const ComplexMatrix a1 = dichotomic(Side::Alice, 1, setup);
    const ComplexMatrix b0 = dichotomic(Side::Bob, 0, setup);
    const ComplexMatrix b1 = dichotomic(Side::Bob, 1, setup);
    return a0 * (b0 + b1) + a1 * (b0 - b1);
}

double score_of_setup(const QuantumSetup& setup) {
    return expectation(chsh_operator(setup), setup.state()) / 4.0;
}

double score_of_setup(const QuantumSetup& setup, const PreparationUnitary& prep) {
    if (prep.dim_a != setup.dim_a() || prep.dim_b != setup.dim_b()) {
        throw DimensionError("score_of_setup: preparation dimensions do not match the setup");
    }
    return expectation(chsh_operator(setup), prepare_state(prep)) / 4.0;
}

}  // namespace chsh

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

// Random instance generators shared by the unit tests and the acceptance
// binary. Everything is driven by a caller-owned std::mt19937_64.

#pragma once

#include <Eigen/QR>
#include <array>
#include <random>
#include <utility>
#include <vector>

#include "chsh/game.hpp"
#include "chsh/linalg.hpp"
#include "chsh/quantum_setup.hpp"
#include "chsh/stochastic.hpp"

namespace chsh::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ComplexMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> n;
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = {n(rng), n(rng)};
    return m;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal pushed into Q.
inline ComplexMatrix random_unitary(Rng& rng, Eigen::Index dim) {
    const ComplexMatrix g = random_gaussian(rng, dim, dim);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

inline StateVector random_state(Rng& rng, Eigen::Index dim) {
    return StateVector::normalize(random_gaussian(rng, dim, 1).col(0));
}

inline Eigen::VectorXd random_simplex(Rng& rng, Eigen::Index dim) {
    std::exponential_distribution<double> e;
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = e(rng);
    return v / v.sum();
}

inline StochasticMatrix random_stochastic(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    RealMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) m.col(j) = random_simplex(rng, rows);
    return StochasticMatrix(m);
}

/// Arbitrary valid box; generally signaling.
inline CorrelationBox random_box(Rng& rng) {
    CorrelationBox::Table t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const Eigen::VectorXd p = random_simplex(rng, 4);
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r) t[CorrelationBox::index(q, r, x, y)] = p(q * 2 + r);
        }
    return CorrelationBox(t);
}

/// Local dimension pairs with product <= 16.
inline std::pair<int, int> random_dims(Rng& rng) {
    static constexpr std::array<std::pair<int, int>, 6> kDims{
        {{2, 2}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 4}}};
    return kDims[std::uniform_int_distribution<std::size_t>(0, kDims.size() - 1)(rng)];
}

inline QuantumSetup random_setup(Rng& rng, int dim_a, int dim_b) {
    return QuantumSetup(random_state(rng, dim_a * dim_b), {random_unitary(rng, dim_a), random_unitary(rng, dim_a)},
                        {random_unitary(rng, dim_b), random_unitary(rng, dim_b)});
}

inline QuantumSetup random_setup(Rng& rng) {
    const auto [a, b] = random_dims(rng);
    return random_setup(rng, a, b);
}

inline Deterministic random_deterministic(Rng& rng) {
    std::uniform_int_distribution<int> bit(0, 1);
    return Deterministic{{bit(rng), bit(rng)}, {bit(rng), bit(rng)}};
}

inline SharedRandomness random_mixture(Rng& rng, int components) {
    const Eigen::VectorXd w = random_simplex(rng, components);
    SharedRandomness s;
    for (int i = 0; i < components; ++i) s.mixture.emplace_back(w(i), random_deterministic(rng));
    return s;
}

/// Win counting straight from the game rule, without any library scoring code.
inline double oracle_score(const CorrelationBox& box, const std::array<double, 4>& pxy) {
    double s = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r) {
                    const bool win = ((q + r) % 2) == x * y;
                    s += pxy[static_cast<std::size_t>(x * 2 + y)] * box(q, r, x, y) * (win ? 1.0 : -1.0);
                }
    return s;
}

/// Interference terms of the amplitude expansion, summed over q' != q''.
/// Equals Gamma_total - |V|^2 |U|^2 with V = u_total u_first^dagger, U = u_first.
inline RealMatrix oracle_qcor(const ComplexMatrix& u_total, const ComplexMatrix& u_first) {
    const ComplexMatrix v = u_total * u_first.adjoint();
    const Eigen::Index n = u_first.rows();
    RealMatrix out = RealMatrix::Zero(n, n);
    for (Eigen::Index q = 0; q < n; ++q)
        for (Eigen::Index q0 = 0; q0 < n; ++q0) {
            Complex acc = 0.0;
            for (Eigen::Index a = 0; a < n; ++a)
                for (Eigen::Index b = 0; b < n; ++b)
                    if (a != b) acc += v(q, a) * std::conj(v(q, b)) * u_first(a, q0) * std::conj(u_first(b, q0));
            out(q, q0) = acc.real();
        }
    return out;
}

/// Smallest max |M^dagger M - I| over a grid of the 4 free phases of the
/// 3x3 matrix with moduli sqrt(gamma); first row and column phases fixed to 0.
inline double oracle_min_unitarity_defect_3x3(const RealMatrix& gamma, int steps) {
    const double two_pi = 2.0 * 3.14159265358979323846;
    double best = 1e300;
    ComplexMatrix m(3, 3);
    for (int a = 0; a < steps; ++a)
        for (int b = 0; b < steps; ++b)
            for (int c = 0; c < steps; ++c)
                for (int d = 0; d < steps; ++d) {
                    const double ph[4] = {two_pi * a / steps, two_pi * b / steps, two_pi * c / steps,
                                          two_pi * d / steps};
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) {
                            const double phase = (i == 0 || j == 0) ? 0.0 : ph[(i - 1) * 2 + (j - 1)];
                            m(i, j) = std::polar(std::sqrt(gamma(i, j)), phase);
                        }
                    const double defect = (m.adjoint() * m - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff();
                    if (defect < best) best = defect;
                }
    return best;
}

}  // namespace chsh::testing

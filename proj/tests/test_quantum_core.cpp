// Copyright 2026 The cavswap Authors
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


#include "cavswap/quantum_core.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

using namespace cavswap;

namespace {

const cplx I(0.0, 1.0);

Operator sigma_x() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return Operator(m);
}

CMatrix random_hermitian(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    auto d = static_cast<Eigen::Index>(dim);
    CMatrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            a(i, j) = cplx(nd(rng), nd(rng));
        }
    }
    return 0.5 * (a + a.adjoint());
}

CMatrix random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    return matrix_exponential(-I * random_hermitian(dim, rng));
}

// Eigendecomposition oracle for exp(-iHt).
CMatrix eigen_propagator(const CMatrix &h, double t) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases[i] = std::exp(-I * es.eigenvalues()[i] * t);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Textbook Wootters route: sqrt of the eigenvalues of rho * rho~.
double oracle_concurrence(const CMatrix &rho) {
    CMatrix yy = CMatrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    CMatrix tilde = yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<CMatrix> es(rho * tilde);
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) {
        l[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
    }
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

DensityMatrix random_mixed_two_qubit(std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    CMatrix a(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            a(i, j) = cplx(nd(rng), nd(rng));
        }
    }
    CMatrix m = a * a.adjoint();
    // Lean towards an entangled component so the concurrence is not always 0.
    CVector bell = bell_state(BellState::PsiMinus).amps();
    m += 6.0 * bell * bell.adjoint();
    m /= m.trace().real();
    return DensityMatrix(m);
}

}  // namespace

TEST(state_vector, rejects_bad_construction) {
    EXPECT_THROW(StateVector({"a", "a"}, CVector::Zero(2)), InvalidInput);
    EXPECT_THROW(StateVector({"a"}, CVector::Zero(2)), InvalidInput);
    CVector nan = CVector::Zero(1);
    nan[0] = std::nan("");
    EXPECT_THROW(StateVector({"a"}, nan), InvalidInput);
    EXPECT_THROW(StateVector({}, CVector()), InvalidInput);
}

TEST(state_vector, labels_and_amplitudes) {
    auto s = StateVector::basis_state({"x", "y"}, 1);
    EXPECT_EQ(s.amp("y"), cplx(1.0));
    EXPECT_EQ(s.amp("x"), cplx(0.0));
    EXPECT_THROW(s.amp("z"), InvalidInput);
    EXPECT_EQ(s.index_of("y"), 1u);
}

TEST(evolve, sigma_x_half_period) {
    auto psi = StateVector::basis_state(StateVector::numbered_basis(2), 0);
    auto out = evolve_expm(sigma_x(), psi, std::numbers::pi / 2);
    EXPECT_NEAR(std::abs(out.amps()[0]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out.amps()[1] - (-I)), 0.0, 1e-12);

    auto rk = evolve_rk4(sigma_x(), psi, std::numbers::pi / 2, 1e-3);
    EXPECT_NEAR(std::abs(rk.amps()[1] - (-I)), 0.0, 1e-9);
}

TEST(evolve, zero_hamiltonian_is_identity) {
    CVector v(3);
    v << 0.6, cplx(0.0, 0.8), 0.0;
    StateVector psi(StateVector::numbered_basis(3), v);
    for (auto method : {EvolutionMethod::MatrixExponential, EvolutionMethod::RungeKutta4}) {
        auto out = evolve(Operator::zero(3), psi, 5.0, method, 0.1);
        EXPECT_LT((out.amps() - v).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(evolve, expm_matches_eigendecomposition) {
    std::mt19937_64 rng(11);
    for (std::size_t dim : {2u, 5u, 17u}) {
        CMatrix h = random_hermitian(dim, rng) * 3.0;
        for (double t : {0.0, 0.3, 2.5, 40.0}) {
            CMatrix u = propagator(Operator(h), t).matrix();
            EXPECT_LT((u - eigen_propagator(h, t)).cwiseAbs().maxCoeff(), 1e-10) << dim << " " << t;
        }
    }
}

TEST(evolve, rk4_agrees_with_expm) {
    std::mt19937_64 rng(3);
    CMatrix h = random_hermitian(6, rng);
    Operator op(h);
    CVector v = CVector::Zero(6);
    v[0] = 1.0;
    StateVector psi(StateVector::numbered_basis(6), v);
    double step = 0.01 / op.max_abs();
    auto a = evolve_expm(op, psi, 3.0);
    auto b = evolve_rk4(op, psi, 3.0, step);
    EXPECT_LT((a.amps() - b.amps()).cwiseAbs().maxCoeff(), 1e-6);
    // default step obeys the same bound
    auto c = evolve_rk4(op, psi, 3.0);
    EXPECT_LT((a.amps() - c.amps()).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(evolve, composition_and_norm) {
    std::mt19937_64 rng(5);
    Operator h(random_hermitian(8, rng));
    CVector v = CVector::Zero(8);
    v[3] = 1.0;
    StateVector psi(StateVector::numbered_basis(8), v);
    auto once = evolve_expm(h, psi, 1.7);
    auto twice = evolve_expm(h, evolve_expm(h, psi, 0.6), 1.1);
    EXPECT_LT((once.amps() - twice.amps()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(once.norm(), 1.0, 1e-9);

    auto rk = evolve_rk4(h, psi, 10.0);
    EXPECT_NEAR(rk.norm(), 1.0, 1e-9);
}

TEST(evolve, rejects_bad_input) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    auto psi = StateVector::basis_state(StateVector::numbered_basis(2), 0);
    EXPECT_THROW(evolve_expm(Operator(m), psi, 1.0), InvalidInput);
    EXPECT_THROW(evolve_rk4(Operator(m), psi, 1.0), InvalidInput);
    EXPECT_THROW(evolve_expm(Operator::zero(3), psi, 1.0), InvalidInput);
    // more than kMaxIntegratorSteps steps
    EXPECT_THROW(evolve_rk4(sigma_x(), psi, 1.0, 1e-9), InvalidInput);
}

TEST(tensor_product, kron_order_and_labels) {
    CVector a(2), b(2);
    a << 1.0, 2.0;
    b << 3.0, 5.0;
    StateVector sa({"0", "1"}, a), sb({"u", "d"}, b);
    auto ab = tensor_product(sa, sb);
    ASSERT_EQ(ab.dim(), 4u);
    EXPECT_EQ(ab.label(1), "0,d");
    EXPECT_EQ(ab.amps()[1], cplx(5.0));
    EXPECT_EQ(ab.amps()[2], cplx(6.0));
    EXPECT_EQ(ab.amp("1,d"), cplx(10.0));

    auto op = tensor_product(sigma_x(), Operator::identity(2));
    EXPECT_EQ(op(0, 2), cplx(1.0));
    EXPECT_EQ(op(0, 1), cplx(0.0));
}

TEST(tensor_product, rejects_oversized) {
    auto big = Operator::identity(100);
    EXPECT_THROW(tensor_product(big, big), InvalidInput);
    EXPECT_THROW(Operator::identity(kMaxDimension + 1), InvalidInput);
}

TEST(density_matrix, validates) {
    CMatrix m = CMatrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix{m}, InvalidInput);  // trace 2
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix{neg}, InvalidInput);
    CMatrix nh = 0.5 * CMatrix::Identity(2, 2);
    nh(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{nh}, InvalidInput);
    EXPECT_NEAR(DensityMatrix::maximally_mixed(4).purity(), 0.25, 1e-15);
}

TEST(partial_trace, bell_state_gives_identity_over_two) {
    auto rho = DensityMatrix::from_pure(bell_state(BellState::PhiPlus));
    std::array<std::size_t, 2> dims{2, 2};
    std::array<std::size_t, 1> keep0{0}, keep1{1};
    for (auto keep : {std::span<const std::size_t>(keep0), std::span<const std::size_t>(keep1)}) {
        auto red = partial_trace(rho, dims, keep);
        EXPECT_LT((red.matrix() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(partial_trace, product_state_recovers_factor) {
    std::mt19937_64 rng(9);
    CMatrix ua = random_unitary(3, rng), ub = random_unitary(4, rng);
    StateVector a(StateVector::numbered_basis(3), ua.col(0));
    StateVector b(StateVector::numbered_basis(4), ub.col(1));
    auto rho = DensityMatrix::from_pure(tensor_product(a, b));
    std::array<std::size_t, 2> dims{3, 4};
    std::array<std::size_t, 1> keep{1};
    auto red = partial_trace(rho, dims, keep);
    EXPECT_LT((red.matrix() - DensityMatrix::from_pure(b).matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(partial_trace, rejects_bad_factorization) {
    auto rho = DensityMatrix::maximally_mixed(4);
    std::array<std::size_t, 2> wrong{2, 3};
    std::array<std::size_t, 1> keep{0};
    EXPECT_THROW(partial_trace(rho, wrong, keep), InvalidInput);
    std::array<std::size_t, 2> dims{2, 2};
    std::array<std::size_t, 2> unordered{1, 0};
    EXPECT_THROW(partial_trace(rho, dims, unordered), InvalidInput);
    std::array<std::size_t, 1> out_of_range{2};
    EXPECT_THROW(partial_trace(rho, dims, out_of_range), InvalidInput);
}

TEST(fidelity, known_values) {
    auto phi_p = bell_state(BellState::PhiPlus);
    auto phi_m = bell_state(BellState::PhiMinus);
    auto rho = DensityMatrix::from_pure(phi_p);
    EXPECT_NEAR(fidelity(rho, phi_p), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(rho, phi_m), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed(4), phi_p), 0.25, 1e-15);
    CMatrix mix = 0.5 * (DensityMatrix::from_pure(phi_p).matrix() + DensityMatrix::from_pure(phi_m).matrix());
    EXPECT_NEAR(fidelity(DensityMatrix(mix), phi_p), 0.5, 1e-15);
}

TEST(concurrence, bell_and_product_states) {
    for (auto b : {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus}) {
        EXPECT_NEAR(concurrence(DensityMatrix::from_pure(bell_state(b))), 1.0, 1e-12);
    }
    auto zero = StateVector::basis_state({"00", "01", "10", "11"}, 0);
    EXPECT_NEAR(concurrence(DensityMatrix::from_pure(zero)), 0.0, 1e-14);
    EXPECT_NEAR(concurrence(DensityMatrix::maximally_mixed(4)), 0.0, 1e-14);
    EXPECT_THROW(concurrence(DensityMatrix::maximally_mixed(2)), InvalidInput);
}

TEST(concurrence, half_bell_half_product) {
    auto psi = DensityMatrix::from_pure(bell_state(BellState::PsiPlus)).matrix();
    CMatrix zero = CMatrix::Zero(4, 4);
    zero(0, 0) = 1.0;
    CMatrix m = 0.5 * psi + 0.5 * zero;
    EXPECT_NEAR(oracle_concurrence(m), 0.5, 1e-12);
    EXPECT_NEAR(concurrence(DensityMatrix(m)), 0.5, 1e-12);
}

TEST(concurrence, matches_oracle_on_random_states) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 20; ++k) {
        auto rho = random_mixed_two_qubit(rng);
        EXPECT_NEAR(concurrence(rho), oracle_concurrence(rho.matrix()), 1e-8);
    }
}

TEST(concurrence, local_unitary_invariance) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 20; ++k) {
        auto rho = random_mixed_two_qubit(rng);
        CMatrix u = tensor_product(Operator(random_unitary(2, rng)), Operator(random_unitary(2, rng))).matrix();
        DensityMatrix rotated(u * rho.matrix() * u.adjoint());
        EXPECT_LE(std::abs(concurrence(rho) - concurrence(rotated)), 1e-8);
    }
}

TEST(bell_state, convention) {
    auto psi_m = bell_state(BellState::PsiMinus);
    EXPECT_NEAR(psi_m.amp("01").real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(psi_m.amp("10").real(), -std::sqrt(0.5), 1e-15);
}

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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace cavswap {

namespace {

constexpr double kDensityTol = 1e-9;
constexpr double kHermitianTol = 1e-12;

void check_dimension(std::size_t dim) {
    if (dim == 0) {
        throw InvalidInput("dimension must be positive");
    }
    if (dim > kMaxDimension) {
        throw InvalidInput("dimension " + std::to_string(dim) + " exceeds maximum " +
                           std::to_string(kMaxDimension));
    }
}

std::size_t checked_product(std::size_t a, std::size_t b) {
    if (a != 0 && b > kMaxDimension / a) {
        throw InvalidInput("tensor product dimension overflow (" + std::to_string(a) + " x " +
                           std::to_string(b) + " exceeds " + std::to_string(kMaxDimension) + ")");
    }
    return a * b;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void require_hermitian(const Operator &h) {
    double err = h.hermiticity_error();
    if (err > kHermitianTol) {
        throw InvalidInput("Hamiltonian is not Hermitian (max |H - H^dagger| = " + std::to_string(err) + ")");
    }
}

void require_same_dim(const Operator &h, const StateVector &psi) {
    if (h.dim() != psi.dim()) {
        throw InvalidInput("operator dimension " + std::to_string(h.dim()) + " does not match state dimension " +
                           std::to_string(psi.dim()));
    }
}

double one_norm(const CMatrix &a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<std::string> basis, CVector amps) : basis_(std::move(basis)), amps_(std::move(amps)) {
    check_dimension(basis_.size());
    if (static_cast<std::size_t>(amps_.size()) != basis_.size()) {
        throw InvalidInput("amplitude count " + std::to_string(amps_.size()) + " does not match basis size " +
                           std::to_string(basis_.size()));
    }
    std::unordered_set<std::string_view> seen;
    for (const auto &label : basis_) {
        if (!seen.insert(label).second) {
            throw InvalidInput("duplicate basis label '" + label + "'");
        }
    }
    if (!amps_.allFinite()) {
        throw InvalidInput("state amplitudes must be finite");
    }
}

StateVector StateVector::basis_state(std::vector<std::string> basis, std::size_t index) {
    if (index >= basis.size()) {
        throw InvalidInput("basis index out of range");
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(basis.size()));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(basis), std::move(amps));
}

std::vector<std::string> StateVector::numbered_basis(std::size_t dim) {
    std::vector<std::string> out;
    out.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out.push_back(std::to_string(i));
    }
    return out;
}

std::size_t StateVector::index_of(std::string_view label) const {
    auto it = std::find(basis_.begin(), basis_.end(), label);
    if (it == basis_.end()) {
        throw InvalidInput("unknown basis label '" + std::string(label) + "'");
    }
    return static_cast<std::size_t>(it - basis_.begin());
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n == 0.0) {
        throw InvalidInput("cannot normalize the zero vector");
    }
    return StateVector(basis_, amps_ / n);
}

cplx StateVector::inner(const StateVector &other) const {
    if (other.dim() != dim()) {
        throw InvalidInput("inner product of states with different dimensions");
    }
    return amps_.dot(other.amps_);
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw InvalidInput("operator matrix must be square");
    }
    check_dimension(static_cast<std::size_t>(m_.rows()));
    if (!m_.allFinite()) {
        throw InvalidInput("operator entries must be finite");
    }
}

Operator Operator::identity(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return Operator(CMatrix::Identity(d, d));
}

Operator Operator::zero(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return Operator(CMatrix::Zero(d, d));
}

double Operator::hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

double Operator::unitarity_error() const {
    return (m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
}

StateVector Operator::apply(const StateVector &psi) const {
    if (dim() != psi.dim()) {
        throw InvalidInput("operator dimension does not match state dimension");
    }
    return psi.with_amps(m_ * psi.amps());
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw InvalidInput("density matrix must be square");
    }
    check_dimension(static_cast<std::size_t>(m_.rows()));
    if (!m_.allFinite()) {
        throw InvalidInput("density matrix entries must be finite");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kDensityTol) {
        throw InvalidInput("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace().real() - 1.0) > kDensityTol) {
        throw InvalidInput("density matrix trace " + std::to_string(m_.trace().real()) + " is not 1");
    }
    CMatrix herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kDensityTol) {
        throw InvalidInput("density matrix has a negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    CVector v = psi.normalized().amps();
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    check_dimension(dim);
    auto d = static_cast<Eigen::Index>(dim);
    return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

// ---------------------------------------------------------------------------
// Tensor products

StateVector tensor_product(const StateVector &a, const StateVector &b) {
    checked_product(a.dim(), b.dim());
    std::vector<std::string> basis;
    basis.reserve(a.dim() * b.dim());
    for (const auto &la : a.basis()) {
        for (const auto &lb : b.basis()) {
            basis.push_back(la + "," + lb);
        }
    }
    CVector amps(static_cast<Eigen::Index>(a.dim() * b.dim()));
    for (Eigen::Index i = 0; i < a.amps().size(); ++i) {
        amps.segment(i * b.amps().size(), b.amps().size()) = a.amps()[i] * b.amps();
    }
    return StateVector(std::move(basis), std::move(amps));
}

Operator tensor_product(const Operator &a, const Operator &b) {
    checked_product(a.dim(), b.dim());
    return Operator(kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b) {
    checked_product(a.dim(), b.dim());
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// Time evolution

CMatrix matrix_exponential(const CMatrix &a) {
    if (a.rows() != a.cols()) {
        throw InvalidInput("matrix exponential of a non-square matrix");
    }
    const Eigen::Index n = a.rows();
    double norm = one_norm(a);
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    CMatrix scaled = a / std::ldexp(1.0, squarings);

    // ||scaled||_1 <= 1/2, so 24 terms leave a remainder far below 1e-16.
    CMatrix result = CMatrix::Identity(n, n);
    CMatrix term = CMatrix::Identity(n, n);
    for (int k = 1; k <= 24; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        if (one_norm(term) < 1e-18) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

Operator propagator(const Operator &hamiltonian, double t) {
    require_hermitian(hamiltonian);
    return Operator(matrix_exponential(cplx(0.0, -t) * hamiltonian.matrix()));
}

StateVector evolve_expm(const Operator &hamiltonian, const StateVector &psi0, double t) {
    require_same_dim(hamiltonian, psi0);
    return propagator(hamiltonian, t).apply(psi0);
}

StateVector evolve_rk4(const Operator &hamiltonian, const StateVector &psi0, double t, double step) {
    require_same_dim(hamiltonian, psi0);
    require_hermitian(hamiltonian);
    if (t == 0.0) {
        return psi0;
    }
    double hmax = hamiltonian.max_abs();
    if (hmax == 0.0) {
        return psi0;
    }
    if (step <= 0.0) {
        step = 0.01 / hmax;
    }
    double raw_steps = std::ceil(std::abs(t) / step);
    if (!std::isfinite(raw_steps) || raw_steps > static_cast<double>(kMaxIntegratorSteps)) {
        throw InvalidInput("integrator step count " + std::to_string(raw_steps) + " exceeds maximum " +
                           std::to_string(kMaxIntegratorSteps));
    }
    const auto steps = static_cast<std::size_t>(raw_steps);
    const double h = t / static_cast<double>(steps);
    const CMatrix minus_i_h = cplx(0.0, -1.0) * hamiltonian.matrix();

    CVector y = psi0.amps();
    CVector k1, k2, k3, k4;
    for (std::size_t s = 0; s < steps; ++s) {
        k1 = minus_i_h * y;
        k2 = minus_i_h * (y + 0.5 * h * k1);
        k3 = minus_i_h * (y + 0.5 * h * k2);
        k4 = minus_i_h * (y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi0.with_amps(std::move(y));
}

StateVector evolve(const Operator &hamiltonian, const StateVector &psi0, double t, EvolutionMethod method,
                   double step) {
    switch (method) {
        case EvolutionMethod::MatrixExponential:
            return evolve_expm(hamiltonian, psi0, t);
        case EvolutionMethod::RungeKutta4:
            return evolve_rk4(hamiltonian, psi0, t, step);
    }
    throw InternalError("unknown evolution method");
}

// ---------------------------------------------------------------------------
// Reduced states and entanglement measures

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    if (dims.empty()) {
        throw InvalidInput("partial trace needs at least one factor");
    }
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) {
            throw InvalidInput("factor dimension must be positive");
        }
        total = checked_product(total, d);
    }
    if (total != rho.dim()) {
        throw InvalidInput("factor dimensions multiply to " + std::to_string(total) + " but the state has dimension " +
                           std::to_string(rho.dim()));
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= dims.size() || (i > 0 && keep[i] <= keep[i - 1])) {
            throw InvalidInput("kept subsystem indices must be strictly increasing and in range");
        }
        kept[keep[i]] = true;
    }

    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        (kept[f] ? kept_dim : traced_dim) *= dims[f];
    }

    // full_index[k * traced_dim + t] for kept multi-index k and traced multi-index t.
    std::vector<std::size_t> full_index(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::size_t k = 0, t = 0, kstride = 1, tstride = 1;
        for (std::size_t f = dims.size(); f-- > 0;) {
            std::size_t digit = rem % dims[f];
            rem /= dims[f];
            if (kept[f]) {
                k += digit * kstride;
                kstride *= dims[f];
            } else {
                t += digit * tstride;
                tstride *= dims[f];
            }
        }
        full_index[k * traced_dim + t] = idx;
    }

    const auto kd = static_cast<Eigen::Index>(kept_dim);
    CMatrix out = CMatrix::Zero(kd, kd);
    for (std::size_t i = 0; i < kept_dim; ++i) {
        for (std::size_t j = 0; j < kept_dim; ++j) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < traced_dim; ++t) {
                acc += rho(full_index[i * traced_dim + t], full_index[j * traced_dim + t]);
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix(std::move(out));
}

double fidelity(const DensityMatrix &rho, const StateVector &target) {
    if (rho.dim() != target.dim()) {
        throw InvalidInput("fidelity: dimension mismatch");
    }
    const CVector &v = target.amps();
    return v.dot(rho.matrix() * v).real();
}

double concurrence(const DensityMatrix &rho) {
    if (rho.dim() != 4) {
        throw InvalidInput("concurrence needs a two-qubit (4-dimensional) density matrix");
    }
    const CMatrix &m = rho.matrix();
    // sigma_y (x) sigma_y in the |00>,|01>,|10>,|11> basis.
    CMatrix yy = CMatrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    // rho = W W^dagger with W built from the eigenvectors of rho, dropping
    // weights below 1e-14. The lambda_i are the singular values of
    // W^T (sigma_y x sigma_y) W.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < 4; ++i) {
        if (es.eigenvalues()[i] > 1e-14) {
            support.push_back(i);
        }
    }
    const auto rank = static_cast<Eigen::Index>(support.size());
    CMatrix w(4, rank);
    for (Eigen::Index k = 0; k < rank; ++k) {
        const Eigen::Index i = support[static_cast<std::size_t>(k)];
        w.col(k) = std::sqrt(es.eigenvalues()[i]) * es.eigenvectors().col(i);
    }
    const CMatrix tau = w.transpose() * yy * w;
    Eigen::JacobiSVD<CMatrix> svd(tau);

    std::vector<double> lambda(4, 0.0);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        lambda[static_cast<std::size_t>(i)] = svd.singularValues()[i];
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

StateVector bell_state(BellState which) {
    const double s = 1.0 / std::sqrt(2.0);
    CVector amps = CVector::Zero(4);
    switch (which) {
        case BellState::PhiPlus:
            amps << s, 0, 0, s;
            break;
        case BellState::PhiMinus:
            amps << s, 0, 0, -s;
            break;
        case BellState::PsiPlus:
            amps << 0, s, s, 0;
            break;
        case BellState::PsiMinus:
            amps << 0, s, -s, 0;
            break;
    }
    return StateVector({"00", "01", "10", "11"}, std::move(amps));
}

}  // namespace cavswap

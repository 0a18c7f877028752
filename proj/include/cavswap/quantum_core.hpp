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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cavswap {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Raised when caller-supplied data violates a documented precondition.
class InvalidInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails (a bug, not bad input).
class InternalError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Largest Hilbert-space dimension any constructor or tensor product accepts.
inline constexpr std::size_t kMaxDimension = 4096;
/// Largest number of fixed steps the RK4 path will take.
inline constexpr std::size_t kMaxIntegratorSteps = 50'000'000;

/// Complex amplitudes over an ordered set of unique basis labels.
///
/// Labels of a tensor product are the factor labels joined by ',' with the
/// first factor varying slowest.
class StateVector {
   public:
    StateVector(std::vector<std::string> basis, CVector amps);

    static StateVector basis_state(std::vector<std::string> basis, std::size_t index);
    /// Labels "0", "1", ..., dim-1.
    static std::vector<std::string> numbered_basis(std::size_t dim);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::string> &basis() const { return basis_; }
    const CVector &amps() const { return amps_; }
    const std::string &label(std::size_t i) const { return basis_[i]; }

    std::size_t index_of(std::string_view label) const;
    cplx amp(std::string_view label) const { return amps_[static_cast<Eigen::Index>(index_of(label))]; }
    double probability(std::size_t i) const { return std::norm(amps_[static_cast<Eigen::Index>(i)]); }

    double norm() const { return amps_.norm(); }
    StateVector normalized() const;
    StateVector with_amps(CVector amps) const { return StateVector(basis_, std::move(amps)); }

    /// <this|other>; bases must have equal dimension.
    cplx inner(const StateVector &other) const;

   private:
    std::vector<std::string> basis_;
    CVector amps_;
};

/// Dense square complex matrix acting on a state space.
class Operator {
   public:
    explicit Operator(CMatrix m);

    static Operator identity(std::size_t dim);
    static Operator zero(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix &matrix() const { return m_; }
    cplx operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    /// max |H - H^dagger| entrywise.
    double hermiticity_error() const;
    /// max |U^dagger U - I| entrywise.
    double unitarity_error() const;
    /// max |entry|.
    double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

    StateVector apply(const StateVector &psi) const;

   private:
    CMatrix m_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
///
/// Construction validates all three properties at 1e-9.
class DensityMatrix {
   public:
    explicit DensityMatrix(CMatrix m);

    static DensityMatrix from_pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix &matrix() const { return m_; }
    cplx operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    double trace() const { return m_.trace().real(); }
    /// Tr(rho^2).
    double purity() const;

   private:
    CMatrix m_;
};

// Kronecker products; the first argument varies slowest.
StateVector tensor_product(const StateVector &a, const StateVector &b);
Operator tensor_product(const Operator &a, const Operator &b);
DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b);

/// exp(A) by Taylor series with norm-based scaling and repeated squaring.
CMatrix matrix_exponential(const CMatrix &a);

/// exp(-i H t) as an operator (hbar = 1). H must be Hermitian.
Operator propagator(const Operator &hamiltonian, double t);

enum class EvolutionMethod { MatrixExponential, RungeKutta4 };

/// exp(-i H t) psi0 via the scaling-and-squaring exponential.
StateVector evolve_expm(const Operator &hamiltonian, const StateVector &psi0, double t);

/// Fixed-step classical RK4 integration of i d/dt psi = H psi.
///
/// A non-positive step selects step = 0.01 / max|H_ij|.
StateVector evolve_rk4(const Operator &hamiltonian, const StateVector &psi0, double t, double step = 0.0);

StateVector evolve(const Operator &hamiltonian, const StateVector &psi0, double t,
                   EvolutionMethod method = EvolutionMethod::MatrixExponential, double step = 0.0);

/// Traces out every factor whose index is not in keep. dims lists the factor
/// dimensions, slowest first; keep must be strictly increasing.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// <target|rho|target>.
double fidelity(const DensityMatrix &rho, const StateVector &target);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix &rho);

/// Bell states on two qubits in |c1 c2> order: phi+- = (|00> +- |11>)/sqrt2,
/// psi+- = (|01> +- |10>)/sqrt2.
enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
StateVector bell_state(BellState which);

}  // namespace cavswap

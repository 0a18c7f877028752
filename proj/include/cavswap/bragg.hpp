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

// Bragg scattering of a ground-state atom off a single-mode cavity field.
//
// Units: hbar = 1, energies and rates in units of the recoil frequency
// w_rec = hbar k^2 / 2M, momenta in units of hbar k. An atom with momentum
// p hbar k has kinetic energy p^2.
//
// Ladder index l is even; the momentum of ladder site l is l0/2 + l, so l = 0
// is the incident momentum +P_{l0} and l = -l0 its mirror image -P_{l0}.

#pragma once

#include <string>
#include <vector>

#include "cavswap/quantum_core.hpp"

namespace cavswap {

struct BraggParams {
    double g = 1.0;        // vacuum Rabi frequency
    double delta = 100.0;  // detuning w0 - nu
    int l0 = 2;            // even, >= 2; incident momentum (l0/2) hbar k
    int r = 1;             // odd multiple of the pi-time
    int n = 1;             // cavity photon number, 0 or 1
    int ladder_halfwidth = 7;
    double step = 0.0;  // RK4 step; <= 0 picks 0.01 / max|H|

    /// Throws InvalidInput naming the first violated invariant.
    void validate() const;
    /// Non-fatal advisories, e.g. delta/g below 50.
    std::vector<std::string> warnings() const;

    /// l0/2 + 6.
    static int default_halfwidth(int l0) { return l0 / 2 + 6; }
    BraggParams with_photons(int photons) const {
        BraggParams p = *this;
        p.n = photons;
        return p;
    }
};

/// hbar k^2 / 2M in rad/s for k = 2 pi / wavelength.
double recoil_frequency(double mass_kg, double wavelength_m);

/// Even ladder offsets -2L, ..., 2L.
std::vector<int> ladder_offsets(const BraggParams &p);
std::string ladder_label(int photons, int offset);

/// Adiabatically eliminated Hamiltonian on the n-photon momentum ladder.
///
/// Diagonal: p^2 - (l0/2)^2 - g^2 n / 2 delta. Neighbouring sites l, l+2 are
/// coupled by -g^2 n / 4 delta.
Operator build_effective_hamiltonian(const BraggParams &p);
std::vector<std::string> effective_basis(const BraggParams &p);

/// Two-level atom plus cavity mode before adiabatic elimination.
///
/// Ground manifold |g, n, l even>, excited manifold |e, n-1, l odd> offset by
/// +delta; cos(kx) couples l to l +- 1 with strength g sqrt(n) / 2. For n = 0
/// the excited manifold is empty.
struct FullModel {
    Operator hamiltonian;
    std::vector<std::string> basis;
    std::vector<std::size_t> excited_indices;
    std::size_t initial_index = 0;
};
FullModel build_full_hamiltonian(const BraggParams &p);

struct AdiabaticityReport {
    double max_excited_population = 0.0;
    double time_of_max = 0.0;
    double final_excited_population = 0.0;
    std::size_t samples = 0;
};
/// Evolves the full model from |g, n, +P_{l0}> and tracks the excited
/// manifold population on a uniform grid of spacing dt up to t_end.
AdiabaticityReport excited_population_scan(const BraggParams &p, double t_end, double dt);

/// |B_n|: Pendellosung frequency of the +-P_{l0} population exchange.
double pendellosung_B(const BraggParams &p);
/// A_n: common phase rate of the two Bragg amplitudes.
double pendellosung_A(const BraggParams &p);

struct BraggAmplitudes {
    cplx plus;   // amplitude to stay at +P_{l0}
    cplx minus;  // amplitude to be deflected to -P_{l0}
};
/// Closed-form two-state amplitudes for an atom entering at +P_{l0}.
BraggAmplitudes analytic_amplitudes(const BraggParams &p, double t);

/// r pi / |B_n|; rejects n = 0.
double pi_time(const BraggParams &p);
/// r pi A_1 / B_1, evaluated for one photon regardless of p.n.
double bragg_phase(const BraggParams &p);

/// Atom-cavity pair over labels "0,+l0", "0,-l0", "1,+l0", "1,-l0" (cavity
/// slowest) for the cavity starting in (|0> + |1>)/sqrt2.
StateVector pair_state(const BraggAmplitudes &zero_photon, const BraggAmplitudes &one_photon);
std::vector<std::string> pair_basis();

/// Closed-form pair state after interaction time t.
StateVector entangle_pair(const BraggParams &p, double t);
/// Closed-form pair state at the pi-time.
StateVector entangle_pair(const BraggParams &p);

struct LadderState {
    StateVector state;
    double time = 0.0;
    int halfwidth = 0;
    double boundary_population = 0.0;  // population on the two outermost sites
    bool truncation_warning = false;   // boundary_population > 1e-6

    double population(int offset) const;
    /// Population on sites other than +P_{l0} and -P_{l0}.
    double outside_population(int l0) const;
};

/// Numerically exact evolution of |n, l = 0> on the truncated ladder.
LadderState ladder_evolve(const BraggParams &p, double t,
                          EvolutionMethod method = EvolutionMethod::MatrixExponential);

/// Same evolution sampled at t = k dt, k = 0..steps, reusing one propagator.
std::vector<LadderState> ladder_trajectory(const BraggParams &p, double dt, std::size_t steps);

/// +-P_{l0} amplitudes of a ladder state with the uniform -g^2 n / 2 delta
/// light shift removed, so they compare directly with analytic_amplitudes.
BraggAmplitudes shift_compensated_amplitudes(const BraggParams &p, const LadderState &s);

/// Pair state assembled from ladder evolutions of both photon branches.
/// Components outside +-P_{l0} are dropped, so the result can have norm < 1.
StateVector ladder_pair_state(const BraggParams &p, double t);

}  // namespace cavswap

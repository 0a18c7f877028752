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

#include "cavswap/bragg.hpp"

#include <cmath>
#include <numbers>

namespace cavswap {

namespace {

constexpr double kPlanck = 6.62607015e-34;  // J s, exact in SI
constexpr double kHbar = kPlanck / (2.0 * std::numbers::pi);
constexpr double kBoundaryWarn = 1e-6;
constexpr int kMaxHalfwidth = 1000;

// g^2 n / 4 delta: the Bragg coupling between neighbouring ladder sites.
double ladder_coupling(const BraggParams &p, int photons) { return p.g * p.g * photons / (4.0 * p.delta); }

double kinetic(const BraggParams &p, int offset) {
    double p0 = p.l0 / 2.0;
    double mom = p0 + offset;
    return mom * mom - p0 * p0;
}

std::size_t site_index(const BraggParams &p, int offset) {
    int L = p.ladder_halfwidth;
    if (offset % 2 != 0 || offset < -2 * L || offset > 2 * L) {
        throw InvalidInput("ladder offset " + std::to_string(offset) + " outside the truncated ladder");
    }
    return static_cast<std::size_t>((offset + 2 * L) / 2);
}

}  // namespace

void BraggParams::validate() const {
    if (!std::isfinite(g) || g < 0.0) {
        throw InvalidInput("g must be finite and non-negative");
    }
    if (!std::isfinite(delta) || delta <= 0.0) {
        throw InvalidInput("delta must be finite and positive");
    }
    if (g > 0.0 && delta / g < 10.0) {
        throw InvalidInput("delta/g = " + std::to_string(delta / g) + " is below 10; outside the dispersive regime");
    }
    if (l0 < 2 || l0 % 2 != 0) {
        throw InvalidInput("l0 must be an even integer >= 2 (got " + std::to_string(l0) + ")");
    }
    if (r < 1 || r % 2 == 0) {
        throw InvalidInput("r must be an odd integer >= 1 (got " + std::to_string(r) + ")");
    }
    if (n != 0 && n != 1) {
        throw InvalidInput("photon number n must be 0 or 1 (got " + std::to_string(n) + ")");
    }
    if (ladder_halfwidth < l0 / 2 + 2) {
        throw InvalidInput("ladder_halfwidth must be >= l0/2 + 2 = " + std::to_string(l0 / 2 + 2) + " (got " +
                           std::to_string(ladder_halfwidth) + ")");
    }
    if (ladder_halfwidth > kMaxHalfwidth) {
        throw InvalidInput("ladder_halfwidth must be <= " + std::to_string(kMaxHalfwidth));
    }
    if (!std::isfinite(step)) {
        throw InvalidInput("step must be finite");
    }
}

std::vector<std::string> BraggParams::warnings() const {
    std::vector<std::string> out;
    if (g > 0.0 && delta / g < 50.0) {
        out.push_back("delta/g = " + std::to_string(delta / g) +
                      " is below 50; adiabatic elimination of the excited state is marginal");
    }
    return out;
}

double recoil_frequency(double mass_kg, double wavelength_m) {
    if (!(mass_kg > 0.0) || !(wavelength_m > 0.0) || !std::isfinite(mass_kg) || !std::isfinite(wavelength_m)) {
        throw InvalidInput("recoil_frequency needs positive mass and wavelength");
    }
    double k = 2.0 * std::numbers::pi / wavelength_m;
    return kHbar * k * k / (2.0 * mass_kg);
}

std::vector<int> ladder_offsets(const BraggParams &p) {
    std::vector<int> out;
    for (int l = -2 * p.ladder_halfwidth; l <= 2 * p.ladder_halfwidth; l += 2) {
        out.push_back(l);
    }
    return out;
}

std::string ladder_label(int photons, int offset) {
    return "n=" + std::to_string(photons) + ",l=" + std::to_string(offset);
}

std::vector<std::string> effective_basis(const BraggParams &p) {
    std::vector<std::string> out;
    for (int l : ladder_offsets(p)) {
        out.push_back(ladder_label(p.n, l));
    }
    return out;
}

Operator build_effective_hamiltonian(const BraggParams &p) {
    p.validate();
    const auto offsets = ladder_offsets(p);
    const auto dim = static_cast<Eigen::Index>(offsets.size());
    const double coupling = ladder_coupling(p, p.n);
    CMatrix h = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        // The constant part of cos(2kx) + 1 shifts every site by twice the coupling.
        h(i, i) = kinetic(p, offsets[static_cast<std::size_t>(i)]) - 2.0 * coupling;
        if (i + 1 < dim) {
            h(i, i + 1) = -coupling;
            h(i + 1, i) = -coupling;
        }
    }
    return Operator(std::move(h));
}

FullModel build_full_hamiltonian(const BraggParams &p) {
    p.validate();
    const int L = p.ladder_halfwidth;
    std::vector<std::string> basis;
    std::vector<double> diag;
    std::vector<int> momentum_offset;

    for (int l = -2 * L; l <= 2 * L; l += 2) {
        basis.push_back("g,n=" + std::to_string(p.n) + ",l=" + std::to_string(l));
        diag.push_back(kinetic(p, l));
        momentum_offset.push_back(l);
    }
    const std::size_t ground_count = basis.size();
    std::vector<std::size_t> excited;
    if (p.n > 0) {
        for (int l = -2 * L - 1; l <= 2 * L + 1; l += 2) {
            excited.push_back(basis.size());
            basis.push_back("e,n=" + std::to_string(p.n - 1) + ",l=" + std::to_string(l));
            diag.push_back(kinetic(p, l) + p.delta);
            momentum_offset.push_back(l);
        }
    }

    const auto dim = static_cast<Eigen::Index>(basis.size());
    CMatrix h = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        h(i, i) = diag[static_cast<std::size_t>(i)];
    }
    const double coupling = 0.5 * p.g * std::sqrt(static_cast<double>(p.n));
    for (std::size_t gi = 0; gi < ground_count; ++gi) {
        for (std::size_t ei : excited) {
            if (std::abs(momentum_offset[gi] - momentum_offset[ei]) == 1) {
                auto a = static_cast<Eigen::Index>(gi);
                auto b = static_cast<Eigen::Index>(ei);
                h(a, b) = coupling;
                h(b, a) = coupling;
            }
        }
    }
    return FullModel{Operator(std::move(h)), std::move(basis), std::move(excited), site_index(p, 0)};
}

AdiabaticityReport excited_population_scan(const BraggParams &p, double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end >= 0.0)) {
        throw InvalidInput("excited_population_scan needs dt > 0 and t_end >= 0");
    }
    FullModel model = build_full_hamiltonian(p);
    const Operator u = propagator(model.hamiltonian, dt);
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
    if (steps > kMaxIntegratorSteps) {
        throw InvalidInput("excited_population_scan: too many samples");
    }
    CVector psi = CVector::Zero(static_cast<Eigen::Index>(model.basis.size()));
    psi[static_cast<Eigen::Index>(model.initial_index)] = 1.0;

    AdiabaticityReport report;
    auto excited_pop = [&](const CVector &v) {
        double s = 0.0;
        for (std::size_t i : model.excited_indices) {
            s += std::norm(v[static_cast<Eigen::Index>(i)]);
        }
        return s;
    };
    for (std::size_t k = 0; k <= steps; ++k) {
        if (k > 0) {
            psi = u.matrix() * psi;
        }
        double pe = excited_pop(psi);
        if (pe > report.max_excited_population) {
            report.max_excited_population = pe;
            report.time_of_max = static_cast<double>(k) * dt;
        }
        report.final_excited_population = pe;
    }
    report.samples = steps + 1;
    return report;
}

double pendellosung_B(const BraggParams &p) {
    if (p.n == 0) {
        return 0.0;
    }
    const double x = p.g * p.g * p.n / (2.0 * p.delta);
    if (p.l0 == 2) {
        return x;
    }
    const int half = p.l0 / 2;
    // (2 w_rec)^{l0/2 - 1} with w_rec = 1, times (l0-2)(l0-4)...4.2.
    double denom = std::pow(2.0, half - 1);
    for (int k = p.l0 - 2; k >= 2; k -= 2) {
        denom *= k;
    }
    return std::pow(x, half) / denom;
}

double pendellosung_A(const BraggParams &p) {
    if (p.l0 == 2) {
        return 0.0;
    }
    const double y = p.g * p.g * p.n / (4.0 * p.delta);
    return -(y * y) / ((p.l0 - 2) * 2.0);
}

BraggAmplitudes analytic_amplitudes(const BraggParams &p, double t) {
    const double a = pendellosung_A(p);
    const double b = pendellosung_B(p);
    const cplx phase = std::exp(cplx(0.0, -a * t));
    return {phase * std::cos(0.5 * b * t), cplx(0.0, 1.0) * phase * std::sin(0.5 * b * t)};
}

double pi_time(const BraggParams &p) {
    if (p.n < 1) {
        throw InvalidInput("pi_time is undefined for an empty cavity (n = 0)");
    }
    return p.r * std::numbers::pi / pendellosung_B(p);
}

double bragg_phase(const BraggParams &p) {
    BraggParams one = p.with_photons(1);
    return p.r * std::numbers::pi * pendellosung_A(one) / pendellosung_B(one);
}

std::vector<std::string> pair_basis() { return {"0,+l0", "0,-l0", "1,+l0", "1,-l0"}; }

StateVector pair_state(const BraggAmplitudes &zero_photon, const BraggAmplitudes &one_photon) {
    const double s = 1.0 / std::sqrt(2.0);
    CVector amps(4);
    amps << s * zero_photon.plus, s * zero_photon.minus, s * one_photon.plus, s * one_photon.minus;
    return StateVector(pair_basis(), std::move(amps));
}

StateVector entangle_pair(const BraggParams &p, double t) {
    p.validate();
    return pair_state(analytic_amplitudes(p.with_photons(0), t), analytic_amplitudes(p.with_photons(1), t));
}

StateVector entangle_pair(const BraggParams &p) { return entangle_pair(p, pi_time(p.with_photons(1))); }

double LadderState::population(int offset) const {
    if (offset % 2 != 0 || offset < -2 * halfwidth || offset > 2 * halfwidth) {
        throw InvalidInput("ladder offset " + std::to_string(offset) + " outside the truncated ladder");
    }
    return state.probability(static_cast<std::size_t>((offset + 2 * halfwidth) / 2));
}

double LadderState::outside_population(int l0) const {
    return std::max(0.0, state.amps().squaredNorm() - population(0) - population(-l0));
}

LadderState ladder_evolve(const BraggParams &p, double t, EvolutionMethod method) {
    const Operator h = build_effective_hamiltonian(p);
    StateVector psi0 = StateVector::basis_state(effective_basis(p), site_index(p, 0));
    StateVector psi = evolve(h, psi0, t, method, p.step);
    const double boundary = psi.probability(0) + psi.probability(psi.dim() - 1);
    return LadderState{std::move(psi), t, p.ladder_halfwidth, boundary, boundary > kBoundaryWarn};
}

std::vector<LadderState> ladder_trajectory(const BraggParams &p, double dt, std::size_t steps) {
    const Operator h = build_effective_hamiltonian(p);
    const Operator u = propagator(h, dt);
    StateVector psi = StateVector::basis_state(effective_basis(p), site_index(p, 0));
    std::vector<LadderState> out;
    out.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        if (k > 0) {
            psi = u.apply(psi);
        }
        const double boundary = psi.probability(0) + psi.probability(psi.dim() - 1);
        out.push_back(LadderState{psi, static_cast<double>(k) * dt, p.ladder_halfwidth, boundary, boundary > kBoundaryWarn});
    }
    return out;
}

BraggAmplitudes shift_compensated_amplitudes(const BraggParams &p, const LadderState &s) {
    // Undo exp(+i 2 coupling t) picked up from the uniform diagonal shift.
    const cplx undo = std::exp(cplx(0.0, -2.0 * ladder_coupling(p, p.n) * s.time));
    return {undo * s.state.amps()[static_cast<Eigen::Index>(site_index(p, 0))],
            undo * s.state.amps()[static_cast<Eigen::Index>(site_index(p, -p.l0))]};
}

StateVector ladder_pair_state(const BraggParams &p, double t) {
    const BraggParams p0 = p.with_photons(0);
    const BraggParams p1 = p.with_photons(1);
    return pair_state(shift_compensated_amplitudes(p0, ladder_evolve(p0, t)),
                      shift_compensated_amplitudes(p1, ladder_evolve(p1, t)));
}

}  // namespace cavswap

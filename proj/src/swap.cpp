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

#include "cavswap/swap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace cavswap {

namespace {

constexpr double kProbabilitySumTol = 1e-12;
constexpr double kZeroProbability = 1e-14;
constexpr double kEprTol = 1e-12;

const cplx kI(0.0, 1.0);

Occupation pair_occupation(int mode_a, int mode_b) {
    Occupation occ{};
    occ[static_cast<std::size_t>(mode_a)] += 1;
    occ[static_cast<std::size_t>(mode_b)] += 1;
    return occ;
}

void enumerate(int mode, int remaining, Occupation &current, std::vector<Occupation> &out) {
    if (mode == kModeCount - 1) {
        current[static_cast<std::size_t>(mode)] = remaining;
        out.push_back(current);
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        current[static_cast<std::size_t>(mode)] = k;
        enumerate(mode + 1, remaining - k, current, out);
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

const std::vector<Occupation> &two_atom_basis() {
    static const std::vector<Occupation> basis = fock_basis(2);
    return basis;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fock space

std::vector<Occupation> fock_basis(int atoms) {
    if (atoms < 0) {
        throw InvalidInput("atom number must be non-negative");
    }
    std::vector<Occupation> out;
    Occupation current{};
    enumerate(0, atoms, current, out);
    return out;
}

std::size_t fock_index(const Occupation &occ) {
    const auto &basis = two_atom_basis();
    auto it = std::find(basis.begin(), basis.end(), occ);
    if (it == basis.end()) {
        throw InvalidInput("occupation " + occupation_label(occ) + " is not a two-atom state");
    }
    return static_cast<std::size_t>(it - basis.begin());
}

std::string occupation_label(const Occupation &occ) {
    std::string s;
    for (int n : occ) {
        s += std::to_string(n);
    }
    return s;
}

CMatrix single_atom_beam_splitter() {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix u = CMatrix::Zero(kModeCount, kModeCount);
    // Undeflected pair: a1 -> (a1' + i a2')/sqrt2, a2 -> (i a1' + a2')/sqrt2.
    u(kA1, kA1) = s;
    u(kA2, kA1) = kI * s;
    u(kA1, kA2) = kI * s;
    u(kA2, kA2) = s;
    // Deflected pair, same map.
    u(kB1, kB1) = s;
    u(kB2, kB1) = kI * s;
    u(kB1, kB2) = kI * s;
    u(kB2, kB2) = s;
    return u;
}

Operator lift_to_fock(const CMatrix &single_particle, int atoms) {
    if (single_particle.rows() != kModeCount || single_particle.cols() != kModeCount) {
        throw InvalidInput("single-particle map must be 4 x 4");
    }
    const auto basis = fock_basis(atoms);
    std::map<Occupation, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        index[basis[i]] = i;
    }
    const auto dim = static_cast<Eigen::Index>(basis.size());
    CMatrix out = CMatrix::Zero(dim, dim);

    for (std::size_t col = 0; col < basis.size(); ++col) {
        const Occupation &in = basis[col];
        // Expand prod_i (sum_j U_ji b_j^dagger)^{n_i} |vac> in the output Fock basis.
        std::map<Occupation, cplx> poly{{Occupation{}, 1.0}};
        double norm = 1.0;
        for (int i = 0; i < kModeCount; ++i) {
            norm *= factorial(in[static_cast<std::size_t>(i)]);
            for (int rep = 0; rep < in[static_cast<std::size_t>(i)]; ++rep) {
                std::map<Occupation, cplx> next;
                for (const auto &[occ, amp] : poly) {
                    for (int j = 0; j < kModeCount; ++j) {
                        cplx u = single_particle(j, i);
                        if (u == 0.0) {
                            continue;
                        }
                        Occupation raised = occ;
                        raised[static_cast<std::size_t>(j)] += 1;
                        next[raised] += u * amp * std::sqrt(static_cast<double>(raised[static_cast<std::size_t>(j)]));
                    }
                }
                poly = std::move(next);
            }
        }
        for (const auto &[occ, amp] : poly) {
            out(static_cast<Eigen::Index>(index.at(occ)), static_cast<Eigen::Index>(col)) = amp / std::sqrt(norm);
        }
    }
    return Operator(std::move(out));
}

Operator beam_splitter_unitary() { return lift_to_fock(single_atom_beam_splitter(), 2); }

// ---------------------------------------------------------------------------
// Joint state

JointState::JointState(StateVector state) : state_(std::move(state)) {
    if (state_.dim() != kDim) {
        throw InvalidInput("joint state must have dimension " + std::to_string(kDim));
    }
}

std::vector<std::string> JointState::basis() {
    std::vector<std::string> out;
    out.reserve(kDim);
    for (int c1 = 0; c1 < 2; ++c1) {
        for (int c2 = 0; c2 < 2; ++c2) {
            for (const auto &occ : two_atom_basis()) {
                out.push_back(std::to_string(c1) + std::to_string(c2) + "|" + occupation_label(occ));
            }
        }
    }
    return out;
}

std::size_t JointState::index(int c1, int c2, const Occupation &occ) {
    if (c1 < 0 || c1 > 1 || c2 < 0 || c2 > 1) {
        throw InvalidInput("cavity photon numbers must be 0 or 1");
    }
    return static_cast<std::size_t>(2 * c1 + c2) * kFockDim + fock_index(occ);
}

cplx JointState::amp(int c1, int c2, const Occupation &occ) const {
    return state_.amps()[static_cast<Eigen::Index>(index(c1, c2, occ))];
}

JointState assemble_joint_state(const BraggAmplitudes &zero_photon, const BraggAmplitudes &one_photon) {
    // Per-atom amplitudes over (cavity photons, undeflected/deflected).
    const double s = 1.0 / std::sqrt(2.0);
    const cplx single[2][2] = {{s * zero_photon.plus, s * zero_photon.minus},
                               {s * one_photon.plus, s * one_photon.minus}};
    const int atom1_mode[2] = {kA1, kB1};
    const int atom2_mode[2] = {kA2, kB2};

    CVector amps = CVector::Zero(static_cast<Eigen::Index>(JointState::kDim));
    for (int c1 = 0; c1 < 2; ++c1) {
        for (int c2 = 0; c2 < 2; ++c2) {
            for (int d1 = 0; d1 < 2; ++d1) {
                for (int d2 = 0; d2 < 2; ++d2) {
                    // Atoms occupy distinct modes, so a^dagger b^dagger |vac> has unit norm.
                    auto idx = JointState::index(c1, c2, pair_occupation(atom1_mode[d1], atom2_mode[d2]));
                    amps[static_cast<Eigen::Index>(idx)] += single[c1][d1] * single[c2][d2];
                }
            }
        }
    }
    return JointState(StateVector(JointState::basis(), std::move(amps)));
}

JointState assemble_joint_state(const BraggParams &p, double t) {
    p.validate();
    return assemble_joint_state(analytic_amplitudes(p.with_photons(0), t), analytic_amplitudes(p.with_photons(1), t));
}

JointState assemble_joint_state(const BraggParams &p) { return assemble_joint_state(p, pi_time(p.with_photons(1))); }

JointState ideal_joint_state(double phi) {
    const cplx e = std::exp(-kI * phi);
    return assemble_joint_state(BraggAmplitudes{1.0, 0.0}, BraggAmplitudes{0.0, kI * e});
}

JointState epr_decomposition(double phi) {
    const cplx e1 = std::exp(-kI * phi);
    const cplx e2 = std::exp(-2.0 * kI * phi);
    const std::size_t f = JointState::kFockDim;

    auto momentum = [&](cplx pp, cplx mm, cplx pm, cplx mp) {
        CVector v = CVector::Zero(static_cast<Eigen::Index>(f));
        v[static_cast<Eigen::Index>(fock_index(pair_occupation(kA1, kA2)))] += pp;
        v[static_cast<Eigen::Index>(fock_index(pair_occupation(kB1, kB2)))] += mm;
        v[static_cast<Eigen::Index>(fock_index(pair_occupation(kA1, kB2)))] += pm;
        v[static_cast<Eigen::Index>(fock_index(pair_occupation(kB1, kA2)))] += mp;
        return v;
    };
    auto cavity = [](double c00, double c01, double c10, double c11) {
        CVector v(4);
        v << c00, c01, c10, c11;
        return v;
    };
    auto kron = [&](const CVector &cav, const CVector &mom) {
        CVector out(static_cast<Eigen::Index>(JointState::kDim));
        for (Eigen::Index c = 0; c < 4; ++c) {
            out.segment(c * static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(f)) = cav[c] * mom;
        }
        return out;
    };

    CVector amps = 0.25 * kron(cavity(1, 0, 0, -1), momentum(1.0, e2, 0.0, 0.0)) +
                   0.25 * kron(cavity(1, 0, 0, 1), momentum(1.0, -e2, 0.0, 0.0)) +
                   0.25 * kI * e1 * kron(cavity(0, 1, 1, 0), momentum(0.0, 0.0, 1.0, 1.0)) +
                   0.25 * kI * e1 * kron(cavity(0, 1, -1, 0), momentum(0.0, 0.0, 1.0, -1.0));
    return JointState(StateVector(JointState::basis(), std::move(amps)));
}

EprCheck epr_decomposition_check(const JointState &s) {
    const cplx a = s.amp(0, 1, pair_occupation(kA1, kB2));
    EprCheck check;
    if (std::abs(a) == 0.0) {
        check.residual = std::numeric_limits<double>::infinity();
        return check;
    }
    // a = (i/2) e^{-i phi}
    check.phi = -std::arg(a / kI);
    const JointState reference = epr_decomposition(check.phi);
    check.residual = (s.vector().amps() - reference.vector().amps()).cwiseAbs().maxCoeff();
    check.holds = check.residual <= kEprTol;
    return check;
}

JointState apply_beam_splitters(const JointState &s) {
    const Operator network = tensor_product(Operator::identity(4), beam_splitter_unitary());
    return JointState(network.apply(s.vector()));
}

// ---------------------------------------------------------------------------
// Detection

Detector detector_for_mode(int output_mode) {
    switch (output_mode) {
        case kA1:
            return Detector::D4;
        case kA2:
            return Detector::D3;
        case kB1:
            return Detector::D2;
        case kB2:
            return Detector::D1;
    }
    throw InvalidInput("output mode out of range");
}

std::string ClickPattern::name() const {
    std::string out;
    for (int d = 3; d >= 0; --d) {
        for (int k = 0; k < counts[static_cast<std::size_t>(d)]; ++k) {
            if (!out.empty()) {
                out += "&";
            }
            out += "D" + std::to_string(d + 1);
        }
    }
    return out;
}

bool ClickPattern::is_double() const {
    return std::any_of(counts.begin(), counts.end(), [](int c) { return c == 2; });
}

Occupation ClickPattern::output_occupation() const {
    Occupation occ{};
    for (int mode = 0; mode < kModeCount; ++mode) {
        occ[static_cast<std::size_t>(mode)] = counts[static_cast<std::size_t>(detector_for_mode(mode))];
    }
    return occ;
}

const std::vector<ClickPattern> &all_click_patterns() {
    static const std::vector<ClickPattern> patterns = [] {
        auto make = [](int da, int db) {
            ClickPattern p;
            p.counts[static_cast<std::size_t>(da - 1)] += 1;
            p.counts[static_cast<std::size_t>(db - 1)] += 1;
            return p;
        };
        return std::vector<ClickPattern>{make(4, 4), make(3, 3), make(2, 2), make(1, 1), make(4, 3),
                                         make(4, 2), make(4, 1), make(3, 2), make(3, 1), make(2, 1)};
    }();
    return patterns;
}

ClickPattern pattern_from_name(std::string_view name) {
    // "Da&Db" in either order
    auto bad = [&] { return InvalidInput("unknown click pattern '" + std::string(name) + "'"); };
    if (name.size() != 5 || name[0] != 'D' || name[2] != '&' || name[3] != 'D') {
        throw bad();
    }
    ClickPattern p;
    for (char c : {name[1], name[4]}) {
        if (c < '1' || c > '4') {
            throw bad();
        }
        ++p.counts[static_cast<std::size_t>(c - '1')];
    }
    return p;
}

std::string_view herald_name(Herald h) {
    switch (h) {
        case Herald::PsiPlus:
            return "psi_plus";
        case Herald::PsiMinus:
            return "psi_minus";
        case Herald::Product00:
            return "product_00";
        case Herald::Product11:
            return "product_11";
        case Herald::None:
            return "none";
    }
    return "none";
}

Herald herald_for(const ClickPattern &pattern) {
    const auto &c = pattern.counts;
    const int undeflected = c[static_cast<std::size_t>(Detector::D4)] + c[static_cast<std::size_t>(Detector::D3)];
    if (pattern.is_double()) {
        return undeflected == 2 ? Herald::Product00 : Herald::Product11;
    }
    if (undeflected != 1) {
        return Herald::None;
    }
    // One undeflected and one deflected click. Same splitter-output index
    // (D4 with D2, D3 with D1) heralds psi+; crossed indices herald psi-.
    const bool d4 = c[static_cast<std::size_t>(Detector::D4)] == 1;
    const bool d2 = c[static_cast<std::size_t>(Detector::D2)] == 1;
    return d4 == d2 ? Herald::PsiPlus : Herald::PsiMinus;
}

StateVector herald_target(Herald h) {
    switch (h) {
        case Herald::PsiPlus:
            return bell_state(BellState::PsiPlus);
        case Herald::PsiMinus:
            return bell_state(BellState::PsiMinus);
        case Herald::Product00:
            return StateVector::basis_state({"00", "01", "10", "11"}, 0);
        case Herald::Product11:
            return StateVector::basis_state({"00", "01", "10", "11"}, 3);
        case Herald::None:
            break;
    }
    throw InvalidInput("the 'none' herald has no target state");
}

std::string_view table_label(const ClickPattern &pattern) {
    if (pattern.is_double()) {
        return "phi_plus_or_phi_minus";
    }
    const auto &c = pattern.counts;
    auto has = [&](Detector d) { return c[static_cast<std::size_t>(d)] == 1; };
    if ((has(Detector::D1) && has(Detector::D4)) || (has(Detector::D2) && has(Detector::D3))) {
        return "psi_plus";
    }
    if ((has(Detector::D2) && has(Detector::D4)) || (has(Detector::D1) && has(Detector::D3))) {
        return "psi_minus";
    }
    return "none";
}

std::vector<HeraldResult> click_distribution(const JointState &s) {
    const JointState out = apply_beam_splitters(s);
    const CVector &amps = out.vector().amps();
    const std::array<std::size_t, 3> dims{2, 2, JointState::kFockDim};
    const std::array<std::size_t, 2> keep{0, 1};

    std::vector<HeraldResult> dist;
    double total = 0.0;
    for (const auto &pattern : all_click_patterns()) {
        const Occupation occ = pattern.output_occupation();
        CVector projected = CVector::Zero(amps.size());
        for (int c1 = 0; c1 < 2; ++c1) {
            for (int c2 = 0; c2 < 2; ++c2) {
                auto idx = static_cast<Eigen::Index>(JointState::index(c1, c2, occ));
                projected[idx] = amps[idx];
            }
        }
        HeraldResult r;
        r.pattern = pattern;
        r.probability = projected.squaredNorm();
        r.classification = herald_for(pattern);
        r.paper_label = std::string(table_label(pattern));
        total += r.probability;
        if (r.probability > kZeroProbability) {
            const DensityMatrix joint =
                DensityMatrix::from_pure(StateVector(out.vector().basis(), projected / std::sqrt(r.probability)));
            r.conditional_state = partial_trace(joint, dims, keep);
            r.concurrence = concurrence(*r.conditional_state);
            if (r.classification != Herald::None) {
                r.fidelity_to_class = fidelity(*r.conditional_state, herald_target(r.classification));
            }
        }
        dist.push_back(std::move(r));
    }
    if (std::abs(total - 1.0) > kProbabilitySumTol) {
        throw InternalError("click probabilities sum to " + std::to_string(total));
    }
    return dist;
}

double success_probability(const std::vector<HeraldResult> &dist) {
    double p = 0.0;
    for (const auto &r : dist) {
        if (r.classification == Herald::PsiPlus || r.classification == Herald::PsiMinus) {
            p += r.probability;
        }
    }
    return p;
}

double mean_psi_fidelity(const std::vector<HeraldResult> &dist) {
    double weight = 0.0;
    double acc = 0.0;
    for (const auto &r : dist) {
        if (r.classification == Herald::PsiPlus || r.classification == Herald::PsiMinus) {
            weight += r.probability;
            acc += r.probability * r.fidelity_to_class;
        }
    }
    return weight > 0.0 ? acc / weight : 0.0;
}

ShotOutcome sample_shot(const std::vector<HeraldResult> &dist, const ShotStream &stream, std::uint64_t shot_index,
                        double detection_efficiency) {
    if (dist.empty()) {
        throw InvalidInput("cannot sample from an empty distribution");
    }
    if (!(detection_efficiency > 0.0 && detection_efficiency <= 1.0)) {
        throw InvalidInput("detection efficiency must lie in (0, 1]");
    }
    auto gen = stream.for_shot(shot_index);
    const double u = gen.uniform();
    ShotOutcome outcome;
    outcome.pattern_index = dist.size();
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i].probability <= 0.0) {
            continue;
        }
        last_nonzero = i;
        cumulative += dist[i].probability;
        if (u < cumulative) {
            outcome.pattern_index = i;
            break;
        }
    }
    if (outcome.pattern_index == dist.size()) {
        // Rounding left u above the cumulative sum.
        outcome.pattern_index = last_nonzero;
    }
    if (detection_efficiency < 1.0) {
        const bool first = gen.uniform() < detection_efficiency;
        const bool second = gen.uniform() < detection_efficiency;
        outcome.detected = first && second;
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// Protocol runs

double ProtocolReport::empirical_frequency(std::size_t pattern_index) const {
    return accepted == 0 ? 0.0 : static_cast<double>(counts.at(pattern_index)) / static_cast<double>(accepted);
}

std::vector<std::string> ProtocolReport::table_label_mismatches() const {
    std::vector<std::string> out;
    for (const auto &r : distribution) {
        if (r.probability > kZeroProbability && herald_name(r.classification) != r.paper_label) {
            out.push_back(r.pattern.name());
        }
    }
    return out;
}

ProtocolReport run_protocol(const BraggParams &p, std::size_t shots, std::uint64_t seed,
                            const ProtocolOptions &options) {
    p.validate();
    if (shots == 0) {
        throw InvalidInput("shots must be positive");
    }
    if (!std::isfinite(options.time_scale) || options.time_scale < 0.0) {
        throw InvalidInput("time_scale must be finite and non-negative");
    }
    if (!(options.detection_efficiency > 0.0 && options.detection_efficiency <= 1.0)) {
        throw InvalidInput("detection_efficiency must lie in (0, 1]");
    }

    ProtocolReport report;
    report.params = p;
    report.options = options;
    report.seed = seed;
    report.shots = shots;
    report.interaction_time = options.time_scale * pi_time(p.with_photons(1));

    JointState joint = [&] {
        if (options.source == AmplitudeSource::Ladder) {
            const BraggParams p0 = p.with_photons(0);
            const BraggParams p1 = p.with_photons(1);
            const BraggAmplitudes a0 = shift_compensated_amplitudes(p0, ladder_evolve(p0, report.interaction_time));
            const BraggAmplitudes a1 = shift_compensated_amplitudes(p1, ladder_evolve(p1, report.interaction_time));
            // Renormalise each branch onto the two Bragg orders; the
            // discarded population is below 1e-3 in the Bragg regime.
            auto renorm = [](BraggAmplitudes a) {
                double n = std::sqrt(std::norm(a.plus) + std::norm(a.minus));
                return BraggAmplitudes{a.plus / n, a.minus / n};
            };
            return assemble_joint_state(renorm(a0), renorm(a1));
        }
        return assemble_joint_state(p, report.interaction_time);
    }();
    report.distribution = click_distribution(joint);
    report.exact_success_probability = success_probability(report.distribution);

    const ShotStream stream(seed);
    report.counts.assign(report.distribution.size(), 0);
    for (std::size_t shot = 0; shot < shots; ++shot) {
        ShotOutcome o = sample_shot(report.distribution, stream, shot, options.detection_efficiency);
        if (!o.detected) {
            ++report.discarded;
            continue;
        }
        ++report.accepted;
        ++report.counts[o.pattern_index];
    }

    std::size_t psi_count = 0;
    for (Herald h : {Herald::PsiPlus, Herald::PsiMinus, Herald::Product00, Herald::Product11}) {
        ClassSummary cs;
        cs.herald = h;
        double fid = 0.0, conc = 0.0, exact_fid = 0.0;
        for (std::size_t i = 0; i < report.distribution.size(); ++i) {
            const auto &r = report.distribution[i];
            if (r.classification != h) {
                continue;
            }
            cs.count += report.counts[i];
            fid += static_cast<double>(report.counts[i]) * r.fidelity_to_class;
            conc += static_cast<double>(report.counts[i]) * r.concurrence;
            cs.exact_probability += r.probability;
            exact_fid += r.probability * r.fidelity_to_class;
        }
        if (cs.count > 0) {
            cs.mean_fidelity = fid / static_cast<double>(cs.count);
            cs.mean_concurrence = conc / static_cast<double>(cs.count);
        }
        if (cs.exact_probability > 0.0) {
            cs.exact_mean_fidelity = exact_fid / cs.exact_probability;
        }
        if (h == Herald::PsiPlus || h == Herald::PsiMinus) {
            psi_count += cs.count;
        }
        report.classes.push_back(cs);
    }
    report.success_rate = static_cast<double>(psi_count) / static_cast<double>(shots);
    return report;
}

}  // namespace cavswap

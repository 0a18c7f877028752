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

// Entanglement swapping from two atom-cavity pairs onto the two cavities.
//
// Atomic spatial modes, in this fixed order:
//   A1  atom 1 undeflected (+P_{l0})     A2  atom 2 undeflected
//   B1  atom 1 deflected   (-P_{l0})     B2  atom 2 deflected
// The undeflected pair is mixed on one 50/50 splitter and the deflected pair
// on another. Output modes A1', A2', B1', B2' feed detectors D4, D3, D2, D1.
//
// The two atoms are treated as identical bosons in second quantization. A
// joint state lives on (cavity 1) x (cavity 2) x (two-atom Fock space), the
// cavities varying slowest.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavswap/bragg.hpp"
#include "cavswap/quantum_core.hpp"
#include "cavswap/shot_stream.hpp"

namespace cavswap {

inline constexpr int kModeCount = 4;
enum Mode : int { kA1 = 0, kA2 = 1, kB1 = 2, kB2 = 3 };

using Occupation = std::array<int, kModeCount>;

/// All occupations of kModeCount modes holding `atoms` bosons, in
/// lexicographically descending order: (2,0,0,0), (1,1,0,0), ...
std::vector<Occupation> fock_basis(int atoms);
std::size_t fock_index(const Occupation &occ);
std::string occupation_label(const Occupation &occ);

/// Single-atom map a1 -> (a1' + i a2')/sqrt2, a2 -> (i a1' + a2')/sqrt2 and the
/// same for b1, b2. Column j is the image of input mode j.
CMatrix single_atom_beam_splitter();

/// Lifts a single-particle mode unitary to the bosonic Fock space of `atoms`
/// particles, including the sqrt(n!) factors of multiply occupied modes.
Operator lift_to_fock(const CMatrix &single_particle, int atoms);

/// The beam-splitter network on the two-atom Fock space (10 x 10).
Operator beam_splitter_unitary();

/// Cavity pair x two-atom modes; dimension 4 * 10.
class JointState {
   public:
    explicit JointState(StateVector state);

    const StateVector &vector() const { return state_; }
    /// Amplitude of |c1 c2> x |occ>.
    cplx amp(int c1, int c2, const Occupation &occ) const;

    static std::vector<std::string> basis();
    static std::size_t index(int c1, int c2, const Occupation &occ);
    static constexpr std::size_t kFockDim = 10;
    static constexpr std::size_t kDim = 4 * kFockDim;

   private:
    StateVector state_;
};

/// Both atoms leave their cavities with the given per-branch amplitudes.
JointState assemble_joint_state(const BraggAmplitudes &zero_photon, const BraggAmplitudes &one_photon);
/// Closed-form amplitudes at interaction time t.
JointState assemble_joint_state(const BraggParams &p, double t);
/// Closed-form amplitudes at the pi-time.
JointState assemble_joint_state(const BraggParams &p);
/// Ideal pi-time joint state with deflection phase phi:
/// (1/2)[|00>a1a2 + i e^{-i phi}|01>a1b2 + i e^{-i phi}|10>b1a2 - e^{-2 i phi}|11>b1b2].
JointState ideal_joint_state(double phi);

/// The same state written as cavity Bell states paired with momentum EPR
/// states:
///   (1/4)(|++> + e^{-2i phi}|-->)(|00> - |11>)
/// + (1/4)(|++> - e^{-2i phi}|-->)(|00> + |11>)
/// + (i/4)e^{-i phi}(|+-> + |-+>)(|01> + |10>)
/// + (i/4)e^{-i phi}(|+-> - |-+>)(|01> - |10>)
/// with |+-> = a1^dagger b2^dagger |vac> and cavity kets in |c1 c2> order.
JointState epr_decomposition(double phi);

struct EprCheck {
    bool holds = false;
    double residual = 0.0;  // max |difference| over all amplitudes
    double phi = 0.0;       // deflection phase read off the state
};
/// Reads phi from the |01>a1b2 amplitude and compares s with
/// epr_decomposition(phi). Holds when residual <= 1e-12.
EprCheck epr_decomposition_check(const JointState &s);

/// Applies the beam-splitter network to the atomic factor.
JointState apply_beam_splitters(const JointState &s);

// ---------------------------------------------------------------------------
// Detection

enum class Detector : int { D1 = 0, D2 = 1, D3 = 2, D4 = 3 };
/// Output mode A1' -> D4, A2' -> D3, B1' -> D2, B2' -> D1.
Detector detector_for_mode(int output_mode);

/// Two clicks over D1..D4; counts are indexed by Detector.
struct ClickPattern {
    std::array<int, 4> counts{};

    std::string name() const;  // e.g. "D4&D2", "D3&D3"
    bool is_double() const;
    Occupation output_occupation() const;
    bool operator==(const ClickPattern &) const = default;
};

/// The 10 two-click patterns: D4&D4, D3&D3, D2&D2, D1&D1, D4&D3, D4&D2,
/// D4&D1, D3&D2, D3&D1, D2&D1.
const std::vector<ClickPattern> &all_click_patterns();
ClickPattern pattern_from_name(std::string_view name);

enum class Herald { PsiPlus, PsiMinus, Product00, Product11, None };
std::string_view herald_name(Herald h);

/// Heralding rule derived from the bosonic mode calculation:
///   D4&D2, D3&D1 -> psi+      D4&D1, D3&D2 -> psi-
///   D4&D4, D3&D3 -> |00>      D2&D2, D1&D1 -> |11>
///   D4&D3, D2&D1 -> none (never occurs at nominal timing)
Herald herald_for(const ClickPattern &pattern);
/// The cavity state the herald announces (|c1 c2> order).
StateVector herald_target(Herald h);
/// Label the original click table assigns to the pattern, kept for
/// side-by-side reporting: "psi_plus", "psi_minus", "phi_plus_or_phi_minus"
/// or "none".
std::string_view table_label(const ClickPattern &pattern);

struct HeraldResult {
    ClickPattern pattern;
    double probability = 0.0;
    std::optional<DensityMatrix> conditional_state;  // empty when probability is 0
    Herald classification = Herald::None;
    std::string paper_label;
    double concurrence = 0.0;
    double fidelity_to_class = 0.0;
};

/// Exact distribution over all 10 patterns for unit-efficiency,
/// number-resolving detectors. Applies the beam splitters to s first.
/// Throws InternalError if the probabilities do not sum to 1 within 1e-12.
std::vector<HeraldResult> click_distribution(const JointState &s);

/// Total probability of psi+ and psi- heralds.
double success_probability(const std::vector<HeraldResult> &dist);
/// Probability-weighted fidelity over psi+ and psi- heralds.
double mean_psi_fidelity(const std::vector<HeraldResult> &dist);

struct ShotOutcome {
    std::size_t pattern_index = 0;
    bool detected = true;  // false when an atom was missed and the shot discarded
};
/// Draws one shot from the stream's sub-stream for shot_index. Each atom is
/// detected independently with probability detection_efficiency.
ShotOutcome sample_shot(const std::vector<HeraldResult> &dist, const ShotStream &stream, std::uint64_t shot_index,
                        double detection_efficiency = 1.0);

enum class AmplitudeSource { Analytic, Ladder };

struct ProtocolOptions {
    double time_scale = 1.0;  // interaction time in units of the pi-time
    double detection_efficiency = 1.0;
    AmplitudeSource source = AmplitudeSource::Analytic;
};

struct ClassSummary {
    Herald herald = Herald::None;
    std::size_t count = 0;
    double mean_fidelity = 0.0;     // over sampled shots
    double mean_concurrence = 0.0;  // over sampled shots
    double exact_probability = 0.0;
    double exact_mean_fidelity = 0.0;
};

struct ProtocolReport {
    BraggParams params;
    ProtocolOptions options;
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    double interaction_time = 0.0;
    std::vector<HeraldResult> distribution;
    std::vector<std::size_t> counts;  // per pattern, accepted shots only
    std::size_t accepted = 0;
    std::size_t discarded = 0;
    double success_rate = 0.0;  // psi+- heralds / shots
    double exact_success_probability = 0.0;
    std::vector<ClassSummary> classes;  // psi+, psi-, |00>, |11>

    double empirical_frequency(std::size_t pattern_index) const;
    /// Patterns with nonzero probability whose classification differs from
    /// the original table's label.
    std::vector<std::string> table_label_mismatches() const;
};

ProtocolReport run_protocol(const BraggParams &p, std::size_t shots, std::uint64_t seed,
                            const ProtocolOptions &options = {});

}  // namespace cavswap

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

// Oracle comparisons, parameter sweeps and interval estimates.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cavswap/bragg.hpp"

namespace cavswap {

struct Interval {
    double low = 0.0;
    double high = 1.0;
    bool contains(double x) const { return low <= x && x <= high; }
};

/// Wilson score interval for `successes` out of `trials` at z standard
/// deviations.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z);

struct OracleRow {
    double time = 0.0;
    double analytic_deflected = 0.0;  // |C_{n,-l0}|^2 from the closed form
    double oracle_deflected = 0.0;    // population of -P_{l0} on the ladder
    double abs_error = 0.0;
    double outside_population = 0.0;  // ladder population off the two Bragg orders
};

struct OracleComparison {
    BraggParams params;
    std::vector<OracleRow> rows;
    double max_error = 0.0;
    bool truncation_warning = false;
};

/// Closed-form vs ladder deflection populations at each time.
OracleComparison oracle_compare(const BraggParams &p, std::span<const double> times);

/// count evenly spaced times from 0 to t_end inclusive.
std::vector<double> uniform_times(double t_end, std::size_t count);
/// 2 pi / |B_n|: one full population cycle.
double pendellosung_period(const BraggParams &p);

enum class SweepAxis { DeltaOverG, InteractionTimeScale, L0, LadderHalfwidth };
std::string axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string &name);

struct SweepSpec {
    SweepAxis axis = SweepAxis::DeltaOverG;
    std::vector<double> values;
    BraggParams base;
    std::size_t shots = 10000;
    std::uint64_t seed = 1;
    double time_scale = 1.0;
    double detection_efficiency = 1.0;

    /// Nonempty, strictly monotone values; integer values for integer axes.
    void validate() const;
};

struct ComparisonRow {
    double value = 0.0;
    double analytic_deflection = 0.0;
    double oracle_deflection = 0.0;
    double abs_error = 0.0;
    double success_rate = 0.0;  // empirical, from seeded shots
    Interval success_interval;  // Wilson, z = 1.96
    double exact_success_probability = 0.0;
    double mean_psi_fidelity = 0.0;
    bool truncation_warning = false;
    bool ok = true;
    std::string error;  // set when the row failed; the sweep carries on
};

/// Parameters a sweep row runs with.
BraggParams sweep_row_params(const SweepSpec &s, double value);
double sweep_row_time_scale(const SweepSpec &s, double value);

/// Rows in the order of s.values. Row i draws shots from
/// ShotStream(seed).split(i).
std::vector<ComparisonRow> run_sweep(const SweepSpec &s);

/// Fixed column order:
/// value,analytic_deflection,oracle_deflection,abs_error,success_rate,
/// success_low,success_high,exact_success_probability,mean_psi_fidelity,
/// truncation_warning,status
void write_sweep_csv(std::ostream &os, const std::vector<ComparisonRow> &rows);

/// time,analytic_deflected,oracle_deflected,abs_error,outside_population
void write_oracle_csv(std::ostream &os, const OracleComparison &cmp);

}  // namespace cavswap

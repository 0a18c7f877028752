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

#include "cavswap/metrics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "cavswap/report_io.hpp"
#include "cavswap/swap.hpp"

namespace cavswap {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (successes > trials) {
        throw InvalidInput("wilson_interval: successes exceed trials");
    }
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<double> uniform_times(double t_end, std::size_t count) {
    if (count == 0) {
        return {};
    }
    if (count == 1) {
        return {0.0};
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = t_end * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

double pendellosung_period(const BraggParams &p) {
    const double b = pendellosung_B(p);
    if (b == 0.0) {
        throw InvalidInput("no Pendellosung oscillation without photons");
    }
    return 2.0 * std::numbers::pi / b;
}

OracleComparison oracle_compare(const BraggParams &p, std::span<const double> times) {
    p.validate();
    OracleComparison cmp;
    cmp.params = p;
    for (double t : times) {
        const LadderState s = ladder_evolve(p, t);
        OracleRow row;
        row.time = t;
        row.analytic_deflected = std::norm(analytic_amplitudes(p, t).minus);
        row.oracle_deflected = s.population(-p.l0);
        row.abs_error = std::abs(row.analytic_deflected - row.oracle_deflected);
        row.outside_population = s.outside_population(p.l0);
        cmp.max_error = std::max(cmp.max_error, row.abs_error);
        cmp.truncation_warning = cmp.truncation_warning || s.truncation_warning;
        cmp.rows.push_back(row);
    }
    return cmp;
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::DeltaOverG:
            return "delta_over_g";
        case SweepAxis::InteractionTimeScale:
            return "interaction_time_scale";
        case SweepAxis::L0:
            return "l0";
        case SweepAxis::LadderHalfwidth:
            return "ladder_halfwidth";
    }
    return "";
}

SweepAxis axis_from_name(const std::string &name) {
    for (SweepAxis a : {SweepAxis::DeltaOverG, SweepAxis::InteractionTimeScale, SweepAxis::L0,
                        SweepAxis::LadderHalfwidth}) {
        if (axis_name(a) == name) {
            return a;
        }
    }
    throw InvalidInput("unknown sweep axis '" + name +
                       "' (expected delta_over_g, interaction_time_scale, l0 or ladder_halfwidth)");
}

void SweepSpec::validate() const {
    if (values.empty()) {
        throw InvalidInput("sweep values must be nonempty");
    }
    const bool increasing = values.size() < 2 || values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (increasing ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
            throw InvalidInput("sweep values must be strictly monotone");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidInput("sweep values must be finite");
        }
        if ((axis == SweepAxis::L0 || axis == SweepAxis::LadderHalfwidth) && v != std::floor(v)) {
            throw InvalidInput("sweep axis " + axis_name(axis) + " takes integer values");
        }
    }
    if (shots == 0) {
        throw InvalidInput("sweep shots must be positive");
    }
}

BraggParams sweep_row_params(const SweepSpec &s, double value) {
    BraggParams p = s.base;
    switch (s.axis) {
        case SweepAxis::DeltaOverG:
            p.delta = value * p.g;
            break;
        case SweepAxis::L0:
            p.l0 = static_cast<int>(value);
            break;
        case SweepAxis::LadderHalfwidth:
            p.ladder_halfwidth = static_cast<int>(value);
            break;
        case SweepAxis::InteractionTimeScale:
            break;
    }
    return p;
}

double sweep_row_time_scale(const SweepSpec &s, double value) {
    return s.axis == SweepAxis::InteractionTimeScale ? value : s.time_scale;
}

std::vector<ComparisonRow> run_sweep(const SweepSpec &s) {
    s.validate();
    const ShotStream root(s.seed);
    std::vector<ComparisonRow> rows;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        ComparisonRow row;
        row.value = s.values[i];
        try {
            const BraggParams p = sweep_row_params(s, row.value).with_photons(1);
            p.validate();
            const double scale = sweep_row_time_scale(s, row.value);
            const double t = scale * pi_time(p);
            const LadderState ladder = ladder_evolve(p, t);
            row.analytic_deflection = std::norm(analytic_amplitudes(p, t).minus);
            row.oracle_deflection = ladder.population(-p.l0);
            row.abs_error = std::abs(row.analytic_deflection - row.oracle_deflection);
            row.truncation_warning = ladder.truncation_warning;

            ProtocolOptions opts;
            opts.time_scale = scale;
            opts.detection_efficiency = s.detection_efficiency;
            const ProtocolReport report = run_protocol(p, s.shots, root.split(i).seed(), opts);
            std::size_t psi_count = 0;
            for (const auto &c : report.classes) {
                if (c.herald == Herald::PsiPlus || c.herald == Herald::PsiMinus) {
                    psi_count += c.count;
                }
            }
            row.success_rate = report.success_rate;
            row.success_interval = wilson_interval(psi_count, report.shots, 1.96);
            row.exact_success_probability = report.exact_success_probability;
            row.mean_psi_fidelity = mean_psi_fidelity(report.distribution);
        } catch (const std::exception &e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream &os, const std::vector<ComparisonRow> &rows) {
    os << "value,analytic_deflection,oracle_deflection,abs_error,success_rate,success_low,success_high,"
          "exact_success_probability,mean_psi_fidelity,truncation_warning,status\n";
    for (const auto &r : rows) {
        os << format_number(r.value) << ',';
        if (!r.ok) {
            os << ",,,,,,,,," << csv_field("error: " + r.error) << '\n';
            continue;
        }
        os << format_number(r.analytic_deflection) << ',' << format_number(r.oracle_deflection) << ','
           << format_number(r.abs_error) << ',' << format_number(r.success_rate) << ','
           << format_number(r.success_interval.low) << ',' << format_number(r.success_interval.high) << ','
           << format_number(r.exact_success_probability) << ',' << format_number(r.mean_psi_fidelity) << ','
           << (r.truncation_warning ? "1" : "0") << ",ok\n";
    }
}

void write_oracle_csv(std::ostream &os, const OracleComparison &cmp) {
    os << "time,analytic_deflected,oracle_deflected,abs_error,outside_population\n";
    for (const auto &r : cmp.rows) {
        os << format_number(r.time) << ',' << format_number(r.analytic_deflected) << ','
           << format_number(r.oracle_deflected) << ',' << format_number(r.abs_error) << ','
           << format_number(r.outside_population) << '\n';
    }
}

}  // namespace cavswap

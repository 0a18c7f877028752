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

#include "cavswap/report_io.hpp"

#include <cstdio>
#include <ostream>

#include "cavswap/metrics.hpp"

namespace cavswap {

std::string format_number(double x) {
    if (x == 0.0) {
        return "0";  // no "-0"
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    std::string s(buf);
    // Guard against a ',' decimal separator from a non-C locale.
    for (char &c : s) {
        if (c == ',') {
            c = '.';
        }
    }
    return s;
}

void write_comment_header(std::ostream &os, const std::vector<std::string> &lines) {
    for (const auto &line : lines) {
        os << "# " << line << '\n';
    }
}

void write_protocol_csv(std::ostream &os, const ProtocolReport &report) {
    os << "pattern,probability,empirical_frequency,classification,paper_label,fidelity,concurrence,count,"
          "wilson_low,wilson_high\n";
    for (std::size_t i = 0; i < report.distribution.size(); ++i) {
        const auto &r = report.distribution[i];
        const Interval ci = wilson_interval(report.counts[i], report.accepted, 1.96);
        os << r.pattern.name() << ',' << format_number(r.probability) << ','
           << format_number(report.empirical_frequency(i)) << ',' << herald_name(r.classification) << ','
           << r.paper_label << ',' << format_number(r.fidelity_to_class) << ',' << format_number(r.concurrence)
           << ',' << report.counts[i] << ',' << format_number(ci.low) << ',' << format_number(ci.high) << '\n';
    }
}

nlohmann::json params_json(const BraggParams &p) {
    return nlohmann::json{{"g", p.g},   {"delta", p.delta}, {"l0", p.l0},
                          {"r", p.r},   {"ladder_halfwidth", p.ladder_halfwidth},
                          {"step", p.step}};
}

nlohmann::json protocol_summary_json(const ProtocolReport &report) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto &c : report.classes) {
        classes.push_back({{"class", herald_name(c.herald)},
                           {"count", c.count},
                           {"mean_fidelity", c.mean_fidelity},
                           {"mean_concurrence", c.mean_concurrence},
                           {"exact_probability", c.exact_probability},
                           {"exact_mean_fidelity", c.exact_mean_fidelity}});
    }
    std::size_t psi = 0;
    for (const auto &c : report.classes) {
        if (c.herald == Herald::PsiPlus || c.herald == Herald::PsiMinus) {
            psi += c.count;
        }
    }
    const Interval ci = wilson_interval(psi, report.shots, 1.96);
    return nlohmann::json{
        {"params", params_json(report.params)},
        {"time_scale", report.options.time_scale},
        {"detection_efficiency", report.options.detection_efficiency},
        {"amplitude_source", report.options.source == AmplitudeSource::Ladder ? "ladder" : "analytic"},
        {"interaction_time", report.interaction_time},
        {"seed", report.seed},
        {"shots", report.shots},
        {"accepted_shots", report.accepted},
        {"discarded_shots", report.discarded},
        {"success_rate", report.success_rate},
        {"success_rate_wilson_95", {ci.low, ci.high}},
        {"exact_success_probability", report.exact_success_probability},
        {"classes", classes},
        {"paper_label_mismatches", report.table_label_mismatches()},
    };
}

}  // namespace cavswap

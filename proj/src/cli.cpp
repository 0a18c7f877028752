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

#include "cavswap/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "cavswap/config.hpp"
#include "cavswap/metrics.hpp"
#include "cavswap/report_io.hpp"

namespace cavswap {

namespace {

namespace fs = std::filesystem;

struct Overrides {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> shots;
    std::optional<std::string> out;
    std::optional<double> g, delta, step, time_scale, detection_efficiency;
    std::optional<int> l0, r, ladder_halfwidth;
    std::optional<std::size_t> samples;
    std::optional<std::string> amplitude_source;
};

void add_common_options(CLI::App *sub, Overrides &o) {
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--shots", o.shots, "number of simulated shots");
    sub->add_option("--out", o.out, "output directory (config key output_dir)");
    sub->add_option("--g", o.g, "vacuum Rabi frequency in recoil units");
    sub->add_option("--delta", o.delta, "detuning in recoil units");
    sub->add_option("--l0", o.l0, "Bragg order (even, >= 2)");
    sub->add_option("--r", o.r, "odd pi-time multiplier");
    sub->add_option("--ladder_halfwidth", o.ladder_halfwidth, "momentum ladder half width L");
    sub->add_option("--step", o.step, "RK4 step (0 = automatic)");
    sub->add_option("--time_scale", o.time_scale, "interaction time in units of the pi-time");
    sub->add_option("--detection_efficiency", o.detection_efficiency, "per-atom detection efficiency");
    sub->add_option("--samples", o.samples, "time samples for entangle / oracle-compare");
    sub->add_option("--amplitude_source", o.amplitude_source, "analytic or ladder");
}

Config resolve_config(const Overrides &o) {
    Config c = o.config ? load_config(*o.config) : default_config();
    if (o.g) c.params.g = *o.g;
    if (o.delta) c.params.delta = *o.delta;
    if (o.l0) c.params.l0 = *o.l0;
    if (o.r) c.params.r = *o.r;
    if (o.ladder_halfwidth) c.explicit_halfwidth = *o.ladder_halfwidth;
    if (o.step) c.params.step = *o.step;
    if (o.seed) c.seed = *o.seed;
    if (o.shots) c.shots = *o.shots;
    if (o.out) c.output_dir = *o.out;
    if (o.time_scale) c.time_scale = *o.time_scale;
    if (o.detection_efficiency) c.detection_efficiency = *o.detection_efficiency;
    if (o.samples) c.samples = *o.samples;
    if (o.amplitude_source) {
        if (*o.amplitude_source == "analytic") {
            c.amplitude_source = AmplitudeSource::Analytic;
        } else if (*o.amplitude_source == "ladder") {
            c.amplitude_source = AmplitudeSource::Ladder;
        } else {
            throw InvalidInput("--amplitude_source must be 'analytic' or 'ladder'");
        }
    }
    c.resolve();
    return c;
}

std::vector<std::string> header_lines(const std::string &command, const Config &c) {
    return {std::string("cavswap ") + CAVSWAP_VERSION, "command: " + command, "config: " + c.to_json().dump()};
}

std::ofstream open_output(const Config &c, const std::string &name) {
    fs::create_directories(c.output_dir);
    const fs::path path = fs::path(c.output_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InvalidInput("cannot write output file '" + path.string() + "'");
    }
    f.imbue(std::locale::classic());
    return f;
}

nlohmann::json with_provenance(nlohmann::json j, const std::string &command, const Config &c) {
    j["version"] = CAVSWAP_VERSION;
    j["command"] = command;
    j["config"] = c.to_json();
    return j;
}

int cmd_entangle(const Config &c, std::ostream &out) {
    const BraggParams p1 = c.params.with_photons(1);
    const BraggParams p0 = c.params.with_photons(0);
    const double t_end = c.time_scale * pi_time(p1);
    const std::size_t steps = c.samples - 1;
    const double dt = t_end / static_cast<double>(steps);
    const auto traj1 = ladder_trajectory(p1, dt, steps);
    const auto traj0 = ladder_trajectory(p0, dt, steps);

    {
        auto f = open_output(c, "populations.csv");
        write_comment_header(f, header_lines("entangle", c));
        f << "time,analytic_n1_plus,analytic_n1_minus,oracle_n1_plus,oracle_n1_minus,oracle_n0_plus,oracle_n0_minus,"
             "oracle_n1_outside\n";
        for (std::size_t k = 0; k <= steps; ++k) {
            const double t = traj1[k].time;
            const BraggAmplitudes a = analytic_amplitudes(p1, t);
            f << format_number(t) << ',' << format_number(std::norm(a.plus)) << ','
              << format_number(std::norm(a.minus)) << ',' << format_number(traj1[k].population(0)) << ','
              << format_number(traj1[k].population(-p1.l0)) << ',' << format_number(traj0[k].population(0)) << ','
              << format_number(traj0[k].population(-p0.l0)) << ','
              << format_number(traj1[k].outside_population(p1.l0)) << '\n';
        }
    }

    const StateVector analytic = entangle_pair(c.params, t_end);
    const StateVector oracle = ladder_pair_state(c.params, t_end);
    {
        auto f = open_output(c, "pair_state.csv");
        write_comment_header(f, header_lines("entangle", c));
        f << "label,analytic_re,analytic_im,oracle_re,oracle_im\n";
        for (std::size_t i = 0; i < analytic.dim(); ++i) {
            const cplx a = analytic.amps()[static_cast<Eigen::Index>(i)];
            const cplx o = oracle.amps()[static_cast<Eigen::Index>(i)];
            f << analytic.label(i) << ',' << format_number(a.real()) << ',' << format_number(a.imag()) << ','
              << format_number(o.real()) << ',' << format_number(o.imag()) << '\n';
        }
    }

    const double deflected = traj1.back().population(-p1.l0);
    const double pair_fidelity = std::norm(analytic.inner(oracle));
    out << "interaction time: " << format_number(t_end) << '\n';
    out << "final deflected population (oracle, n=1): " << format_number(deflected) << '\n';
    out << "final deflected population (analytic, n=1): "
        << format_number(std::norm(analytic_amplitudes(p1, t_end).minus)) << '\n';
    out << "final deflected population (oracle, n=0): " << format_number(traj0.back().population(-p0.l0)) << '\n';
    out << "pair-state fidelity, analytic vs oracle: " << format_number(pair_fidelity) << '\n';
    if (traj1.back().truncation_warning) {
        out << "warning: ladder truncation boundary population " << format_number(traj1.back().boundary_population)
            << " exceeds 1e-6\n";
    }
    if (c.asserts.min_deflection && deflected < *c.asserts.min_deflection) {
        out << "ASSERTION FAILED: deflected population " << format_number(deflected) << " < min_deflection "
            << format_number(*c.asserts.min_deflection) << '\n';
        return kExitAssertionFailed;
    }
    return kExitOk;
}

int cmd_protocol(const Config &c, std::ostream &out) {
    ProtocolOptions opts;
    opts.time_scale = c.time_scale;
    opts.detection_efficiency = c.detection_efficiency;
    opts.source = c.amplitude_source;
    const ProtocolReport report = run_protocol(c.params, c.shots, c.seed, opts);
    {
        auto f = open_output(c, "protocol_report.csv");
        write_comment_header(f, header_lines("protocol", c));
        write_protocol_csv(f, report);
    }
    {
        auto f = open_output(c, "protocol_summary.json");
        f << with_provenance(protocol_summary_json(report), "protocol", c).dump(2) << '\n';
    }

    const double mean_fid = mean_psi_fidelity(report.distribution);
    out << "shots: " << report.shots << " (accepted " << report.accepted << ", discarded " << report.discarded
        << ")\n";
    out << "success rate: " << format_number(report.success_rate) << " (exact "
        << format_number(report.exact_success_probability) << ")\n";
    for (const auto &cs : report.classes) {
        out << "  " << herald_name(cs.herald) << ": count " << cs.count << ", mean fidelity "
            << format_number(cs.mean_fidelity) << ", mean concurrence " << format_number(cs.mean_concurrence)
            << '\n';
    }
    const auto mismatches = report.table_label_mismatches();
    if (!mismatches.empty()) {
        out << "note: classification differs from the original click table for:";
        for (const auto &m : mismatches) {
            out << ' ' << m;
        }
        out << " (see paper_label column)\n";
    }

    bool failed = false;
    if (c.asserts.min_success_rate && report.success_rate < *c.asserts.min_success_rate) {
        out << "ASSERTION FAILED: success rate " << format_number(report.success_rate) << " < min_success_rate "
            << format_number(*c.asserts.min_success_rate) << '\n';
        failed = true;
    }
    if (c.asserts.min_mean_fidelity && mean_fid < *c.asserts.min_mean_fidelity) {
        out << "ASSERTION FAILED: mean psi fidelity " << format_number(mean_fid) << " < min_mean_fidelity "
            << format_number(*c.asserts.min_mean_fidelity) << '\n';
        failed = true;
    }
    return failed ? kExitAssertionFailed : kExitOk;
}

int cmd_oracle_compare(const Config &c, std::ostream &out) {
    const BraggParams p1 = c.params.with_photons(1);
    const auto times = uniform_times(pendellosung_period(p1), c.samples);
    const OracleComparison cmp = oracle_compare(p1, times);
    {
        auto f = open_output(c, "oracle_compare.csv");
        write_comment_header(f, header_lines("oracle-compare", c));
        write_oracle_csv(f, cmp);
    }
    out << "max |analytic - oracle| deflection error over one period: " << format_number(cmp.max_error) << '\n';
    if (cmp.truncation_warning) {
        out << "warning: ladder truncation boundary population exceeds 1e-6\n";
    }
    if (c.asserts.max_error && !(cmp.max_error <= *c.asserts.max_error)) {
        out << "ASSERTION FAILED: max error " << format_number(cmp.max_error) << " > max_error "
            << format_number(*c.asserts.max_error) << '\n';
        return kExitAssertionFailed;
    }
    return kExitOk;
}

int cmd_sweep(const Config &c, std::ostream &out) {
    if (!c.sweep) {
        throw InvalidInput("sweep needs a 'sweep' block with 'axis' and 'values' in the config");
    }
    SweepSpec spec;
    spec.axis = axis_from_name(c.sweep->axis);
    spec.values = c.sweep->values;
    spec.base = c.params;
    spec.shots = c.shots;
    spec.seed = c.seed;
    spec.time_scale = c.time_scale;
    spec.detection_efficiency = c.detection_efficiency;
    const auto rows = run_sweep(spec);
    {
        auto f = open_output(c, "sweep.csv");
        write_comment_header(f, header_lines("sweep", c));
        write_sweep_csv(f, rows);
    }
    std::size_t failed_rows = 0;
    for (const auto &r : rows) {
        failed_rows += r.ok ? 0 : 1;
    }
    {
        nlohmann::json manifest{{"axis", axis_name(spec.axis)},
                                {"values", spec.values},
                                {"shots", spec.shots},
                                {"seed", spec.seed},
                                {"rows", rows.size()},
                                {"failed_rows", failed_rows},
                                {"outputs", {"sweep.csv"}}};
        auto f = open_output(c, "sweep_manifest.json");
        f << with_provenance(manifest, "sweep", c).dump(2) << '\n';
    }

    bool failed = false;
    for (const auto &r : rows) {
        out << axis_name(spec.axis) << " = " << format_number(r.value);
        if (!r.ok) {
            out << ": failed (" << r.error << ")\n";
            continue;
        }
        out << ": |error| " << format_number(r.abs_error) << ", success rate " << format_number(r.success_rate)
            << ", mean psi fidelity " << format_number(r.mean_psi_fidelity) << '\n';
        if (c.asserts.max_error && !(r.abs_error <= *c.asserts.max_error)) {
            out << "ASSERTION FAILED: error " << format_number(r.abs_error) << " > max_error at "
                << format_number(r.value) << '\n';
            failed = true;
        }
        if (c.asserts.min_success_rate && r.success_rate < *c.asserts.min_success_rate) {
            out << "ASSERTION FAILED: success rate below min_success_rate at " << format_number(r.value) << '\n';
            failed = true;
        }
        if (c.asserts.min_mean_fidelity && r.mean_psi_fidelity < *c.asserts.min_mean_fidelity) {
            out << "ASSERTION FAILED: mean psi fidelity below min_mean_fidelity at " << format_number(r.value) << '\n';
            failed = true;
        }
    }
    return failed ? kExitAssertionFailed : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Cavity entanglement swapping with Bragg-scattered atoms"};
    app.set_version_flag("--version", std::string(CAVSWAP_VERSION));
    app.require_subcommand(1);

    Overrides o;
    CLI::App *entangle = app.add_subcommand("entangle", "atom-cavity entanglement: closed form vs ladder oracle");
    CLI::App *protocol = app.add_subcommand("protocol", "full swap protocol with seeded shots");
    CLI::App *oracle = app.add_subcommand("oracle-compare", "closed-form vs ladder populations over one period");
    CLI::App *sweep = app.add_subcommand("sweep", "parameter sweep from the config's sweep block");
    for (CLI::App *sub : {entangle, protocol, oracle, sweep}) {
        add_common_options(sub, o);
    }

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        const Config c = resolve_config(o);
        for (const auto &w : c.params.warnings()) {
            err << "warning: " << w << '\n';
        }
        if (entangle->parsed()) return cmd_entangle(c, out);
        if (protocol->parsed()) return cmd_protocol(c, out);
        if (oracle->parsed()) return cmd_oracle_compare(c, out);
        return cmd_sweep(c, out);
    } catch (const InvalidInput &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
}

}  // namespace cavswap

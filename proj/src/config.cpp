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

#include "cavswap/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace cavswap {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw InvalidInput("unknown key '" + it.key() + "' in " + where);
        }
    }
}

template <typename T>
T get_as(const json &j, const std::string &key, const std::string &where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw InvalidInput("'" + key + "' in " + where + " is missing or has the wrong type");
    }
}

double positive_finite(const json &j, const std::string &key, const std::string &where) {
    double v = get_as<double>(j, key, where);
    if (!std::isfinite(v) || v <= 0.0) {
        throw InvalidInput("'" + key + "' in " + where + " must be positive and finite");
    }
    return v;
}

std::size_t non_negative_integer(const json &j, const std::string &key) {
    const json &v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw InvalidInput("'" + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

int integer(const json &j, const std::string &key) {
    const json &v = j.at(key);
    if (!v.is_number_integer()) {
        throw InvalidInput("'" + key + "' must be an integer");
    }
    return v.get<int>();
}

}  // namespace

Config default_config() {
    Config c;
    c.params.g = 1.0;
    c.params.delta = 100.0;
    c.params.l0 = 2;
    c.params.r = 1;
    c.params.n = 1;
    return c;
}

Config config_from_json(const json &j) {
    if (!j.is_object()) {
        throw InvalidInput("config must be a JSON object");
    }
    reject_unknown_keys(j,
                        {"physical", "dimensionless", "l0", "r", "ladder_halfwidth", "step", "shots", "seed",
                         "time_scale", "detection_efficiency", "samples", "amplitude_source", "output_dir", "sweep",
                         "assert"},
                        "config");
    Config c = default_config();

    const bool has_phys = j.contains("physical");
    const bool has_dimless = j.contains("dimensionless");
    if (has_phys == has_dimless) {
        throw InvalidInput("config must contain exactly one of 'physical' or 'dimensionless'");
    }
    if (has_dimless) {
        const json &d = j.at("dimensionless");
        if (!d.is_object()) {
            throw InvalidInput("'dimensionless' must be an object");
        }
        reject_unknown_keys(d, {"g", "delta"}, "dimensionless");
        c.params.g = get_as<double>(d, "g", "dimensionless");
        c.params.delta = get_as<double>(d, "delta", "dimensionless");
    } else {
        const json &ph = j.at("physical");
        if (!ph.is_object()) {
            throw InvalidInput("'physical' must be an object");
        }
        reject_unknown_keys(ph, {"mass_kg", "wavelength_m", "g_rad_per_s", "delta_rad_per_s"}, "physical");
        PhysicalBlock b;
        b.mass_kg = ph.contains("mass_kg") ? positive_finite(ph, "mass_kg", "physical") : kRubidium85MassKg;
        b.wavelength_m =
            ph.contains("wavelength_m") ? positive_finite(ph, "wavelength_m", "physical") : kRubidiumD2WavelengthM;
        b.g_rad_per_s = positive_finite(ph, "g_rad_per_s", "physical");
        b.delta_rad_per_s = positive_finite(ph, "delta_rad_per_s", "physical");
        c.physical = b;
        c.recoil_frequency_rad_per_s = recoil_frequency(b.mass_kg, b.wavelength_m);
        c.params.g = b.g_rad_per_s / c.recoil_frequency_rad_per_s;
        c.params.delta = b.delta_rad_per_s / c.recoil_frequency_rad_per_s;
    }

    if (j.contains("l0")) c.params.l0 = integer(j, "l0");
    if (j.contains("r")) c.params.r = integer(j, "r");
    if (j.contains("ladder_halfwidth")) c.explicit_halfwidth = integer(j, "ladder_halfwidth");
    if (j.contains("step")) c.params.step = get_as<double>(j, "step", "config");
    if (j.contains("shots")) c.shots = non_negative_integer(j, "shots");
    if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed", "config");
    if (j.contains("time_scale")) c.time_scale = get_as<double>(j, "time_scale", "config");
    if (j.contains("detection_efficiency")) c.detection_efficiency = get_as<double>(j, "detection_efficiency", "config");
    if (j.contains("samples")) c.samples = non_negative_integer(j, "samples");
    if (j.contains("output_dir")) c.output_dir = get_as<std::string>(j, "output_dir", "config");
    if (j.contains("amplitude_source")) {
        auto s = get_as<std::string>(j, "amplitude_source", "config");
        if (s == "analytic") {
            c.amplitude_source = AmplitudeSource::Analytic;
        } else if (s == "ladder") {
            c.amplitude_source = AmplitudeSource::Ladder;
        } else {
            throw InvalidInput("amplitude_source must be 'analytic' or 'ladder'");
        }
    }
    if (j.contains("sweep")) {
        const json &s = j.at("sweep");
        if (!s.is_object()) {
            throw InvalidInput("'sweep' must be an object");
        }
        reject_unknown_keys(s, {"axis", "values"}, "sweep");
        c.sweep = SweepBlock{get_as<std::string>(s, "axis", "sweep"), get_as<std::vector<double>>(s, "values", "sweep")};
    }
    if (j.contains("assert")) {
        const json &a = j.at("assert");
        if (!a.is_object()) {
            throw InvalidInput("'assert' must be an object");
        }
        reject_unknown_keys(a, {"max_error", "min_deflection", "min_success_rate", "min_mean_fidelity"}, "assert");
        auto opt = [&](const char *key) -> std::optional<double> {
            if (!a.contains(key)) return std::nullopt;
            return get_as<double>(a, key, "assert");
        };
        c.asserts.max_error = opt("max_error");
        c.asserts.min_deflection = opt("min_deflection");
        c.asserts.min_success_rate = opt("min_success_rate");
        c.asserts.min_mean_fidelity = opt("min_mean_fidelity");
    }
    return c;
}

Config load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open config file '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw InvalidInput("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

void Config::resolve() {
    params.ladder_halfwidth = explicit_halfwidth.value_or(BraggParams::default_halfwidth(params.l0));
    params.n = 1;
    params.validate();
    if (!std::isfinite(time_scale) || time_scale < 0.0) {
        throw InvalidInput("time_scale must be finite and non-negative");
    }
    if (!(detection_efficiency > 0.0 && detection_efficiency <= 1.0)) {
        throw InvalidInput("detection_efficiency must lie in (0, 1]");
    }
    if (shots == 0) {
        throw InvalidInput("shots must be positive");
    }
    if (samples < 2) {
        throw InvalidInput("samples must be at least 2");
    }
}

nlohmann::json Config::to_json() const {
    json j;
    if (physical) {
        j["physical"] = {{"mass_kg", physical->mass_kg},
                         {"wavelength_m", physical->wavelength_m},
                         {"g_rad_per_s", physical->g_rad_per_s},
                         {"delta_rad_per_s", physical->delta_rad_per_s}};
        j["resolved"] = {{"recoil_frequency_rad_per_s", recoil_frequency_rad_per_s},
                         {"g", params.g},
                         {"delta", params.delta}};
    } else {
        j["dimensionless"] = {{"g", params.g}, {"delta", params.delta}};
    }
    j["l0"] = params.l0;
    j["r"] = params.r;
    j["ladder_halfwidth"] = params.ladder_halfwidth;
    j["step"] = params.step;
    j["shots"] = shots;
    j["seed"] = seed;
    j["time_scale"] = time_scale;
    j["detection_efficiency"] = detection_efficiency;
    j["samples"] = samples;
    j["amplitude_source"] = amplitude_source == AmplitudeSource::Ladder ? "ladder" : "analytic";
    j["output_dir"] = output_dir;
    if (sweep) {
        j["sweep"] = {{"axis", sweep->axis}, {"values", sweep->values}};
    }
    json a = json::object();
    if (asserts.max_error) a["max_error"] = *asserts.max_error;
    if (asserts.min_deflection) a["min_deflection"] = *asserts.min_deflection;
    if (asserts.min_success_rate) a["min_success_rate"] = *asserts.min_success_rate;
    if (asserts.min_mean_fidelity) a["min_mean_fidelity"] = *asserts.min_mean_fidelity;
    j["assert"] = a;
    return j;
}

}  // namespace cavswap

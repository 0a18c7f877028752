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

// Run configuration shared by every CLI command.
//
// JSON layout (all keys optional unless noted):
//   {
//     "dimensionless": {"g": 1.0, "delta": 100.0},          // or
//     "physical": {"mass_kg": 1.41e-25, "wavelength_m": 7.8e-7,
//                  "g_rad_per_s": ..., "delta_rad_per_s": ...},
//     "l0": 2, "r": 1, "ladder_halfwidth": 8, "step": 0.0,
//     "shots": 10000, "seed": 1, "time_scale": 1.0,
//     "detection_efficiency": 1.0, "samples": 201,
//     "amplitude_source": "analytic" | "ladder",
//     "output_dir": "out",
//     "sweep": {"axis": "delta_over_g", "values": [10, 20, 50, 100]},
//     "assert": {"max_error": 0.02, "min_deflection": 0.95,
//                "min_success_rate": 0.49, "min_mean_fidelity": 0.99}
//   }
// Exactly one of "physical" / "dimensionless" must be present. Physical rates
// are divided by the recoil frequency once, at load time.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavswap/bragg.hpp"
#include "cavswap/swap.hpp"

namespace cavswap {

struct PhysicalBlock {
    double mass_kg = 0.0;
    double wavelength_m = 0.0;
    double g_rad_per_s = 0.0;
    double delta_rad_per_s = 0.0;
};

struct AssertBlock {
    std::optional<double> max_error;
    std::optional<double> min_deflection;
    std::optional<double> min_success_rate;
    std::optional<double> min_mean_fidelity;
};

struct SweepBlock {
    std::string axis;
    std::vector<double> values;
};

struct Config {
    std::optional<PhysicalBlock> physical;
    double recoil_frequency_rad_per_s = 0.0;  // set when physical is present

    BraggParams params;
    std::optional<int> explicit_halfwidth;
    std::size_t shots = 10000;
    std::uint64_t seed = 1;
    double time_scale = 1.0;
    double detection_efficiency = 1.0;
    std::size_t samples = 201;
    AmplitudeSource amplitude_source = AmplitudeSource::Analytic;
    std::string output_dir = "out";
    std::optional<SweepBlock> sweep;
    AssertBlock asserts;

    /// Fills derived fields (default halfwidth) and checks every invariant.
    void resolve();
    /// The fully resolved configuration, echoed into every output file.
    nlohmann::json to_json() const;
};

/// Built-in defaults: g = 1, delta = 100 (recoil units), l0 = 2, r = 1.
Config default_config();
Config config_from_json(const nlohmann::json &j);
/// Reads and parses a JSON config file; throws InvalidInput on any problem.
Config load_config(const std::string &path);

/// Rubidium-85 atomic mass in kg.
inline constexpr double kRubidium85MassKg = 1.4099934427186933e-25;
inline constexpr double kRubidiumD2WavelengthM = 780e-9;

}  // namespace cavswap

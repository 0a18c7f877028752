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

// Plain-text output shared by every command.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavswap/swap.hpp"

namespace cavswap {

/// Shortest "%.15g" rendering; '.' decimal separator regardless of locale.
std::string format_number(double x);

/// Writes each line prefixed with "# ".
void write_comment_header(std::ostream &os, const std::vector<std::string> &lines);

/// One row per click pattern:
/// pattern,probability,empirical_frequency,classification,paper_label,
/// fidelity,concurrence,count,wilson_low,wilson_high
void write_protocol_csv(std::ostream &os, const ProtocolReport &report);

nlohmann::json protocol_summary_json(const ProtocolReport &report);

nlohmann::json params_json(const BraggParams &p);

}  // namespace cavswap

// Copyright 2026 The nvgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "nvgate/circuits.hpp"
#include "nvgate/emitter.hpp"
#include "nvgate/metrics.hpp"
#include "nvgate/statevec.hpp"

namespace nvgate {

/// [{config, re, im}, ...] in configuration order, exact zeros omitted.
nlohmann::json to_json(const QuantumState& s);
/// [{tag, state, norm_sq}, ...] in trace order.
nlohmann::json to_json(const CircuitTrace& trace);
nlohmann::json to_json(const ScatteringCoefficients& c);
nlohmann::json to_json(const MetricsPoint& p);
nlohmann::json to_json(const std::vector<MetricsPoint>& points);

/// Parses "re,im" (or a bare real). Throws std::invalid_argument.
Complex parse_complex(std::string_view text);

}  // namespace nvgate

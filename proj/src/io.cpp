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

#include "nvgate/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nvgate {

nlohmann::json to_json(const QuantumState& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [cfg, amp] : s.entries()) {
    if (amp == Complex{}) continue;  // cancelled paths
    out.push_back({{"config", to_string(cfg)}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return out;
}

nlohmann::json to_json(const CircuitTrace& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [tag, state] : trace.entries()) {
    out.push_back({{"tag", tag}, {"state", to_json(state)}, {"norm_sq", norm_sq(state)}});
  }
  return out;
}

nlohmann::json to_json(const ScatteringCoefficients& c) {
  auto cx = [](Complex v) { return nlohmann::json{{"re", v.real()}, {"im", v.imag()}}; };
  return {{"r", cx(c.r)}, {"t", cx(c.t)}, {"r0", cx(c.r0)}, {"t0", cx(c.t0)}};
}

nlohmann::json to_json(const MetricsPoint& p) {
  return {{"gsq_over_kgamma", p.gsq_over_kgamma},
          {"ks_over_k", p.ks_over_k},
          {"f_toffoli", p.f_toffoli},
          {"f_fredkin", p.f_fredkin},
          {"eta_closed", p.eta_closed},
          {"eta_sim", p.eta_sim}};
}

nlohmann::json to_json(const std::vector<MetricsPoint>& points) {
  nlohmann::json out = nlohmann::json::array();
  for (const MetricsPoint& p : points) out.push_back(to_json(p));
  return out;
}

namespace {

double parse_real(std::string_view text, std::string_view whole) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("malformed complex literal '" + std::string(whole) +
                                "' (expected \"re,im\")");
  }
  return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_real(text, text), 0.0};
  if (text.find(',', comma + 1) != std::string_view::npos) {
    throw std::invalid_argument("malformed complex literal '" + std::string(text) +
                                "' (expected \"re,im\")");
  }
  return {parse_real(text.substr(0, comma), text), parse_real(text.substr(comma + 1), text)};
}

}  // namespace nvgate

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

// Prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nvgate/acceptance.hpp"

int main(int argc, char** argv) {
  namespace acc = nvgate::acceptance;
  CLI::App app{"nvgate acceptance suite"};
  std::vector<int> ids;
  acc::Options options;
  app.add_option("-c,--criterion", ids, "Criteria to run (default: all)")
      ->check(CLI::Range(1, acc::kNumCriteria));
  app.add_option("--seed", options.seed, "Seed for the random inputs");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) {
    for (int i = 1; i <= acc::kNumCriteria; ++i) ids.push_back(i);
  }

  int failed = 0;
  for (int id : ids) {
    const acc::CriterionResult r = acc::run_criterion(id, options);
    std::printf("%s  [%d] %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
    std::istringstream lines(r.detail);
    for (std::string line; std::getline(lines, line);) {
      const auto start = line.find_first_not_of(' ');
      if (start != std::string::npos) std::printf("      %s\n", line.c_str() + start);
    }
    if (!r.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : 1;
}

// Copyright 2026 The blochamp Authors
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

// Runs every acceptance criterion and prints one PASS/FAIL line each.
//
//   blochamp_acceptance [--seed N] [--known-failure ID]...
//
// Criteria listed with --known-failure are still run and reported; the exit
// code is 0 only if every other criterion passes and each listed one fails.

#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "blochamp/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"blochamp acceptance criteria"};
  std::uint64_t seed = blochamp::acceptance::kDefaultSeed;
  std::vector<int> known;
  app.add_option("--seed", seed, "Seed for random initial states");
  app.add_option("--known-failure", known, "Criterion expected to fail");
  CLI11_PARSE(app, argc, argv);

  std::vector<blochamp::acceptance::CriterionResult> results;
  blochamp::acceptance::run_suite(blochamp::acceptance::full_suite(seed), std::cout,
                                  &results);
  const std::set<int> expected(known.begin(), known.end());
  int unexpected = 0;
  for (const auto& r : results) {
    const bool listed = expected.count(r.id) > 0;
    if (r.passed && listed) {
      std::cout << "UNEXPECTED PASS [" << r.id << "]\n";
      ++unexpected;
    } else if (!r.passed && !listed) {
      ++unexpected;
    } else if (!r.passed) {
      std::cout << "known failure [" << r.id << "]\n";
    }
  }
  return unexpected == 0 ? 0 : 1;
}

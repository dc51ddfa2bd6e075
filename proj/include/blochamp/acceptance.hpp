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

#pragma once

// End-to-end checks of every gate model against closed-form and independent
// numerical oracles. Shared by `blochamp verify` and the acceptance test.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace blochamp::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 when the criterion has no runtime bound
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;
  std::function<CriterionResult()> run;
};

/// Seed for the random initial states used by the property criteria.
inline constexpr std::uint64_t kDefaultSeed = 20230922;

std::vector<Criterion> full_suite(std::uint64_t seed = kDefaultSeed);

/// Runs one criterion, timing it and turning exceptions into failures.
CriterionResult run_criterion(const Criterion& c);

/// Runs everything and prints one PASS/FAIL line per criterion. Returns true
/// when all criteria pass.
bool run_suite(const std::vector<Criterion>& suite, std::ostream& out,
               std::vector<CriterionResult>* results = nullptr);

}  // namespace blochamp::acceptance

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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace blochamp {

/// Entry point of the `blochamp` tool. Returns the process exit code: 0 on
/// success, 1 when `verify` finds a failing criterion, 2 on any error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

/// Convenience overload; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// Writes JSON with every floating-point number at 17 significant digits.
void write_json(std::ostream& out, const nlohmann::json& j, int indent = 2);

}  // namespace blochamp

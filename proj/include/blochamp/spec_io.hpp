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

// JSON channel spec files.
//
// Explicit form:
//   {"ell": [l0, l1, l2, l3],
//    "jumps": [{"xi_re": [4 reals], "xi_im": [4 reals], "zeta": 1}],
//    "g": 0.0, "h": [hx, hy, hz], "name": "optional label"}
// Preset form:
//   {"preset": "threejump_nino", "params": {"M": 1.0, "gamma": 0.5}}

#include <json.hpp>

#include <string>

#include "blochamp/channel.hpp"

namespace blochamp {

nlohmann::json spec_to_json(const ChannelSpec& spec);

/// Accepts either form. Throws ParseError on malformed input and the usual
/// InvalidParams from preset expansion or jump validation.
ChannelSpec spec_from_json(const nlohmann::json& j);

ChannelSpec read_spec_file(const std::string& path);
void write_spec_file(const std::string& path, const ChannelSpec& spec);

}  // namespace blochamp

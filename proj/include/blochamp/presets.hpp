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

#include <map>
#include <string>
#include <vector>

#include "blochamp/channel.hpp"

namespace blochamp {

// The four jump operators used by the amplification gates, with the rate
// constant m folded in.

/// B_0 = m (sigma^2 + i sigma^3).
PauliVectorC jump_b0(double m);
/// B_1 = m (sigma^1 + sigma^2).
PauliVectorC jump_b1(double m);
/// B_2 = m (I + sigma^3).
PauliVectorC jump_b2(double m);
/// B_3 = m sigma^3.
PauliVectorC jump_b3(double m);

enum class PresetName {
  kLinearCptp,
  kNoJumpNino,
  kOneJumpNino,
  kPseudoLinearNino,
  kThreeJumpNino,
  kLinearNonCp,
};

/// A named model plus its parameters. Recognised keys are `m` (linear_cptp,
/// onejump_nino, pseudolinear_nino), `l0`/`l1` (nojump_nino) and `M`/`gamma`
/// (threejump_nino, linear_noncp). Missing keys take the defaults
/// m = 1, l0 = 0, l1 = 1, M = 1, gamma = 0.5.
struct Preset {
  PresetName name;
  std::map<std::string, double> params;
};

const std::vector<PresetName>& all_presets();
std::string to_string(PresetName name);
/// Throws ParseError for unknown names.
PresetName parse_preset_name(const std::string& name);

/// Parameter keys accepted by a preset.
std::vector<std::string> preset_param_keys(PresetName name);

/// Builds the channel. Throws InvalidParams for unknown keys or violated
/// ranges (M >= gamma/2 >= 0 for the three-jump family).
ChannelSpec expand_preset(const Preset& preset);

// Convenience builders.
ChannelSpec linear_cptp(double m);
ChannelSpec nojump_nino(double l0, double l1);
ChannelSpec onejump_nino(double m);
ChannelSpec pseudolinear_nino(double m);
ChannelSpec threejump_nino(double big_m, double gamma);
ChannelSpec linear_noncp(double big_m, double gamma);

}  // namespace blochamp

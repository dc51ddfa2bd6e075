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

#include "blochamp/presets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blochamp/errors.hpp"

namespace blochamp {

namespace {

const Complex kI(0.0, 1.0);

PauliVectorC make_xi(Complex a, Complex b, Complex c, Complex d) {
  PauliVectorC v;
  v.xi << a, b, c, d;
  return v;
}

HermitianPauliVector make_ell(double l0, double l1, double l2, double l3) {
  HermitianPauliVector v;
  v.ell << l0, l1, l2, l3;
  return v;
}

void require_finite(const std::string& key, double v) {
  if (!std::isfinite(v)) throw InvalidParams(key + " must be finite");
}

void check_three_jump(double big_m, double gamma) {
  require_finite("M", big_m);
  require_finite("gamma", gamma);
  if (gamma < 0.0) {
    std::ostringstream os;
    os << "gamma/2 >= 0 violated (gamma = " << gamma << ")";
    throw InvalidParams(os.str());
  }
  if (big_m < gamma / 2.0) {
    std::ostringstream os;
    os << "M >= gamma/2 violated (M = " << big_m << ", gamma/2 = "
       << gamma / 2.0 << ")";
    throw InvalidParams(os.str());
  }
}

// Jumps B_1, B_2 with zeta = +1 at strength sqrt(M/2) and B_3 with zeta = -1
// at strength sqrt(M - gamma/2). Zero-strength terms are dropped.
std::vector<JumpTerm> three_jumps(double big_m, double gamma) {
  std::vector<JumpTerm> jumps;
  const double m12 = std::sqrt(big_m / 2.0);
  const double m3 = std::sqrt(big_m - gamma / 2.0);
  if (m12 > 0.0) {
    jumps.emplace_back(jump_b1(m12), +1);
    jumps.emplace_back(jump_b2(m12), +1);
  }
  if (m3 > 0.0) jumps.emplace_back(jump_b3(m3), -1);
  return jumps;
}

}  // namespace

PauliVectorC jump_b0(double m) { return make_xi(0, 0, m, kI * m); }
PauliVectorC jump_b1(double m) { return make_xi(0, m, m, 0); }
PauliVectorC jump_b2(double m) { return make_xi(m, 0, 0, m); }
PauliVectorC jump_b3(double m) { return make_xi(0, 0, 0, m); }

ChannelSpec linear_cptp(double m) {
  require_finite("m", m);
  if (m == 0.0) throw InvalidParams("m != 0 required");
  ChannelSpec s;
  s.ell = make_ell(-m * m, m * m, 0, 0);
  s.jumps.emplace_back(jump_b0(m), +1);
  s.g = 0.0;
  s.name = "linear_cptp";
  return s;
}

ChannelSpec nojump_nino(double l0, double l1) {
  require_finite("l0", l0);
  require_finite("l1", l1);
  ChannelSpec s;
  s.ell = make_ell(l0, l1, 0, 0);
  s.g = 1.0;
  s.name = "nojump_nino";
  return s;
}

ChannelSpec onejump_nino(double m) {
  require_finite("m", m);
  if (m == 0.0) throw InvalidParams("m != 0 required");
  ChannelSpec s;
  s.jumps.emplace_back(jump_b0(m), +1);
  s.g = 1.0;
  s.name = "onejump_nino";
  return s;
}

ChannelSpec pseudolinear_nino(double m) {
  require_finite("m", m);
  if (m == 0.0) throw InvalidParams("m != 0 required");
  ChannelSpec s;
  s.ell = make_ell(0, m * m, 0, 0);
  s.jumps.emplace_back(jump_b0(m), +1);
  s.g = 1.0;
  s.name = "pseudolinear_nino";
  return s;
}

ChannelSpec threejump_nino(double big_m, double gamma) {
  check_three_jump(big_m, gamma);
  ChannelSpec s;
  s.ell = make_ell(0, 0, 0, -big_m / 2.0);
  s.jumps = three_jumps(big_m, gamma);
  s.g = 1.0;
  s.name = "threejump_nino";
  return s;
}

ChannelSpec linear_noncp(double big_m, double gamma) {
  check_three_jump(big_m, gamma);
  ChannelSpec s;
  s.ell = make_ell(-(big_m + gamma / 2.0) / 2.0, 0, 0, -big_m / 2.0);
  s.jumps = three_jumps(big_m, gamma);
  s.g = 0.0;
  s.name = "linear_noncp";
  return s;
}

const std::vector<PresetName>& all_presets() {
  static const std::vector<PresetName> names = {
      PresetName::kLinearCptp,       PresetName::kNoJumpNino,
      PresetName::kOneJumpNino,      PresetName::kPseudoLinearNino,
      PresetName::kThreeJumpNino,    PresetName::kLinearNonCp,
  };
  return names;
}

std::string to_string(PresetName name) {
  switch (name) {
    case PresetName::kLinearCptp:
      return "linear_cptp";
    case PresetName::kNoJumpNino:
      return "nojump_nino";
    case PresetName::kOneJumpNino:
      return "onejump_nino";
    case PresetName::kPseudoLinearNino:
      return "pseudolinear_nino";
    case PresetName::kThreeJumpNino:
      return "threejump_nino";
    case PresetName::kLinearNonCp:
      return "linear_noncp";
  }
  return "unknown";
}

PresetName parse_preset_name(const std::string& name) {
  for (PresetName p : all_presets()) {
    if (to_string(p) == name) return p;
  }
  throw ParseError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_param_keys(PresetName name) {
  switch (name) {
    case PresetName::kLinearCptp:
    case PresetName::kOneJumpNino:
    case PresetName::kPseudoLinearNino:
      return {"m"};
    case PresetName::kNoJumpNino:
      return {"l0", "l1"};
    case PresetName::kThreeJumpNino:
    case PresetName::kLinearNonCp:
      return {"M", "gamma"};
  }
  return {};
}

ChannelSpec expand_preset(const Preset& preset) {
  const auto keys = preset_param_keys(preset.name);
  for (const auto& [key, value] : preset.params) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InvalidParams("preset " + to_string(preset.name) +
                          " does not take parameter '" + key + "'");
    }
  }
  const auto get = [&](const std::string& key, double fallback) {
    auto it = preset.params.find(key);
    return it == preset.params.end() ? fallback : it->second;
  };
  switch (preset.name) {
    case PresetName::kLinearCptp:
      return linear_cptp(get("m", 1.0));
    case PresetName::kNoJumpNino:
      return nojump_nino(get("l0", 0.0), get("l1", 1.0));
    case PresetName::kOneJumpNino:
      return onejump_nino(get("m", 1.0));
    case PresetName::kPseudoLinearNino:
      return pseudolinear_nino(get("m", 1.0));
    case PresetName::kThreeJumpNino:
      return threejump_nino(get("M", 1.0), get("gamma", 0.5));
    case PresetName::kLinearNonCp:
      return linear_noncp(get("M", 1.0), get("gamma", 0.5));
  }
  throw InvalidParams("unhandled preset");
}

}  // namespace blochamp

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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "blochamp/channel.hpp"
#include "blochamp/errors.hpp"
#include "blochamp/presets.hpp"
#include "blochamp/spec_io.hpp"

using namespace blochamp;
using doctest::Approx;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("blochamp_" + name)).string();
}

std::string error_of(const Preset& p) {
  try {
    expand_preset(p);
  } catch (const InvalidParams& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("linear CPTP preset") {
  const ChannelSpec s = expand_preset({PresetName::kLinearCptp, {{"m", 1.0}}});
  REQUIRE(s.jumps.size() == 1);
  CHECK(s.jumps[0] == JumpTerm(jump_b0(1.0), 1));
  CHECK((s.ell.ell - Vec4(-1, 1, 0, 0)).norm() == 0.0);
  CHECK(s.g == 0.0);
  CHECK(s == linear_cptp(1.0));
}

TEST_CASE("linear non-CP and three-jump presets") {
  const double big_m = 1.0, gamma = 0.5;
  const ChannelSpec s = linear_noncp(big_m, gamma);
  CHECK((s.ell.ell - Vec4(-(big_m + gamma / 2) / 2, 0, 0, -big_m / 2)).norm() <= 1e-15);
  REQUIRE(s.jumps.size() == 3);
  CHECK(s.jumps[0].zeta() == 1);
  CHECK(s.jumps[1].zeta() == 1);
  CHECK(s.jumps[2].zeta() == -1);
  CHECK(s.g == 0.0);
  CHECK(s.jumps[0] == JumpTerm(jump_b1(std::sqrt(big_m / 2)), 1));
  CHECK(s.jumps[1] == JumpTerm(jump_b2(std::sqrt(big_m / 2)), 1));
  CHECK(s.jumps[2] == JumpTerm(jump_b3(std::sqrt(big_m - gamma / 2)), -1));

  const ChannelSpec t = threejump_nino(big_m, gamma);
  CHECK(t.jumps == s.jumps);
  CHECK((t.ell.ell - Vec4(0, 0, 0, -big_m / 2)).norm() == 0.0);
  CHECK(t.g == 1.0);

  CHECK(threejump_nino(1.0, 2.0).jumps.size() == 2);
}

TEST_CASE("preset parameter validation names the inequality") {
  CHECK(error_of({PresetName::kThreeJumpNino, {{"M", 1.0}, {"gamma", 2.5}}})
            .find("M >= gamma/2") != std::string::npos);
  CHECK(error_of({PresetName::kLinearNonCp, {{"M", 1.0}, {"gamma", -0.5}}})
            .find("gamma/2 >= 0") != std::string::npos);
  CHECK_THROWS_AS(expand_preset({PresetName::kLinearCptp, {{"M", 1.0}}}), InvalidParams);
  CHECK_THROWS_AS(expand_preset({PresetName::kOneJumpNino, {{"m", 0.0}}}), InvalidParams);
  CHECK_THROWS_AS(parse_preset_name("fourjump_nino"), ParseError);
}

TEST_CASE("every preset has its documented parameters and defaults") {
  CHECK(all_presets().size() == 6);
  for (PresetName p : all_presets()) {
    CHECK(parse_preset_name(to_string(p)) == p);
    const ChannelSpec s = expand_preset({p, {}});
    CHECK(s.name == to_string(p));
    CHECK_NOTHROW(classify(s));
  }
  CHECK(expand_preset({PresetName::kThreeJumpNino, {}}) == threejump_nino(1.0, 0.5));
  CHECK(expand_preset({PresetName::kNoJumpNino, {}}) == nojump_nino(0.0, 1.0));
}

TEST_CASE("preset to spec file to parsed spec is identical") {
  const std::string path = temp_path("roundtrip.json");
  for (PresetName p : all_presets()) {
    for (double v : {0.3, 1.0, 1.7}) {
      Preset preset{p, {}};
      for (const auto& key : preset_param_keys(p)) preset.params[key] = v;
      if (p == PresetName::kThreeJumpNino || p == PresetName::kLinearNonCp) {
        preset.params["gamma"] = v / 3;
      }
      const ChannelSpec spec = expand_preset(preset);
      write_spec_file(path, spec);
      CHECK(read_spec_file(path) == spec);
    }
  }
  std::filesystem::remove(path);
}

TEST_CASE("spec JSON forms") {
  const ChannelSpec from_preset =
      spec_from_json(json{{"preset", "linear_noncp"}, {"params", {{"M", 2.0}, {"gamma", 1.0}}}});
  CHECK(from_preset == linear_noncp(2.0, 1.0));

  const json explicit_spec = json::parse(R"({
    "ell": [-1, 1, 0, 0],
    "jumps": [{"xi_re": [0, 0, 1, 0], "xi_im": [0, 0, 0, 1], "zeta": 1}],
    "g": 0,
    "h": [0, 0, 0]
  })");
  ChannelSpec s = spec_from_json(explicit_spec);
  s.name = "linear_cptp";
  CHECK(s == linear_cptp(1.0));
}

TEST_CASE("malformed spec input") {
  CHECK_THROWS_AS(spec_from_json(json::array()), ParseError);
  CHECK_THROWS_AS(spec_from_json(json{{"ell", {1, 2, 3}}}), ParseError);
  CHECK_THROWS_AS(spec_from_json(json{{"ell", {0, 0, 0, "x"}}}), ParseError);
  CHECK_THROWS_AS(spec_from_json(json::parse(
                      R"({"ell":[0,0,0,0],"jumps":[{"xi_re":[1,0,0,0],"zeta":0.5}]})")),
                  ParseError);
  CHECK_THROWS_AS(spec_from_json(json::parse(
                      R"({"ell":[0,0,0,0],"jumps":[{"xi_re":[1,0,0,0],"zeta":3}]})")),
                  InvalidParams);
  CHECK_THROWS_AS(spec_from_json(json{{"preset", "nope"}}), ParseError);
  CHECK_THROWS_AS(read_spec_file(temp_path("does_not_exist.json")), ParseError);

  const std::string path = temp_path("broken.json");
  std::ofstream(path) << "{ \"ell\": [0, 0";
  CHECK_THROWS_AS(read_spec_file(path), ParseError);
  std::filesystem::remove(path);
}

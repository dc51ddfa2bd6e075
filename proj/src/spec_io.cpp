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

#include "blochamp/spec_io.hpp"

#include <fstream>
#include <vector>

#include "blochamp/errors.hpp"
#include "blochamp/presets.hpp"

namespace blochamp {

using nlohmann::json;

namespace {

std::vector<double> real_array(const json& j, const char* key,
                               std::size_t size) {
  if (!j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != size) {
    throw ParseError(std::string("field '") + key + "' must be an array of " +
                     std::to_string(size) + " numbers");
  }
  std::vector<double> out;
  for (const auto& v : a) {
    if (!v.is_number()) {
      throw ParseError(std::string("field '") + key + "' must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

json spec_to_json(const ChannelSpec& spec) {
  json j;
  j["ell"] = {spec.ell.ell[0], spec.ell.ell[1], spec.ell.ell[2],
              spec.ell.ell[3]};
  j["jumps"] = json::array();
  for (const auto& jump : spec.jumps) {
    const Vec4c& xi = jump.b().xi;
    json jj;
    jj["xi_re"] = {xi[0].real(), xi[1].real(), xi[2].real(), xi[3].real()};
    jj["xi_im"] = {xi[0].imag(), xi[1].imag(), xi[2].imag(), xi[3].imag()};
    jj["zeta"] = jump.zeta();
    j["jumps"].push_back(jj);
  }
  j["g"] = spec.g;
  j["h"] = {spec.h[0], spec.h[1], spec.h[2]};
  if (!spec.name.empty()) j["name"] = spec.name;
  return j;
}

ChannelSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("spec must be a JSON object");

  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) {
      throw ParseError("field 'preset' must be a string");
    }
    Preset p{parse_preset_name(j.at("preset").get<std::string>()), {}};
    if (j.contains("params")) {
      const json& params = j.at("params");
      if (!params.is_object()) throw ParseError("'params' must be an object");
      for (const auto& [key, value] : params.items()) {
        if (!value.is_number()) {
          throw ParseError("preset parameter '" + key + "' must be a number");
        }
        p.params[key] = value.get<double>();
      }
    }
    return expand_preset(p);
  }

  ChannelSpec spec;
  const auto ell = real_array(j, "ell", 4);
  for (int i = 0; i < 4; ++i) spec.ell.ell[i] = ell[i];

  if (j.contains("jumps")) {
    if (!j.at("jumps").is_array()) throw ParseError("'jumps' must be an array");
    for (const auto& jj : j.at("jumps")) {
      if (!jj.is_object()) throw ParseError("jump entries must be objects");
      const auto re = real_array(jj, "xi_re", 4);
      const auto im = jj.contains("xi_im") ? real_array(jj, "xi_im", 4)
                                           : std::vector<double>(4, 0.0);
      if (!jj.contains("zeta") || !jj.at("zeta").is_number_integer()) {
        throw ParseError("jump 'zeta' must be the integer +1 or -1");
      }
      PauliVectorC xi;
      for (int i = 0; i < 4; ++i) xi.xi[i] = Complex(re[i], im[i]);
      spec.jumps.emplace_back(xi, jj.at("zeta").get<int>());
    }
  }
  if (j.contains("g")) {
    if (!j.at("g").is_number()) throw ParseError("'g' must be a number");
    spec.g = j.at("g").get<double>();
  }
  if (j.contains("h")) {
    const auto h = real_array(j, "h", 3);
    spec.h = Vec3(h[0], h[1], h[2]);
  }
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw ParseError("'name' must be a string");
    spec.name = j.at("name").get<std::string>();
  }
  return spec;
}

ChannelSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("spec file '" + path + "': " + e.what());
  }
  return spec_from_json(j);
}

void write_spec_file(const std::string& path, const ChannelSpec& spec) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write spec file '" + path + "'");
  out << spec_to_json(spec).dump(2) << '\n';
}

}  // namespace blochamp

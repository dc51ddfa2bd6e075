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

#include "blochamp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "blochamp/acceptance.hpp"
#include "blochamp/analysis.hpp"
#include "blochamp/channel.hpp"
#include "blochamp/dynamics.hpp"
#include "blochamp/errors.hpp"
#include "blochamp/presets.hpp"
#include "blochamp/spec_io.hpp"

namespace blochamp {

using nlohmann::json;

namespace {

std::string num17(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json_rec(std::ostream& out, const json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent > 0) out << '\n' << std::string(static_cast<std::size_t>(d * indent), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ',';
        first = false;
        pad(depth + 1);
        out << json(key).dump() << (indent > 0 ? ": " : ":");
        write_json_rec(out, value, indent, depth + 1);
      }
      pad(depth);
      out << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out << ',';
        pad(depth + 1);
        write_json_rec(out, j[i], indent, depth + 1);
      }
      pad(depth);
      out << ']';
      return;
    }
    case json::value_t::number_float:
      out << num17(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

json vec_json(const Vec3& v) { return {v[0], v[1], v[2]}; }

json eig_json(const std::array<Complex, 3>& e) {
  json a = json::array();
  for (const auto& z : e) a.push_back({{"re", z.real()}, {"im", z.imag()}});
  return a;
}

json mat_json(const Mat3& m) {
  json a = json::array();
  for (int i = 0; i < 3; ++i) a.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return a;
}

// Channel selection shared by the analysis subcommands.
struct ChannelOptions {
  std::string preset;
  std::string spec_file;
  std::map<std::string, double> values;
  std::map<std::string, CLI::Option*> flags;

  void attach(CLI::App* app) {
    auto* p = app->add_option("--preset", preset, "Preset model name");
    auto* s = app->add_option("--spec", spec_file, "Channel spec JSON file")
                  ->check(CLI::ExistingFile);
    p->excludes(s);
    for (const char* key : {"m", "l0", "l1", "M", "gamma"}) {
      values[key] = 0.0;
      flags[key] = app->add_option(std::string("--") + key, values[key],
                                   std::string("Preset parameter ") + key);
    }
  }

  ChannelSpec build(const std::map<std::string, double>& overrides = {}) const {
    if (!spec_file.empty()) {
      if (!overrides.empty()) throw InvalidParams("sweeps need --preset");
      for (const auto& [key, opt] : flags) {
        if (opt->count() > 0) {
          throw InvalidParams("--" + key + " applies to presets, not to --spec");
        }
      }
      return read_spec_file(spec_file);
    }
    if (preset.empty()) throw InvalidParams("one of --preset or --spec is required");
    Preset p{parse_preset_name(preset), {}};
    for (const auto& [key, opt] : flags) {
      if (opt->count() == 0) continue;
      const auto keys = preset_param_keys(p.name);
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw InvalidParams("preset " + preset + " takes no parameter --" + key);
      }
      p.params[key] = values.at(key);
    }
    for (const auto& [key, v] : overrides) p.params[key] = v;
    return expand_preset(p);
  }
};

struct InitialOptions {
  double tau0 = 1.0;
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--tau0", tau0, "Initial trace")->capture_default_str();
    app->add_option("--x0", x0, "Initial Bloch x")->capture_default_str();
    app->add_option("--y0", y0, "Initial Bloch y")->capture_default_str();
    app->add_option("--z0", z0, "Initial Bloch z")->capture_default_str();
  }
  PsdState state() const { return PsdState(tau0, Vec3(x0, y0, z0)); }
};

struct SolverOptions {
  std::string method = "rk45";
  IntegratorOpts opts;

  void attach(CLI::App* app) {
    app->add_option("--method", method, "rk45 (adaptive) or rk4 (fixed step)")
        ->check(CLI::IsMember({"rk45", "rk4"}))
        ->capture_default_str();
    app->add_option("--dt", opts.dt, "Step size for rk4, first trial step for rk45");
    app->add_option("--rtol", opts.rtol, "Relative tolerance")->capture_default_str();
    app->add_option("--atol", opts.atol, "Absolute tolerance")->capture_default_str();
    app->add_option("--sample-dt", opts.output_interval,
                    "Record only multiples of this interval");
    app->add_option("--stop-radius", opts.stop_radius,
                    "Stop when |r|/tau reaches this value");
    app->add_flag("--allow-off-cone", opts.allow_off_cone,
                  "Do not abort when the state leaves the PSD cone");
  }

  IntegratorOpts build() const {
    IntegratorOpts o = opts;
    o.method = method == "rk4" ? Method::kRk4Fixed : Method::kRk45Adaptive;
    if (o.method == Method::kRk4Fixed && o.dt <= 0.0) {
      throw InvalidParams("--method rk4 needs --dt > 0");
    }
    return o;
  }
};

Vec3 to_vec3(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 3) throw InvalidParams(what + " needs exactly 3 components");
  return Vec3(v[0], v[1], v[2]);
}

json classification_json(const ChannelSpec& spec) {
  const Classification c = classify(spec);
  json j{{"class", to_string(c.channel_class)},
         {"cp", c.cp},
         {"linear", c.linear},
         {"unital", c.unital},
         {"trace_conservation", to_string(c.trace)},
         {"trace_plane", c.trace_plane}};
  if (!c.linear) {
    j["pseudo_linear"] = c.pseudo_linear;
    if (c.pseudo_linear) j["kappa"] = c.kappa;
  }
  return j;
}

json fixed_points_json(const ChannelSpec& spec) {
  const FixedPointReport rep = find_fixed_points(spec);
  json points = json::array();
  for (const auto& p : rep.points) {
    points.push_back({{"r", vec_json(p.r)},
                      {"eigenvalues", eig_json(p.eigenvalues)},
                      {"stability", to_string(p.stability)},
                      {"residual", p.residual}});
  }
  json lines = json::array();
  for (const auto& l : rep.fixed_lines) {
    json dirs = json::array();
    for (const auto& d : l.directions) dirs.push_back(vec_json(d));
    lines.push_back({{"point", vec_json(l.point)},
                     {"directions", dirs},
                     {"eigenvalues", eig_json(l.eigenvalues)},
                     {"stability", to_string(l.stability)}});
  }
  return {{"channel", spec.name},
          {"classification", classification_json(spec)},
          {"tau", rep.tau},
          {"restricted_to_plane", rep.restricted_to_plane},
          {"fixed_points", points},
          {"fixed_lines", lines}};
}

json choi_json(const ChannelSpec& spec, double t) {
  const auto e = choi_spectrum(spec, t);
  return {{"channel", spec.name},
          {"t", t},
          {"eigenvalues", {e[0], e[1], e[2], e[3]}},
          {"min_eigenvalue", e[0]},
          {"negative", e[0] < 0.0}};
}

json gate_plan_json(const GatePlan& plan) {
  json j{{"target_purity", plan.target_purity},
         {"target_radius", plan.target_radius},
         {"direction", vec_json(plan.direction)},
         {"t_gate", plan.t_gate},
         {"t_gate_closed_form", plan.t_gate_closed_form}};
  double total = plan.main.duration;
  if (plan.pre_amp) {
    j["epsilon"] = plan.epsilon;
    j["pre_amplification"] = {{"channel", plan.pre_amp->spec.name},
                              {"duration", plan.pre_amp->duration},
                              {"spec", spec_to_json(plan.pre_amp->spec)}};
    total += plan.pre_amp->duration;
  } else {
    j["pre_amplification"] = nullptr;
  }
  j["main"] = {{"channel", plan.main.spec.name},
               {"duration", plan.main.duration},
               {"spec", spec_to_json(plan.main.spec)}};
  j["total_time"] = total;
  j["achieved"] = {{"tau", plan.achieved.tau()},
                   {"r", vec_json(plan.achieved.r())},
                   {"purity", purity_entropy(plan.achieved).purity}};
  return j;
}

struct SweepRow {
  double value;
  std::vector<std::pair<std::string, double>> observables;
};

SweepRow sweep_point(const ChannelOptions& base, const std::string& param, double value,
                     double t, const PsdState& init, const IntegratorOpts& opts) {
  const ChannelSpec spec = base.build({{param, value}});
  SweepRow row{value, {}};
  const Trajectory traj = integrate(spec, init, t, opts);
  const PsdState& end = traj.back().state;
  row.observables.emplace_back("tau", end.tau());
  row.observables.emplace_back("bloch_length", end.bloch_length());
  row.observables.emplace_back("purity", traj.back().monitors.purity);
  const auto eig = eigenvalues(bloch_jacobian(spec, analysis_plane(spec), Vec3::Zero()));
  double max_re = eig[0].real();
  for (const auto& z : eig) max_re = std::max(max_re, z.real());
  row.observables.emplace_back("max_re_eigenvalue_origin", max_re);
  if (spec.g == 0.0) row.observables.emplace_back("choi_min", choi_spectrum(spec, t)[0]);
  return row;
}

}  // namespace

void write_json(std::ostream& out, const json& j, int indent) {
  write_json_rec(out, j, indent, 0);
  out << '\n';
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bloch-vector amplification channels on the qubit PSD cone", "blochamp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Integrate a channel, write a CSV trajectory");
  ChannelOptions sim_ch;
  InitialOptions sim_init;
  SolverOptions sim_solver;
  double sim_t = 0.0;
  std::string sim_out = "-";
  sim_ch.attach(sim);
  sim_init.attach(sim);
  sim_solver.attach(sim);
  sim->add_option("--t", sim_t, "Final time")->required();
  sim->add_option("--out", sim_out, "Output CSV path ('-' for stdout)")->capture_default_str();

  // fixed-points
  auto* fp = app.add_subcommand("fixed-points", "Fixed points and their stability");
  ChannelOptions fp_ch;
  fp_ch.attach(fp);

  // stability
  auto* st = app.add_subcommand("stability", "Jacobian spectrum at a Bloch point");
  ChannelOptions st_ch;
  std::vector<double> st_point{0.0, 0.0, 0.0};
  st_ch.attach(st);
  st->add_option("--point", st_point, "Bloch vector x y z")->expected(3);

  // slowdown
  auto* sd = app.add_subcommand("slowdown", "Power law of the approach to a fixed point");
  ChannelOptions sd_ch;
  std::vector<double> sd_fp;
  std::vector<double> sd_dir;
  sd_ch.attach(sd);
  sd->add_option("--fixed-point", sd_fp, "Fixed point x y z")->expected(3)->required();
  sd->add_option("--direction", sd_dir,
                 "Approach from fp - delta * direction (default fp/|fp|)")
      ->expected(3);

  // choi
  auto* ch = app.add_subcommand("choi", "Choi-matrix spectrum of a linear channel at time t");
  ChannelOptions ch_ch;
  double ch_t = 0.0;
  ch_ch.attach(ch);
  ch->add_option("--t", ch_t, "Time")->required();

  // gate-plan
  auto* gp = app.add_subcommand("gate-plan", "Schedule an amplification gate from I/2");
  std::string gp_kind = "three_jump";
  GateParams gp_params;
  double gp_purity = 0.5 * (1.0 + 0.99 * 0.99);
  double gp_eps = 1e-3;
  PlanOptions gp_opts;
  gp->add_option("--gate", gp_kind, "linear_cptp, one_jump, three_jump or linear_non_cp")
      ->check(CLI::IsMember({"linear_cptp", "one_jump", "three_jump", "linear_non_cp"}))
      ->capture_default_str();
  gp->add_option("--m", gp_params.m, "Jump strength m")->capture_default_str();
  gp->add_option("--M", gp_params.big_m, "Amplification rate M")->capture_default_str();
  gp->add_option("--gamma", gp_params.gamma, "Damping rate gamma")->capture_default_str();
  gp->add_option("--purity", gp_purity, "Target purity in (0.5, 1)")->capture_default_str();
  gp->add_option("--epsilon", gp_eps, "Pre-amplified x for two-stage gates")
      ->capture_default_str();
  gp->add_option("--pre-amp-m", gp_opts.pre_amp_m, "m of the pre-amplification stage")
      ->capture_default_str();
  gp->add_option("--t-max", gp_opts.t_max, "Longest main stage allowed")
      ->capture_default_str();

  // sweep
  auto* sw = app.add_subcommand("sweep", "Scan one preset parameter, CSV observables");
  ChannelOptions sw_ch;
  InitialOptions sw_init;
  SolverOptions sw_solver;
  std::string sw_param;
  double sw_from = 0.0, sw_to = 1.0, sw_t = 1.0;
  int sw_steps = 11;
  unsigned sw_threads = std::max(1u, std::thread::hardware_concurrency());
  std::string sw_out = "-";
  sw_ch.attach(sw);
  sw_init.attach(sw);
  sw_solver.attach(sw);
  sw->add_option("--param", sw_param, "Parameter to scan (m, l0, l1, M, gamma)")
      ->required()
      ->check(CLI::IsMember({"m", "l0", "l1", "M", "gamma"}));
  sw->add_option("--from", sw_from, "First value")->capture_default_str();
  sw->add_option("--to", sw_to, "Last value")->capture_default_str();
  sw->add_option("--steps", sw_steps, "Number of values")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sw->add_option("--t", sw_t, "Integration time per point")->capture_default_str();
  sw->add_option("--threads", sw_threads, "Worker threads")->check(CLI::PositiveNumber);
  sw->add_option("--out", sw_out, "Output CSV path ('-' for stdout)")->capture_default_str();

  // verify
  auto* vf = app.add_subcommand("verify", "Run the acceptance suite");
  std::string vf_suite = "paper";
  std::uint64_t vf_seed = acceptance::kDefaultSeed;
  vf->add_option("--suite", vf_suite, "Suite name")
      ->check(CLI::IsMember({"paper"}))
      ->capture_default_str();
  vf->add_option("--seed", vf_seed, "Seed for random initial states")->capture_default_str();

  // export-spec
  auto* ex = app.add_subcommand("export-spec", "Write the expanded channel spec as JSON");
  ChannelOptions ex_ch;
  std::string ex_out = "-";
  ex_ch.attach(ex);
  ex->add_option("--out", ex_out, "Output path ('-' for stdout)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const auto with_output = [&](const std::string& path, auto&& body) {
    if (path == "-") {
      body(out);
      return;
    }
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "' for writing");
    body(f);
    if (!f) throw ParseError("write to '" + path + "' failed");
  };

  try {
    if (sim->parsed()) {
      if (sim_t <= 0.0) throw InvalidParams("--t must be positive");
      const Trajectory traj =
          integrate(sim_ch.build(), sim_init.state(), sim_t, sim_solver.build());
      with_output(sim_out, [&](std::ostream& os) { write_csv(os, traj); });
    } else if (fp->parsed()) {
      write_json(out, fixed_points_json(fp_ch.build()));
    } else if (st->parsed()) {
      const ChannelSpec spec = st_ch.build();
      const double tau = analysis_plane(spec);
      const Vec3 r = to_vec3(st_point, "--point");
      const Mat3 jac = bloch_jacobian(spec, tau, r);
      const auto eig = eigenvalues(jac);
      write_json(out, {{"channel", spec.name},
                       {"tau", tau},
                       {"point", vec_json(r)},
                       {"velocity_norm", rhs(spec, PsdState(tau, r)).norm()},
                       {"jacobian", mat_json(jac)},
                       {"eigenvalues", eig_json(eig)},
                       {"stability", to_string(classify_stability(eig))}});
    } else if (sd->parsed()) {
      const ChannelSpec spec = sd_ch.build();
      const Vec3 p = to_vec3(sd_fp, "--fixed-point");
      Vec3 dir;
      if (!sd_dir.empty()) {
        dir = to_vec3(sd_dir, "--direction");
      } else if (p.norm() > 0.0) {
        dir = p.normalized();
      } else {
        throw InvalidParams("--direction is required at the origin");
      }
      write_json(out, {{"channel", spec.name},
                       {"fixed_point", vec_json(p)},
                       {"direction", vec_json(dir)},
                       {"exponent", slowdown_exponent(spec, p, dir)}});
    } else if (ch->parsed()) {
      write_json(out, choi_json(ch_ch.build(), ch_t));
    } else if (gp->parsed()) {
      gp_params.kind = parse_gate_kind(gp_kind);
      write_json(out, gate_plan_json(
                          plan_amplification(gp_params, gp_purity, gp_eps, gp_opts)));
    } else if (sw->parsed()) {
      if (sw_t <= 0.0) throw InvalidParams("--t must be positive");
      const PsdState init = sw_init.state();
      const IntegratorOpts opts = sw_solver.build();
      std::vector<SweepRow> rows(static_cast<std::size_t>(sw_steps));
      std::vector<std::exception_ptr> errors(rows.size());
      std::size_t next = 0;
      std::mutex mu;
      const auto worker = [&] {
        for (;;) {
          std::size_t k;
          {
            std::lock_guard<std::mutex> lock(mu);
            if (next >= rows.size()) return;
            k = next++;
          }
          const double v = sw_steps == 1
                               ? sw_from
                               : sw_from + (sw_to - sw_from) * static_cast<double>(k) /
                                               (sw_steps - 1);
          try {
            rows[k] = sweep_point(sw_ch, sw_param, v, sw_t, init, opts);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      };
      std::vector<std::thread> pool;
      const unsigned n = std::min<unsigned>(sw_threads, static_cast<unsigned>(rows.size()));
      for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      with_output(sw_out, [&](std::ostream& os) {
        os << "param,value,observable,result\n";
        for (const auto& row : rows) {
          for (const auto& [name, v] : row.observables) {
            os << sw_param << ',' << num17(row.value) << ',' << name << ',' << num17(v)
               << '\n';
          }
        }
      });
    } else if (vf->parsed()) {
      return acceptance::run_suite(acceptance::full_suite(vf_seed), out) ? 0 : 1;
    } else if (ex->parsed()) {
      const ChannelSpec spec = ex_ch.build();
      with_output(ex_out, [&](std::ostream& os) { write_json(os, spec_to_json(spec)); });
    }
  } catch (const Error& e) {
    err << "blochamp: error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"blochamp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace blochamp

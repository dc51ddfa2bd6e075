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
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include <algorithm>

#include "blochamp/dynamics.hpp"
#include "blochamp/errors.hpp"
#include "blochamp/presets.hpp"
#include "random_inputs.hpp"

using namespace blochamp;
using doctest::Approx;

namespace {

IntegratorOpts rk4(double dt) {
  IntegratorOpts o;
  o.method = Method::kRk4Fixed;
  o.dt = dt;
  return o;
}

}  // namespace

TEST_CASE("rhs examples") {
  Velocity v = rhs(linear_cptp(1.0), PsdState(1, Vec3::Zero()));
  CHECK((v.dr - Vec3(4, 0, 0)).norm() <= 1e-12);
  CHECK(std::abs(v.dtau) <= 1e-12);

  for (double x : {-0.8, -0.2, 0.0, 0.3, 0.9}) {
    v = rhs(onejump_nino(1.0), PsdState(1, Vec3(x, 0, 0)));
    CHECK(v.dr[0] == Approx(2 * (x - 1) * (x - 1)));
    CHECK(std::abs(v.dtau) <= 1e-12);
  }

  for (double z : {-0.5, 0.1, 0.7}) {
    v = rhs(threejump_nino(1.0, 0.5), PsdState(1, Vec3(0, 0, z)));
    CHECK(v.dr[2] == Approx(-2 * z));
  }
}

TEST_CASE("linear CPTP gate reaches 1 - 1/e at m = 0.5, t = 1") {
  const Trajectory traj = integrate(linear_cptp(0.5), PsdState::maximally_mixed(), 1.0);
  const PsdState& s = traj.back().state;
  CHECK(traj.back().t == 1.0);
  CHECK(s.r()[0] == Approx(1 - std::exp(-1.0)).epsilon(1e-10));
  CHECK(std::abs(s.r()[1]) <= 1e-12);
  CHECK(std::abs(s.r()[2]) <= 1e-12);
  CHECK(traj.stats().accepted > 0);
  CHECK(traj.size() == traj.stats().accepted + 1);
}

TEST_CASE("fixed points do not move") {
  for (const auto& [spec, r] :
       std::vector<std::pair<ChannelSpec, Vec3>>{{linear_cptp(1.0), Vec3(1, 0, 0)},
                                                 {onejump_nino(1.0), Vec3(1, 0, 0)},
                                                 {nojump_nino(0.3, 1.0), Vec3(1, 0, 0)},
                                                 {threejump_nino(1.0, 0.5), Vec3::Zero()}}) {
    const Trajectory traj = integrate(spec, PsdState(1, r), 7.5);
    CHECK((traj.back().state.r() - r).norm() <= 1e-9);
    CHECK(std::abs(traj.back().state.tau() - 1) <= 1e-9);
  }
}

TEST_CASE("three-jump trajectory follows the xi closed form") {
  const double big_m = 1.0, gamma = 0.5, eps = 1e-3;
  IntegratorOpts opts;
  opts.output_interval = 0.5;
  const Trajectory traj =
      integrate(threejump_nino(big_m, gamma), PsdState(1, Vec3(eps, 0, 0)), 10.0, opts);
  CHECK(traj.size() == 21);
  for (const auto& s : traj.samples()) {
    const double up = std::exp((big_m - gamma) * s.t);
    const double down = std::exp(-(big_m + gamma) * s.t);
    CHECK(s.state.r()[0] == Approx(eps / 2 * (up + down)).epsilon(1e-9));
    if (s.t > 0) CHECK(s.state.r()[1] == Approx(eps / 2 * (up - down)).epsilon(1e-9));
    CHECK(std::abs(s.state.r()[2]) <= 1e-15);
  }
}

TEST_CASE("xi coordinates") {
  auto [p, m] = xi_coordinates(PsdState(1, Vec3(0.3, 0, 0)));
  CHECK(p == Approx(0.15));
  CHECK(m == Approx(-0.15));
  std::tie(p, m) = xi_coordinates(PsdState(1, Vec3(1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0)));
  CHECK(p == Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(m) <= 1e-16);
  std::tie(p, m) = xi_coordinates(PsdState::maximally_mixed());
  CHECK(p == 0.0);
  CHECK(m == 0.0);
  const auto [x, y] = xy_from_xi(0.4, -0.1);
  CHECK(x == Approx(0.5));
  CHECK(y == Approx(0.3));
}

TEST_CASE("trace conservation") {
  std::mt19937_64 rng(53);
  for (const ChannelSpec& spec : {linear_cptp(1.0), linear_noncp(1.0, 0.5)}) {
    for (double tau0 : {1.0, 1.7}) {
      const PsdState s0 = testing::random_state(rng, tau0);
      IntegratorOpts opts;
      opts.stop_radius = 0.99;
      const Trajectory traj = integrate(spec, s0, 10.0, opts);
      for (const auto& s : traj.samples()) CHECK(std::abs(s.state.tau() - tau0) <= 1e-10);
    }
  }
  for (PresetName p : {PresetName::kNoJumpNino, PresetName::kOneJumpNino,
                       PresetName::kPseudoLinearNino}) {
    const Trajectory traj = integrate(expand_preset({p, {}}), testing::random_state(rng), 10.0);
    for (const auto& s : traj.samples()) CHECK(std::abs(s.state.tau() - 1.0) <= 1e-8);
  }
}

TEST_CASE("fixed plane is stable where tr(X Omega) < 0") {
  for (const ChannelSpec& spec :
       {onejump_nino(1.0), pseudolinear_nino(1.0), threejump_nino(1.0, 0.5)}) {
    for (double tau0 : {0.95, 1.05}) {
      IntegratorOpts opts;
      opts.output_interval = 0.25;
      const Trajectory traj = integrate(spec, PsdState(tau0, Vec3(0.1, 0, 0)), 4.0, opts);
      for (const auto& s : traj.samples()) CHECK(s.monitors.tr_x_omega < 0);
      for (std::size_t k = 1; k < traj.size(); ++k) {
        CHECK(std::abs(traj.samples()[k].state.tau() - 1) <
              std::abs(traj.samples()[k - 1].state.tau() - 1));
      }
      CHECK(std::abs(traj.back().state.tau() - 1) < 0.5 * std::abs(tau0 - 1));
    }
  }
}

TEST_CASE("RK4 is fourth order") {
  const double t = 1.0;
  const auto error = [&](const ChannelSpec& spec, double exact, double dt) {
    return std::abs(integrate(spec, PsdState::maximally_mixed(), t, rk4(dt)).back().state.r()[0] -
                    exact);
  };
  const double lin = 1 - std::exp(-4.0 * t);
  const double one = 1 - 1 / (1 + 2.0 * t);
  for (double dt : {0.1, 0.05, 0.025}) {
    CHECK(error(linear_cptp(1.0), lin, dt) / error(linear_cptp(1.0), lin, dt / 2) >= 12.0);
    CHECK(error(onejump_nino(1.0), one, dt) / error(onejump_nino(1.0), one, dt / 2) >= 12.0);
  }
}

TEST_CASE("sampling and stop events") {
  IntegratorOpts opts;
  opts.output_interval = 0.1;
  const Trajectory traj = integrate(linear_cptp(1.0), PsdState::maximally_mixed(), 1.0, opts);
  REQUIRE(traj.size() == 11);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(traj.samples()[k].t == Approx(0.1 * k).epsilon(1e-14));
  }

  IntegratorOpts stop;
  stop.stop_radius = 0.5;
  const Trajectory s = integrate(linear_cptp(1.0), PsdState::maximally_mixed(), 5.0, stop);
  CHECK(s.stopped_at_radius());
  CHECK(s.back().state.bloch_length() == Approx(0.5).epsilon(1e-12));
  CHECK(s.back().t == Approx(std::log(2.0) / 4).epsilon(1e-10));
}

TEST_CASE("monitors are filled at every sample") {
  const Trajectory traj = integrate(onejump_nino(1.0), PsdState::maximally_mixed(), 2.0);
  for (const auto& s : traj.samples()) {
    const double len = s.state.bloch_length();
    CHECK(s.monitors.purity == Approx((1 + len * len) / 2));
    CHECK(s.monitors.cone_margin == Approx(1 - len));
    CHECK(s.monitors.tr_x_omega == Approx(2 * (s.state.r()[0] - 1)));
  }
}

TEST_CASE("degenerate generator gives a constant trajectory") {
  const PsdState s0(1, Vec3(0.1, 0.2, 0.3));
  const Trajectory traj = integrate(ChannelSpec{}, s0, 3.0);
  CHECK(traj.back().t == 3.0);
  CHECK((traj.back().state.r() - s0.r()).norm() == 0.0);
}

TEST_CASE("integration errors") {
  CHECK_THROWS_AS(integrate(linear_cptp(1.0), PsdState::maximally_mixed(), 0.0), InvalidParams);
  CHECK_THROWS_AS(integrate(linear_cptp(1.0), PsdState::maximally_mixed(), 1.0, rk4(0.0)),
                  InvalidParams);

  // tau decays as e^{-2t} and hits the apex cutoff near t = 10.4.
  ChannelSpec decay;
  decay.ell.ell << -1, 0, 0, 0;
  CHECK_THROWS_AS(integrate(decay, PsdState::maximally_mixed(), 20.0), ApexReached);

  // (-1, 0, 0) is unstable for the no-jump model; just outside it the state
  // runs away from the cone.
  const ChannelSpec nj = nojump_nino(0.3, 1.0);
  const PsdState outside(1, Vec3(-1 - 5e-5, 0, 0));
  CHECK_THROWS_AS(integrate(nj, outside, 2.0), ConeViolation);
  IntegratorOpts off;
  off.allow_off_cone = true;
  const Trajectory traj = integrate(nj, outside, 0.5, off);
  CHECK(traj.back().state.bloch_length() > 1 + 1e-4);

  IntegratorOpts tight;
  tight.max_steps = 3;
  CHECK_THROWS_AS(integrate(linear_cptp(1.0), PsdState::maximally_mixed(), 5.0, tight),
                  StepFailure);
}

TEST_CASE("trajectory CSV") {
  IntegratorOpts opts;
  opts.output_interval = 0.5;
  const Trajectory traj = integrate(linear_cptp(1.0), PsdState::maximally_mixed(), 1.0, opts);
  std::ostringstream os;
  write_csv(os, traj);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kTrajectoryCsvHeader);
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    rows.push_back(line);
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  REQUIRE(rows.size() == 3);
  std::istringstream last(rows.back());
  std::string t, tau, x;
  std::getline(last, t, ',');
  std::getline(last, tau, ',');
  std::getline(last, x, ',');
  CHECK(t == "1");
  CHECK(tau == "1");
  CHECK(x.size() >= 18);  // "0." plus 17 significant digits
  CHECK(std::stod(x) == Approx(1 - std::exp(-4.0)).epsilon(1e-10));
}

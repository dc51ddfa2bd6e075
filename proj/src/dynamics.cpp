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

#include "blochamp/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "blochamp/errors.hpp"
#include "blochamp/ode.hpp"

namespace blochamp {

namespace {

constexpr double kConeSlack = 1e-4;

// Integration state is (tau, x, y, z).
Vec4 pack(const PsdState& s) {
  return Vec4(s.tau(), s.r()[0], s.r()[1], s.r()[2]);
}

double radius_ratio(const Vec4& y) { return y.tail<3>().norm() / y[0]; }

std::string describe(double t, const Vec4& y) {
  std::ostringstream os;
  os << std::setprecision(6) << "t=" << t << " tau=" << y[0]
     << " |r|=" << y.tail<3>().norm();
  return os.str();
}

void check_state(double t, const Vec4& y, const IntegratorOpts& opts) {
  if (!(y[0] >= kApexTrace)) {
    throw ApexReached("trace fell below apex cutoff at " + describe(t, y));
  }
  if (!opts.allow_off_cone && radius_ratio(y) > 1.0 + kConeSlack) {
    throw ConeViolation("state left the PSD cone at " + describe(t, y));
  }
  if (!y.allFinite()) {
    throw StepFailure("non-finite state at " + describe(t, y));
  }
}

}  // namespace

Velocity rhs(const AffineGenerator& gen, double tau, const Vec3& r) {
  const double tr_x_omega = gen.tr_x_omega(tau, r);
  Velocity v;
  v.dr = gen.G_total * r + gen.C_total * tau + gen.g * tr_x_omega * r;
  if (!gen.h.isZero(0.0)) v.dr += 2.0 * gen.h.cross(r);
  v.dtau = (gen.g * tau - 1.0) * tr_x_omega;
  return v;
}

Velocity rhs(const ChannelSpec& spec, const PsdState& state) {
  return rhs(assemble(spec), state.tau(), state.r());
}

Monitors compute_monitors(const AffineGenerator& gen, const PsdState& state) {
  const PurityEntropy pe = purity_entropy(state);
  Monitors m;
  m.purity = pe.purity;
  m.entropy = pe.entropy;
  m.tr_x_omega = gen.tr_x_omega(state.tau(), state.r());
  m.cone_margin = state.cone_margin();
  return m;
}

Trajectory::Trajectory(std::string spec_id, std::vector<Sample> samples,
                       StepStats stats, bool stopped_at_radius)
    : spec_id_(std::move(spec_id)),
      samples_(std::move(samples)),
      stats_(stats),
      stopped_at_radius_(stopped_at_radius) {}

Trajectory integrate(const ChannelSpec& spec, const PsdState& initial,
                     double t_end, const IntegratorOpts& opts) {
  if (!(t_end > 0.0)) throw InvalidParams("t_end must be positive");
  if (opts.method == Method::kRk4Fixed && !(opts.dt > 0.0)) {
    throw InvalidParams("fixed-step RK4 needs dt > 0");
  }
  if (opts.rtol <= 0.0 || opts.atol <= 0.0) {
    throw InvalidParams("tolerances must be positive");
  }

  const AffineGenerator gen = assemble(spec);
  const auto f = [&gen](double, const Vec4& y) -> Vec4 {
    const Velocity v = rhs(gen, y[0], y.tail<3>());
    return Vec4(v.dtau, v.dr[0], v.dr[1], v.dr[2]);
  };

  std::vector<Sample> samples;
  const auto record = [&](double t, const Vec4& y) {
    PsdState s(y[0], y.tail<3>());
    samples.push_back(Sample{t, s, compute_monitors(gen, s)});
  };

  StepStats stats;
  double t = 0.0;
  Vec4 y = pack(initial);
  check_state(t, y, opts);
  record(t, y);

  const bool use_stop = opts.stop_radius > 0.0;
  if (use_stop && radius_ratio(y) >= opts.stop_radius) {
    return Trajectory(spec.name, std::move(samples), stats, true);
  }

  const bool adaptive = opts.method == Method::kRk45Adaptive;
  const auto advance = [&](double h) -> Vec4 {
    if (adaptive) return ode::dopri5_step<Vec4>(f, t, y, h).y;
    return ode::rk4_step<Vec4>(f, t, y, h);
  };
  // Shrinks [0, h] onto the first time |r|/tau reaches stop_radius.
  const auto locate_stop = [&](double h) {
    double lo = 0.0;
    double hi = h;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, t); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (radius_ratio(advance(mid)) >= opts.stop_radius) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };

  if (!adaptive) {
    const auto n = static_cast<std::size_t>(std::ceil(t_end / opts.dt - 1e-9));
    const double h = t_end / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec4 y_new = advance(h);
      double t_new = (i + 1 == n) ? t_end : t + h;
      if (use_stop && radius_ratio(y_new) >= opts.stop_radius) {
        const double h_stop = locate_stop(h);
        y_new = advance(h_stop);
        t_new = t + h_stop;
        check_state(t_new, y_new, opts);
        t = t_new;
        y = y_new;
        ++stats.accepted;
        record(t, y);
        return Trajectory(spec.name, std::move(samples), stats, true);
      }
      check_state(t_new, y_new, opts);
      t = t_new;
      y = y_new;
      ++stats.accepted;
      record(t, y);
    }
    return Trajectory(spec.name, std::move(samples), stats, false);
  }

  double h = opts.dt;
  if (!(h > 0.0)) {
    const double speed = f(0.0, y).norm();
    h = 1e-2 / std::max(1.0, speed);
  }
  h = std::min(h, t_end);

  const double interval = opts.output_interval;
  std::size_t out_index = 1;
  const auto next_output = [&]() {
    return interval > 0.0 ? std::min(t_end, interval * out_index) : t_end;
  };

  std::size_t steps = 0;
  while (t < t_end) {
    if (++steps > opts.max_steps) {
      throw StepFailure("step budget exhausted at " + describe(t, y));
    }
    const double target = next_output();
    double h_try = h;
    bool lands = false;
    if (t + h_try >= target * (1.0 - 1e-14)) {
      h_try = target - t;
      lands = true;
    }
    const auto step = ode::dopri5_step<Vec4>(f, t, y, h_try);
    const double ratio =
        ode::error_ratio(y, step.y, step.err, opts.rtol, opts.atol);
    if (!std::isfinite(ratio) || ratio > 1.0) {
      ++stats.rejected;
      h = h_try * (std::isfinite(ratio) ? ode::step_factor(ratio) : 0.2);
      if (h < 1e-14 * std::max(1.0, t)) {
        throw StepFailure("step size underflow at " + describe(t, y));
      }
      continue;
    }

    ++stats.accepted;
    stats.max_error_ratio = std::max(stats.max_error_ratio, ratio);
    const double t_new = lands ? target : t + h_try;

    if (use_stop && radius_ratio(step.y) >= opts.stop_radius) {
      const double h_stop = locate_stop(h_try);
      const Vec4 y_stop = advance(h_stop);
      check_state(t + h_stop, y_stop, opts);
      t += h_stop;
      y = y_stop;
      record(t, y);
      return Trajectory(spec.name, std::move(samples), stats, true);
    }

    check_state(t_new, step.y, opts);
    t = t_new;
    y = step.y;
    if (interval <= 0.0 || lands) record(t, y);
    if (lands && interval > 0.0) ++out_index;

    const double grown = h_try * ode::step_factor(ratio);
    h = lands ? std::max(grown, h) : grown;
  }
  return Trajectory(spec.name, std::move(samples), stats, false);
}

std::pair<double, double> xi_coordinates(const PsdState& state) {
  const double x = state.r()[0];
  const double y = state.r()[1];
  return {(y + x) / 2.0, (y - x) / 2.0};
}

std::pair<double, double> xy_from_xi(double xi_plus, double xi_minus) {
  return {xi_plus - xi_minus, xi_plus + xi_minus};
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  const auto old_precision = out.precision(17);
  out << kTrajectoryCsvHeader << '\n';
  for (const auto& s : traj.samples()) {
    out << s.t << ',' << s.state.tau() << ',' << s.state.r()[0] << ','
        << s.state.r()[1] << ',' << s.state.r()[2] << ',' << s.monitors.purity
        << ',' << s.monitors.entropy << ',' << s.monitors.tr_x_omega << ','
        << s.monitors.cone_margin << '\n';
  }
  out.precision(old_precision);
}

}  // namespace blochamp

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

#include "blochamp/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "blochamp/errors.hpp"
#include "blochamp/ode.hpp"
#include "blochamp/presets.hpp"

namespace blochamp {

namespace {

constexpr double kStabilityBand = 1e-9;
constexpr double kRankTol = 1e-10;
constexpr double kNewtonStepTol = 1e-12;
constexpr int kNewtonMaxIter = 100;
constexpr double kAcceptResidual = 1e-10;
constexpr double kDedupRadius = 1e-6;

Mat3 cross_matrix(const Vec3& h) {
  Mat3 m;
  m << 0, -h[2], h[1], h[2], 0, -h[0], -h[1], h[0], 0;
  return m;
}

double velocity_norm(const AffineGenerator& gen, double tau, const Vec3& r) {
  return rhs(gen, tau, r).norm();
}

// Affine on the analysis plane when the nonlinear term only rescales r.
bool is_affine_on_plane(const ChannelSpec& spec) {
  return spec.g == 0.0 || is_pseudo_linear(spec);
}

FixedPointReport affine_fixed_points(const ChannelSpec& spec, double tau) {
  const AffineGenerator gen = assemble(spec);
  const Mat3 a = gen.G_total +
                 gen.g * tau * gen.omega.identity_part() * Mat3::Identity() +
                 2.0 * cross_matrix(gen.h);
  const Vec3 b = gen.C_total * tau;

  FixedPointReport report;
  report.tau = tau;
  report.restricted_to_plane = spec.g != 0.0;

  Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  const double tol = kRankTol * std::max(1.0, sv[0]);
  int rank = 0;
  for (int i = 0; i < 3; ++i) rank += sv[i] > tol ? 1 : 0;

  const auto eig = eigenvalues(a);
  if (rank == 3) {
    FixedPoint fp;
    fp.r = svd.solve(-b);
    fp.eigenvalues = eig;
    fp.stability = classify_stability(eig);
    fp.residual = velocity_norm(gen, tau, fp.r);
    report.points.push_back(fp);
    return report;
  }

  // Rank-deficient: minimum-norm solution plus null space, if consistent.
  Vec3 r0 = Vec3::Zero();
  for (int i = 0; i < rank; ++i) {
    r0 -= (svd.matrixU().col(i).dot(b) / sv[i]) * svd.matrixV().col(i);
  }
  if ((a * r0 + b).norm() > kRankTol * std::max(1.0, b.norm())) {
    return report;
  }
  FixedLine line;
  line.point = r0;
  for (int i = rank; i < 3; ++i) line.directions.push_back(svd.matrixV().col(i));
  line.eigenvalues = eig;
  // Drop the (3 - rank) eigenvalues closest to zero before labelling.
  std::array<Complex, 3> sorted = eig;
  std::sort(sorted.begin(), sorted.end(), [](Complex x, Complex y) {
    return std::abs(x) > std::abs(y);
  });
  bool any_unstable = false;
  for (int i = 0; i < rank; ++i) {
    any_unstable = any_unstable || sorted[i].real() > kStabilityBand;
  }
  line.stability = any_unstable ? Stability::kUnstable : Stability::kMarginal;
  report.fixed_lines.push_back(line);
  return report;
}

FixedPointReport newton_fixed_points(const ChannelSpec& spec, double tau) {
  const AffineGenerator gen = assemble(spec);
  const auto residual = [&](const Vec3& r) { return rhs(gen, tau, r).dr; };

  FixedPointReport report;
  report.tau = tau;
  report.restricted_to_plane = true;

  const double grid[5] = {-1.2, -0.6, 0.0, 0.6, 1.2};
  for (double sx : grid) {
    for (double sy : grid) {
      for (double sz : grid) {
        Vec3 r(sx, sy, sz);
        if (r.norm() > 1.2 + 1e-12) continue;
        Vec3 f = residual(r);
        for (int it = 0; it < kNewtonMaxIter && f.norm() > 0.0; ++it) {
          const Mat3 j = bloch_jacobian(spec, tau, r);
          Eigen::JacobiSVD<Mat3> svd(j, Eigen::ComputeFullU | Eigen::ComputeFullV);
          const Vec3 step = svd.solve(-f);
          if (!step.allFinite()) break;
          double lambda = 1.0;
          Vec3 trial = r + step;
          Vec3 f_trial = residual(trial);
          for (int halving = 0;
               halving < 40 && !(f_trial.norm() <= f.norm()); ++halving) {
            lambda /= 2.0;
            trial = r + lambda * step;
            f_trial = residual(trial);
          }
          const double moved = (trial - r).norm();
          r = trial;
          f = f_trial;
          if (moved <= kNewtonStepTol) break;
        }
        if (!r.allFinite()) continue;
        const double res = velocity_norm(gen, tau, r);
        if (res > kAcceptResidual) continue;
        const bool duplicate = std::any_of(
            report.points.begin(), report.points.end(),
            [&](const FixedPoint& p) { return (p.r - r).norm() <= kDedupRadius; });
        if (duplicate) continue;
        FixedPoint fp;
        fp.r = r;
        fp.eigenvalues = eigenvalues(bloch_jacobian(spec, tau, r));
        fp.stability = classify_stability(fp.eigenvalues);
        fp.residual = res;
        report.points.push_back(fp);
      }
    }
  }
  std::sort(report.points.begin(), report.points.end(),
            [](const FixedPoint& a, const FixedPoint& b) {
              return std::lexicographical_compare(a.r.data(), a.r.data() + 3,
                                                  b.r.data(), b.r.data() + 3);
            });
  return report;
}

using ChoiState = Eigen::Vector4cd;

// Propagates vec(X) through the linear generator with an adaptive Dormand-
// Prince controller.
ChoiState propagate_linear(const ChannelSpec& spec, ChoiState y, double t_end) {
  const auto f = [&spec](double, const ChoiState& v) -> ChoiState {
    const Mat2c x = Eigen::Map<const Mat2c>(v.data());
    const Mat2c dx = apply_linear_generator(spec, x);
    return Eigen::Map<const ChoiState>(dx.data());
  };
  constexpr double rtol = 1e-12;
  constexpr double atol = 1e-14;
  double t = 0.0;
  double h = std::min(t_end, 1e-3);
  std::size_t steps = 0;
  while (t < t_end) {
    if (++steps > 10'000'000) throw StepFailure("Choi propagation stalled");
    bool lands = false;
    double h_try = h;
    if (t + h_try >= t_end * (1.0 - 1e-14)) {
      h_try = t_end - t;
      lands = true;
    }
    const auto step = ode::dopri5_step<ChoiState>(f, t, y, h_try);
    const double ratio = ode::error_ratio(y, step.y, step.err, rtol, atol);
    if (!std::isfinite(ratio) || ratio > 1.0) {
      h = h_try * (std::isfinite(ratio) ? ode::step_factor(ratio) : 0.2);
      if (h < 1e-15) throw StepFailure("Choi propagation step underflow");
      continue;
    }
    t = lands ? t_end : t + h_try;
    y = step.y;
    const double grown = h_try * ode::step_factor(ratio);
    h = lands ? std::max(grown, h) : grown;
  }
  return y;
}

double radius_for_purity(double purity) { return std::sqrt(2.0 * purity - 1.0); }

double purity_of(const PsdState& s) { return purity_entropy(s).purity; }

// First time the linear three-jump flow from `start` (tau = 1) reaches
// |r| = radius. |r(t)|^2 is a sum of exponentials, hence convex in t.
double three_jump_crossing_time(double big_m, double gamma,
                                const PsdState& start, double radius) {
  const auto [xp, xm] = xi_coordinates(start);
  const double z = start.r()[2];
  const double grow = big_m - gamma;
  const double decay = big_m + gamma;
  const auto f = [&](double t) {
    return 2.0 * (xp * xp * std::exp(2 * grow * t) +
                  xm * xm * std::exp(-2 * decay * t)) +
           z * z * std::exp(-4 * big_m * t) - radius * radius;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e8) throw TargetUnreachable("three-jump flow never reaches target");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::kStable:
      return "stable";
    case Stability::kUnstable:
      return "unstable";
    case Stability::kMarginal:
      return "marginal";
  }
  return "unknown";
}

Stability classify_stability(const std::array<Complex, 3>& eigenvalues) {
  bool all_negative = true;
  for (const Complex& e : eigenvalues) {
    if (e.real() > kStabilityBand) return Stability::kUnstable;
    all_negative = all_negative && e.real() < -kStabilityBand;
  }
  return all_negative ? Stability::kStable : Stability::kMarginal;
}

double analysis_plane(const ChannelSpec& spec) {
  return spec.g == 0.0 ? 1.0 : 1.0 / spec.g;
}

Mat3 bloch_jacobian(const ChannelSpec& spec, double tau, const Vec3& r) {
  const AffineGenerator gen = assemble(spec);
  Mat3 j = gen.G_total + gen.g * gen.tr_x_omega(tau, r) * Mat3::Identity();
  j += gen.g * r * (0.5 * gen.omega.sigma_traces()).transpose();
  j += 2.0 * cross_matrix(gen.h);
  return j;
}

std::array<Complex, 3> eigenvalues(const Mat3& m) {
  Eigen::EigenSolver<Mat3> solver(m, false);
  const auto ev = solver.eigenvalues();
  std::array<Complex, 3> out{ev[0], ev[1], ev[2]};
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

FixedPointReport find_fixed_points(const ChannelSpec& spec) {
  const double tau = analysis_plane(spec);
  if (is_affine_on_plane(spec)) return affine_fixed_points(spec, tau);
  return newton_fixed_points(spec, tau);
}

double slowdown_exponent(const ChannelSpec& spec, const Vec3& fp,
                         const Vec3& approach_dir) {
  if (approach_dir.norm() == 0.0) {
    throw InvalidParams("approach direction must be nonzero");
  }
  const Vec3 dir = approach_dir.normalized();
  const AffineGenerator gen = assemble(spec);
  const double tau = analysis_plane(spec);

  constexpr int n = 20;
  std::vector<double> xs;
  std::vector<double> ys;
  bool any_moving = false;
  for (int k = 0; k < n; ++k) {
    const double delta = std::pow(10.0, -5.0 + 3.0 * k / (n - 1));
    const double v = velocity_norm(gen, tau, fp - delta * dir);
    any_moving = any_moving || v >= 1e-14;
    if (v > 0.0) {
      xs.push_back(std::log(delta));
      ys.push_back(std::log(v));
    }
  }
  if (!any_moving || xs.size() < 2) {
    throw InvalidParams("velocity vanishes along the approach direction");
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

std::array<double, 4> choi_spectrum(const ChannelSpec& spec, double t) {
  if (spec.g != 0.0) {
    throw NonlinearChannel("Choi matrix is undefined for nonlinear channels");
  }
  if (t < 0.0) throw InvalidParams("time must be nonnegative");

  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Mat2c e = Mat2c::Zero();
      e(i, j) = 1.0;
      ChoiState v = Eigen::Map<const ChoiState>(e.data());
      if (t > 0.0) v = propagate_linear(spec, v, t);
      choi.block<2, 2>(2 * i, 2 * j) = Eigen::Map<const Mat2c>(v.data());
    }
  }
  const Eigen::Matrix4cd herm = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm,
                                                         Eigen::EigenvaluesOnly);
  const auto ev = solver.eigenvalues();
  return {ev[0], ev[1], ev[2], ev[3]};
}

std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::kLinearCptp:
      return "linear_cptp";
    case GateKind::kOneJump:
      return "one_jump";
    case GateKind::kThreeJump:
      return "three_jump";
    case GateKind::kLinearNonCp:
      return "linear_non_cp";
  }
  return "unknown";
}

GateKind parse_gate_kind(const std::string& name) {
  for (GateKind k : {GateKind::kLinearCptp, GateKind::kOneJump,
                     GateKind::kThreeJump, GateKind::kLinearNonCp}) {
    if (to_string(k) == name) return k;
  }
  throw ParseError("unknown gate '" + name + "'");
}

GatePlan plan_amplification(const GateParams& gate, double target_purity,
                            double epsilon, const PlanOptions& opts) {
  if (!(target_purity > 0.5 && target_purity < 1.0)) {
    throw InvalidParams("target purity must lie in (0.5, 1)");
  }
  if (!(opts.t_max > 0.0)) throw InvalidParams("t_max must be positive");

  GatePlan plan;
  plan.target_purity = target_purity;
  plan.target_radius = radius_for_purity(target_purity);
  const double radius = plan.target_radius;
  const PsdState origin = PsdState::maximally_mixed();

  IntegratorOpts stop_opts = opts.integrator;
  stop_opts.stop_radius = radius;
  stop_opts.output_interval = 0.0;
  IntegratorOpts plain_opts = opts.integrator;
  plain_opts.stop_radius = 0.0;
  plain_opts.output_interval = 0.0;

  PsdState start = origin;
  const bool two_stage =
      gate.kind == GateKind::kThreeJump || gate.kind == GateKind::kLinearNonCp;
  if (two_stage) {
    if (!(gate.big_m > gate.gamma)) {
      std::ostringstream os;
      os << "M > gamma required for an unstable origin (M = " << gate.big_m
         << ", gamma = " << gate.gamma << ")";
      throw InvalidParams(os.str());
    }
    if (!(epsilon > 0.0 && epsilon < radius)) {
      throw InvalidParams("epsilon must lie in (0, target radius)");
    }
    const double pm = opts.pre_amp_m;
    GateStage pre{linear_cptp(pm), -std::log1p(-epsilon) / (4.0 * pm * pm)};
    start = integrate(pre.spec, origin, pre.duration, plain_opts).back().state;
    plan.pre_amp = pre;
    plan.epsilon = epsilon;
    plan.main.spec = gate.kind == GateKind::kThreeJump
                         ? threejump_nino(gate.big_m, gate.gamma)
                         : linear_noncp(gate.big_m, gate.gamma);
    plan.direction = Vec3(1.0, 1.0, 0.0).normalized();
    plan.t_gate_closed_form =
        three_jump_crossing_time(gate.big_m, gate.gamma, start, radius);
  } else if (gate.kind == GateKind::kLinearCptp) {
    const double m2 = gate.m * gate.m;
    plan.main.spec = linear_cptp(gate.m);
    plan.t_gate_closed_form = -std::log1p(-radius) / (4.0 * m2);
  } else {
    const double m2 = gate.m * gate.m;
    plan.main.spec = onejump_nino(gate.m);
    plan.t_gate_closed_form = (1.0 / (1.0 - radius) - 1.0) / (2.0 * m2);
  }

  if (plan.t_gate_closed_form > opts.t_max) {
    std::ostringstream os;
    os << to_string(gate.kind) << " gate needs t = " << plan.t_gate_closed_form
       << " > t_max = " << opts.t_max;
    throw TargetUnreachable(os.str());
  }

  const Trajectory main = integrate(plan.main.spec, start, opts.t_max, stop_opts);
  if (!main.stopped_at_radius()) {
    throw TargetUnreachable(to_string(gate.kind) +
                            " gate did not reach the target within t_max");
  }
  plan.t_gate = main.back().t;
  plan.main.duration = plan.t_gate;

  // Re-run the composed schedule with fixed durations.
  PsdState state = origin;
  if (plan.pre_amp) {
    state = integrate(plan.pre_amp->spec, state, plan.pre_amp->duration,
                      plain_opts)
                .back()
                .state;
  }
  state = integrate(plan.main.spec, state, plan.main.duration, plain_opts)
              .back()
              .state;
  plan.achieved = state;
  if (std::abs(purity_of(state) - target_purity) > 1e-6) {
    std::ostringstream os;
    os << "gate validation failed: achieved purity " << purity_of(state)
       << " vs target " << target_purity;
    throw Error(os.str());
  }
  return plan;
}

PsdState rotate(const PsdState& state, const Vec3& axis, double angle) {
  if (axis.norm() == 0.0) throw InvalidParams("rotation axis must be nonzero");
  const Eigen::AngleAxisd rot(angle, axis.normalized());
  return PsdState(state.tau(), rot * state.r());
}

}  // namespace blochamp

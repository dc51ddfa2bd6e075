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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "blochamp/channel.hpp"
#include "blochamp/dynamics.hpp"
#include "blochamp/pauli.hpp"

namespace blochamp {

enum class Stability { kStable, kUnstable, kMarginal };

std::string to_string(Stability s);

/// Label from eigenvalue real parts with a 1e-9 dead band around zero.
Stability classify_stability(const std::array<Complex, 3>& eigenvalues);

struct FixedPoint {
  Vec3 r = Vec3::Zero();
  std::array<Complex, 3> eigenvalues{};
  Stability stability = Stability::kMarginal;
  double residual = 0.0;  // |rhs| at the point
};

/// Affine set of fixed points (a line when directions.size() == 1).
struct FixedLine {
  Vec3 point = Vec3::Zero();
  std::vector<Vec3> directions;
  std::array<Complex, 3> eigenvalues{};
  /// kMarginal when every eigenvalue transverse to the set is stable.
  Stability stability = Stability::kMarginal;
};

struct FixedPointReport {
  std::vector<FixedPoint> points;
  std::vector<FixedLine> fixed_lines;
  /// Nonlinear specs are analysed on their fixed plane g tau = 1.
  bool restricted_to_plane = false;
  double tau = 1.0;
};

/// Trace at which the Bloch-ball analysis runs: 1/g for NINO channels, 1 for
/// linear ones.
double analysis_plane(const ChannelSpec& spec);

/// d(dr/dt)/dr at fixed tau, from the polynomial right-hand side.
Mat3 bloch_jacobian(const ChannelSpec& spec, double tau, const Vec3& r);

std::array<Complex, 3> eigenvalues(const Mat3& m);

/// Linear specs (and pseudo-linear NINO specs on their plane) are affine in
/// r and get an exact rank analysis; other specs run damped Newton from a
/// 5x5x5 seed grid inside |r| <= 1.2.
FixedPointReport find_fixed_points(const ChannelSpec& spec);

/// Least-squares slope of log |v(delta)| against log delta, where v is the
/// velocity at fp - delta * dir, over 20 log-spaced delta in [1e-5, 1e-2].
/// Throws InvalidParams if the velocity vanishes at every sample.
double slowdown_exponent(const ChannelSpec& spec, const Vec3& fp,
                         const Vec3& approach_dir);

/// Eigenvalues (ascending) of the unnormalized Choi matrix
/// sum_ij E_ij (x) Phi_t(E_ij) of the finite-time map of a linear spec.
/// Throws NonlinearChannel when g != 0.
std::array<double, 4> choi_spectrum(const ChannelSpec& spec, double t);

enum class GateKind { kLinearCptp, kOneJump, kThreeJump, kLinearNonCp };

std::string to_string(GateKind k);
GateKind parse_gate_kind(const std::string& name);

struct GateParams {
  GateKind kind = GateKind::kThreeJump;
  double m = 1.0;
  double big_m = 1.0;
  double gamma = 0.5;
};

struct PlanOptions {
  /// Rate constant of the linear CPTP pre-amplification stage.
  double pre_amp_m = 1.0;
  /// Longest main stage considered before giving up.
  double t_max = 100.0;
  IntegratorOpts integrator{};
};

struct GateStage {
  ChannelSpec spec;
  double duration = 0.0;
};

struct GatePlan {
  std::optional<GateStage> pre_amp;
  GateStage main;
  double target_purity = 0.0;
  double target_radius = 0.0;  // |r| with (1 + |r|^2)/2 = target_purity
  double epsilon = 0.0;        // x after pre-amplification (0 if none)
  Vec3 direction = Vec3::UnitX();
  PsdState achieved = PsdState::maximally_mixed();
  /// Main-stage duration located by integration.
  double t_gate = 0.0;
  /// Same duration from the closed-form solution of the stage.
  double t_gate_closed_form = 0.0;
};

/// Schedules an amplification gate from X = I/2 to the target purity and
/// validates it by re-integrating the composed stages.
///
/// Throws InvalidParams for target_purity outside (0.5, 1), epsilon outside
/// (0, target radius), or M <= gamma for the three-jump family;
/// TargetUnreachable if the main stage needs longer than t_max.
GatePlan plan_amplification(const GateParams& gate, double target_purity,
                            double epsilon = 1e-3,
                            const PlanOptions& opts = {});

/// Rotates r by `angle` about `axis` (right-handed). Throws InvalidParams for a
/// zero axis.
PsdState rotate(const PsdState& state, const Vec3& axis, double angle);

}  // namespace blochamp

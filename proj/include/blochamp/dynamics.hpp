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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "blochamp/channel.hpp"
#include "blochamp/pauli.hpp"

namespace blochamp {

/// Time derivative of (tau, r) in Bloch coordinates.
Velocity rhs(const ChannelSpec& spec, const PsdState& state);

/// Same, from a pre-assembled generator and raw coordinates. Defined for any
/// tau, including off-cone points.
Velocity rhs(const AffineGenerator& gen, double tau, const Vec3& r);

enum class Method { kRk4Fixed, kRk45Adaptive };

struct IntegratorOpts {
  Method method = Method::kRk45Adaptive;
  /// Fixed step for kRk4Fixed; initial trial step for kRk45Adaptive
  /// (0 picks one from the initial velocity).
  double dt = 0.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_steps = 5'000'000;
  /// Skip the cone check (|r| / tau <= 1 + 1e-4).
  bool allow_off_cone = false;
  /// When > 0 the adaptive stepper lands exactly on multiples of this
  /// interval and records only those points (plus t_end and stop events).
  double output_interval = 0.0;
  /// When > 0, stop as soon as |r| / tau reaches this value. The crossing is
  /// located to ~1e-13 inside the step.
  double stop_radius = 0.0;
};

struct Monitors {
  double purity = 0.0;
  double entropy = 0.0;
  double tr_x_omega = 0.0;
  double cone_margin = 0.0;
};

struct Sample {
  double t;
  PsdState state;
  Monitors monitors;
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double max_error_ratio = 0.0;  // worst accepted scaled error estimate
};

/// Time-ordered samples from a single integration run.
class Trajectory {
 public:
  Trajectory(std::string spec_id, std::vector<Sample> samples, StepStats stats,
             bool stopped_at_radius);

  const std::string& spec_id() const { return spec_id_; }
  const std::vector<Sample>& samples() const { return samples_; }
  const Sample& front() const { return samples_.front(); }
  const Sample& back() const { return samples_.back(); }
  std::size_t size() const { return samples_.size(); }
  const StepStats& stats() const { return stats_; }
  /// True when integration ended on IntegratorOpts::stop_radius.
  bool stopped_at_radius() const { return stopped_at_radius_; }

 private:
  std::string spec_id_;
  std::vector<Sample> samples_;
  StepStats stats_;
  bool stopped_at_radius_;
};

/// Integrates from t = 0 to t_end.
///
/// Throws ApexReached if tau drops below kApexTrace, ConeViolation if
/// |r| / tau exceeds 1 + 1e-4 (unless allow_off_cone), StepFailure if the
/// controller stalls, InvalidParams for t_end <= 0.
Trajectory integrate(const ChannelSpec& spec, const PsdState& initial,
                     double t_end, const IntegratorOpts& opts = {});

Monitors compute_monitors(const AffineGenerator& gen, const PsdState& state);

/// xi_+- = (y +- x) / 2.
std::pair<double, double> xi_coordinates(const PsdState& state);

/// (x, y) = (xi_+ - xi_-, xi_+ + xi_-).
std::pair<double, double> xy_from_xi(double xi_plus, double xi_minus);

/// Header `t,tau,x,y,z,purity,entropy,trXOmega,coneMargin`, 17 significant
/// digits per field.
void write_csv(std::ostream& out, const Trajectory& traj);

inline constexpr const char* kTrajectoryCsvHeader =
    "t,tau,x,y,z,purity,entropy,trXOmega,coneMargin";

}  // namespace blochamp

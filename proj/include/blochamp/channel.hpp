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

// Channel construction and Pauli-basis generator data.
//
// The master equation handled here is
//
//   dX/dt = {L+, X} - i[H, X] + sum_a zeta_a B_a X B_a^dag + g tr(X Omega) X
//   Omega = -2 L+ - sum_a zeta_a B_a^dag B_a
//
// with L+ = ell_mu sigma^mu Hermitian, H = h . sigma, and zeta_a = +-1 the
// signs of the Choi eigenvalues. In Bloch coordinates this becomes
//
//   dr/dt = G r + C tau + g tr(X Omega) r + 2 h x r
//   dtau/dt = (g tau - 1) tr(X Omega)

#include <cmath>
#include <string>
#include <vector>

#include "blochamp/pauli.hpp"

namespace blochamp {

/// One dissipator term zeta B X B^dag. Any rate constant is folded into the
/// coordinates of B.
class JumpTerm {
 public:
  /// Throws InvalidParams if zeta is not +-1 or B is zero.
  JumpTerm(const PauliVectorC& b, int zeta);

  const PauliVectorC& b() const { return b_; }
  int zeta() const { return zeta_; }
  Mat2c matrix() const { return b_.to_matrix(); }

  friend bool operator==(const JumpTerm& lhs, const JumpTerm& rhs) {
    return lhs.b_.xi == rhs.b_.xi && lhs.zeta_ == rhs.zeta_;
  }

 private:
  PauliVectorC b_;
  int zeta_;
};

struct ChannelSpec {
  HermitianPauliVector ell;  // L+ coefficients
  std::vector<JumpTerm> jumps;
  double g = 0.0;            // nonlinearity strength
  Vec3 h = Vec3::Zero();     // Hamiltonian h . sigma
  std::string name;          // free-form label carried into trajectories

  friend bool operator==(const ChannelSpec& lhs, const ChannelSpec& rhs) {
    return lhs.ell.ell == rhs.ell.ell && lhs.jumps == rhs.jumps &&
           lhs.g == rhs.g && lhs.h == rhs.h && lhs.name == rhs.name;
  }
};

/// Contribution G^{ab} r^b + C^a tau of a single B X B^dag term.
struct JumpGenerator {
  Mat3 G = Mat3::Zero();
  Vec3 C = Vec3::Zero();
};

/// G^{ab} = tr(sigma^a B sigma^b B^dag)/2 and C^a = tr(sigma^a B B^dag)/2 by
/// explicit 2x2 matrix products. The sign zeta is not applied.
JumpGenerator jump_generator(const JumpTerm& jump);

/// Same quantity from the coordinate formula
///   G^{ab} = (|xi_0|^2 - |xi|^2) delta^{ab} + 2 Im(xi_0^* xi_c) eps^{abc}
///            + 2 Re(xi_a^* xi_b),
///   C^a    = 2 Re(xi_0^* xi_a) + 2 (Re xi x Im xi)_a.
JumpGenerator jump_generator_closed_form(const JumpTerm& jump);

struct AffineGenerator {
  Mat3 G_total = Mat3::Zero();  // 2 ell_0 I + sum zeta G_a, no nonlinear term
  Vec3 C_total = Vec3::Zero();  // 2 ell_{1..3} + sum zeta C_a
  HermitianPauliVector omega;
  double g = 0.0;
  double trL = 0.0;             // tr L+ = 2 ell_0
  Vec3 h = Vec3::Zero();

  /// tr(X Omega) at the given point.
  double tr_x_omega(double tau, const Vec3& r) const {
    return 0.5 * (tau * omega.trace() + r.dot(omega.sigma_traces()));
  }
};

AffineGenerator assemble(const ChannelSpec& spec);

/// Omega = -2 L+ - sum zeta B^dag B computed with 2x2 matrices.
Mat2c omega_matrix(const ChannelSpec& spec);

/// Linear part of the generator acting on an arbitrary (not necessarily
/// Hermitian) operator: {L+, X} - i[H, X] + sum zeta B X B^dag.
Mat2c apply_linear_generator(const ChannelSpec& spec, const Mat2c& x);

/// Full right-hand side dX/dt in operator form, including g tr(X Omega) X.
Mat2c apply_generator(const ChannelSpec& spec, const Mat2c& x);

/// Scale used for the relative zero tests on Omega.
double generator_scale(const ChannelSpec& spec);

/// Omega vanishes within 1e-12 relative to the generator scale.
bool omega_vanishes(const ChannelSpec& spec);

/// Omega = kappa I within 1e-12 max(1, |Omega|) on its sigma components.
bool is_pseudo_linear(const ChannelSpec& spec);

enum class ChannelClass {
  kLinearPtp,  // class (i): linear map, trace conserved for every X
  kNino,       // class (ii): linear map plus trace-restoring nonlinearity
};

enum class TraceConservation {
  kUnconditional,  // dtau/dt = 0 for every tau
  kOnFixedPlane,   // dtau/dt = 0 only on g tau = 1
};

struct Classification {
  bool cp = true;                 // every zeta = +1
  bool linear = true;             // g = 0
  ChannelClass channel_class = ChannelClass::kLinearPtp;
  bool pseudo_linear = false;
  double kappa = 0.0;             // Omega = kappa I when pseudo-linear
  bool unital = false;            // zero velocity at X = I/2
  TraceConservation trace = TraceConservation::kUnconditional;
  double trace_plane = 1.0;       // tau with g tau = 1 (1 when linear)
};

/// Throws NotTracePreserving when g = 0 and Omega != 0.
Classification classify(const ChannelSpec& spec);

struct Velocity {
  Vec3 dr = Vec3::Zero();
  double dtau = 0.0;

  double norm() const { return std::sqrt(dr.squaredNorm() + dtau * dtau); }
};

/// dX/dt at X = I/2 from the operator identity
///   1/2 sum zeta [B, B^dag] - Omega/2 + g tr(Omega)/4 I.
Velocity initial_velocity(const ChannelSpec& spec);

/// The same velocity read off the Pauli-basis generator at tau = 1, r = 0.
Velocity initial_velocity_pauli(const ChannelSpec& spec);

/// L+ -> L+ + c I. Jump terms are untouched.
ChannelSpec shift_transform(const ChannelSpec& spec, double c);

/// Maps a pseudo-linear NINO channel (g = 1, Omega = kappa I) to its linear
/// dual L+ -> L+ + kappa/2 I, g -> 0. Throws NotPseudoLinear otherwise.
ChannelSpec dualize(const ChannelSpec& spec);

std::string to_string(ChannelClass c);
std::string to_string(TraceConservation t);

}  // namespace blochamp

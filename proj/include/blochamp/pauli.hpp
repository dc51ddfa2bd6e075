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

// Extended Pauli representation of single-qubit operators.
//
// A Hermitian operator X on C^2 is written X = (tau I + r . sigma) / 2. The
// pair (tau, r) ranges over R^4; the PSD cone is the region |r| <= tau with
// tau > 0. Pauli matrices use the standard basis and epsilon^{123} = +1.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <utility>

namespace blochamp {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Vec4c = Eigen::Vector4cd;

/// States with trace below this value sit at the cone apex and are rejected.
inline constexpr double kApexTrace = 1e-9;

/// sigma^mu = (I, sigma^1, sigma^2, sigma^3).
const std::array<Mat2c, 4>& pauli_basis();

/// Complex coordinates of an arbitrary 2x2 operator B = xi_mu sigma^mu.
struct PauliVectorC {
  Vec4c xi = Vec4c::Zero();

  Mat2c to_matrix() const;
  static PauliVectorC from_matrix(const Mat2c& b);
};

/// Real coordinates of a Hermitian operator A = ell_mu sigma^mu.
struct HermitianPauliVector {
  Vec4 ell = Vec4::Zero();

  Mat2c to_matrix() const;
  /// Drops the anti-Hermitian part of `a`.
  static HermitianPauliVector from_matrix(const Mat2c& a);

  double identity_part() const { return ell[0]; }
  Vec3 sigma_part() const { return ell.tail<3>(); }
  /// tr(A) = 2 ell_0.
  double trace() const { return 2.0 * ell[0]; }
  /// tr(sigma^a A) = 2 ell_a.
  Vec3 sigma_traces() const { return 2.0 * ell.tail<3>(); }
};

/// Point (tau, r) of the extended qubit state space. The trace must exceed
/// kApexTrace; cone membership |r| <= tau is not enforced so that off-cone
/// dynamics can be studied.
class PsdState {
 public:
  /// Throws ApexReached when tau < kApexTrace.
  PsdState(double tau, const Vec3& r);

  /// The maximally mixed state I/2 (tau = 1, r = 0).
  static PsdState maximally_mixed();

  double tau() const { return tau_; }
  const Vec3& r() const { return r_; }
  double bloch_length() const { return r_.norm(); }
  /// tau - |r|; nonnegative inside the cone.
  double cone_margin() const { return tau_ - r_.norm(); }
  bool in_cone(double tol = 1e-9) const { return cone_margin() >= -tol; }

 private:
  double tau_;
  Vec3 r_;
};

/// X = (tau I + r . sigma) / 2.
Mat2c reconstruct(const PsdState& state);

/// Inverse of reconstruct for a Hermitian matrix; imaginary parts of the
/// traces are discarded.
PsdState decompose(const Mat2c& x);

/// Eigenvalues ((tau + |r|)/2, (tau - |r|)/2).
std::pair<double, double> spectrum(const PsdState& state);

/// True iff |tau - |r|| <= tol, i.e. X^2 = tau X up to tol.
bool is_pure(const PsdState& state, double tol);

struct PurityEntropy {
  double purity;
  double entropy;  // natural log
};

/// Purity tr(rho^2) and von Neumann entropy of the normalized state X / tau.
/// Entropy is NaN outside the cone.
PurityEntropy purity_entropy(const PsdState& state);

/// tr(X A) = (tau tr(A) + r . tr(sigma A)) / 2.
double trace_product(const PsdState& state, const HermitianPauliVector& obs);

/// <A> = tr(X A) / tr(X). Throws InvalidParams for tau <= 0.
double expectation(const PsdState& state, const HermitianPauliVector& obs);

}  // namespace blochamp

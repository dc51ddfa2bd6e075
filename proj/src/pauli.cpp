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

#include "blochamp/pauli.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "blochamp/errors.hpp"

namespace blochamp {

const std::array<Mat2c, 4>& pauli_basis() {
  static const std::array<Mat2c, 4> basis = [] {
    const Complex i(0.0, 1.0);
    std::array<Mat2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -i, i, 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return basis;
}

Mat2c PauliVectorC::to_matrix() const {
  const auto& s = pauli_basis();
  Mat2c b = Mat2c::Zero();
  for (int mu = 0; mu < 4; ++mu) b += xi[mu] * s[mu];
  return b;
}

PauliVectorC PauliVectorC::from_matrix(const Mat2c& b) {
  // sigma^mu are orthogonal under the trace inner product with norm 2.
  const auto& s = pauli_basis();
  PauliVectorC out;
  for (int mu = 0; mu < 4; ++mu) out.xi[mu] = (s[mu] * b).trace() / 2.0;
  return out;
}

Mat2c HermitianPauliVector::to_matrix() const {
  const auto& s = pauli_basis();
  Mat2c a = Mat2c::Zero();
  for (int mu = 0; mu < 4; ++mu) a += ell[mu] * s[mu];
  return a;
}

HermitianPauliVector HermitianPauliVector::from_matrix(const Mat2c& a) {
  const auto& s = pauli_basis();
  HermitianPauliVector out;
  for (int mu = 0; mu < 4; ++mu) out.ell[mu] = (s[mu] * a).trace().real() / 2.0;
  return out;
}

PsdState::PsdState(double tau, const Vec3& r) : tau_(tau), r_(r) {
  if (!(tau >= kApexTrace)) {
    throw ApexReached("state trace " + std::to_string(tau) +
                      " is below the apex cutoff");
  }
}

PsdState PsdState::maximally_mixed() { return PsdState(1.0, Vec3::Zero()); }

Mat2c reconstruct(const PsdState& state) {
  const auto& s = pauli_basis();
  Mat2c x = state.tau() * s[0];
  for (int a = 0; a < 3; ++a) x += state.r()[a] * s[a + 1];
  return x / 2.0;
}

PsdState decompose(const Mat2c& x) {
  const auto& s = pauli_basis();
  Vec3 r;
  for (int a = 0; a < 3; ++a) r[a] = (s[a + 1] * x).trace().real();
  return PsdState(x.trace().real(), r);
}

std::pair<double, double> spectrum(const PsdState& state) {
  const double len = state.bloch_length();
  return {(state.tau() + len) / 2.0, (state.tau() - len) / 2.0};
}

bool is_pure(const PsdState& state, double tol) {
  return std::abs(state.tau() - state.bloch_length()) <= tol;
}

PurityEntropy purity_entropy(const PsdState& state) {
  const double p = state.bloch_length() / state.tau();
  const double purity = 0.5 * (1.0 + p * p);
  if (p > 1.0 + 1e-12) {
    return {purity, std::numeric_limits<double>::quiet_NaN()};
  }
  double entropy = 0.0;
  for (double lambda : {0.5 * (1.0 + p), 0.5 * (1.0 - p)}) {
    if (lambda > 0.0) entropy -= lambda * std::log(lambda);
  }
  return {purity, entropy};
}

double trace_product(const PsdState& state, const HermitianPauliVector& obs) {
  return 0.5 * (state.tau() * obs.trace() + state.r().dot(obs.sigma_traces()));
}

double expectation(const PsdState& state, const HermitianPauliVector& obs) {
  if (!(state.tau() > 0.0)) {
    throw InvalidParams("expectation requires a positive trace");
  }
  return trace_product(state, obs) / state.tau();
}

}  // namespace blochamp

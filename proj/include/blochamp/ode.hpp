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

// Explicit Runge-Kutta steppers for small fixed-size Eigen states.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace blochamp::ode {

template <class State, class Rhs>
State rk4_step(const Rhs& f, double t, const State& y, double h) {
  const State k1 = f(t, y);
  const State k2 = f(t + h / 2, State(y + (h / 2) * k1));
  const State k3 = f(t + h / 2, State(y + (h / 2) * k2));
  const State k4 = f(t + h, State(y + h * k3));
  return y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

template <class State>
struct EmbeddedStep {
  State y;    // 5th-order solution
  State err;  // difference to the embedded 4th-order solution
};

/// One Dormand-Prince 5(4) step.
template <class State, class Rhs>
EmbeddedStep<State> dopri5_step(const Rhs& f, double t, const State& y,
                                double h) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const State k1 = f(t, y);
  const State k2 = f(t + h / 5, State(y + h * (a21 * k1)));
  const State k3 = f(t + 3 * h / 10, State(y + h * (a31 * k1 + a32 * k2)));
  const State k4 =
      f(t + 4 * h / 5, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const State k5 = f(t + 8 * h / 9,
                     State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
  const State k6 = f(t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                           a64 * k4 + a65 * k5)));
  EmbeddedStep<State> out;
  out.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const State k7 = f(t + h, out.y);
  out.err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  return out;
}

/// Scaled max-norm of an error estimate; values <= 1 meet the tolerance.
template <class State>
double error_ratio(const State& y0, const State& y1, const State& err,
                   double rtol, double atol) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale =
        atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    worst = std::max(worst, std::abs(err(i)) / scale);
  }
  return worst;
}

/// Step-size multiplier for a 5th-order method after an error ratio.
inline double step_factor(double ratio) {
  if (ratio == 0.0) return 5.0;
  return std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
}

}  // namespace blochamp::ode

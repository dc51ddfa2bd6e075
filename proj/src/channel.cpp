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

#include "blochamp/channel.hpp"

#include <algorithm>

#include "blochamp/errors.hpp"

namespace blochamp {

namespace {

constexpr double kZeroTol = 1e-12;

const Complex kI(0.0, 1.0);

int levi_civita(int a, int b, int c) {
  // indices in {0,1,2}; eps_{012} = +1
  return (a - b) * (b - c) * (c - a) / 2;
}

}  // namespace

JumpTerm::JumpTerm(const PauliVectorC& b, int zeta) : b_(b), zeta_(zeta) {
  if (zeta != 1 && zeta != -1) {
    throw InvalidParams("jump sign zeta must be +1 or -1, got " +
                        std::to_string(zeta));
  }
  if (b.xi.norm() == 0.0) {
    throw InvalidParams("jump operator must be nonzero");
  }
}

JumpGenerator jump_generator(const JumpTerm& jump) {
  const auto& s = pauli_basis();
  const Mat2c b = jump.matrix();
  const Mat2c bd = b.adjoint();
  JumpGenerator out;
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 3; ++c) {
      out.G(a, c) = (s[a + 1] * b * s[c + 1] * bd).trace().real() / 2.0;
    }
    out.C[a] = (s[a + 1] * b * bd).trace().real() / 2.0;
  }
  return out;
}

JumpGenerator jump_generator_closed_form(const JumpTerm& jump) {
  const Vec4c& xi = jump.b().xi;
  const Complex x0 = xi[0];
  const double diag = std::norm(x0) - std::norm(xi[1]) - std::norm(xi[2]) -
                      std::norm(xi[3]);
  JumpGenerator out;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double v = (a == b) ? diag : 0.0;
      for (int c = 0; c < 3; ++c) {
        v += 2.0 * std::imag(std::conj(x0) * xi[c + 1]) * levi_civita(a, b, c);
      }
      v += 2.0 * std::real(std::conj(xi[a + 1]) * xi[b + 1]);
      out.G(a, b) = v;
    }
  }
  const Vec3 re(xi[1].real(), xi[2].real(), xi[3].real());
  const Vec3 im(xi[1].imag(), xi[2].imag(), xi[3].imag());
  const Vec3 cross = re.cross(im);
  for (int a = 0; a < 3; ++a) {
    out.C[a] = 2.0 * std::real(std::conj(x0) * xi[a + 1]) + 2.0 * cross[a];
  }
  return out;
}

Mat2c omega_matrix(const ChannelSpec& spec) {
  Mat2c omega = -2.0 * spec.ell.to_matrix();
  for (const auto& j : spec.jumps) {
    const Mat2c b = j.matrix();
    omega -= static_cast<double>(j.zeta()) * (b.adjoint() * b);
  }
  return omega;
}

AffineGenerator assemble(const ChannelSpec& spec) {
  AffineGenerator gen;
  gen.trL = spec.ell.trace();
  gen.G_total = gen.trL * Mat3::Identity();
  gen.C_total = spec.ell.sigma_traces();
  // Omega in Pauli coordinates: B^dag B = sum conj(xi_mu) xi_nu s^mu s^nu has
  // identity part |xi|^2 and sigma part 2 Re(conj(xi_0) xi_a) - 2 (Re x Im)_a.
  Vec4 omega = -2.0 * spec.ell.ell;
  for (const auto& j : spec.jumps) {
    const JumpGenerator jg = jump_generator(j);
    const double zeta = j.zeta();
    gen.G_total += zeta * jg.G;
    gen.C_total += zeta * jg.C;

    const Vec4c& xi = j.b().xi;
    const Vec3 re(xi[1].real(), xi[2].real(), xi[3].real());
    const Vec3 im(xi[1].imag(), xi[2].imag(), xi[3].imag());
    const Vec3 cross = re.cross(im);
    Vec4 bdb;
    bdb[0] = xi.squaredNorm();
    for (int a = 0; a < 3; ++a) {
      bdb[a + 1] = 2.0 * std::real(std::conj(xi[0]) * xi[a + 1]) - 2.0 * cross[a];
    }
    omega -= zeta * bdb;
  }
  gen.omega.ell = omega;
  gen.g = spec.g;
  gen.h = spec.h;
  return gen;
}

Mat2c apply_linear_generator(const ChannelSpec& spec, const Mat2c& x) {
  const Mat2c lp = spec.ell.to_matrix();
  Mat2c out = lp * x + x * lp;
  if (!spec.h.isZero(0.0)) {
    const auto& s = pauli_basis();
    Mat2c h = Mat2c::Zero();
    for (int a = 0; a < 3; ++a) h += spec.h[a] * s[a + 1];
    out += -kI * (h * x - x * h);
  }
  for (const auto& j : spec.jumps) {
    const Mat2c b = j.matrix();
    out += static_cast<double>(j.zeta()) * (b * x * b.adjoint());
  }
  return out;
}

Mat2c apply_generator(const ChannelSpec& spec, const Mat2c& x) {
  Mat2c out = apply_linear_generator(spec, x);
  if (spec.g != 0.0) {
    out += spec.g * (x * omega_matrix(spec)).trace() * x;
  }
  return out;
}

double generator_scale(const ChannelSpec& spec) {
  double scale = spec.ell.ell.cwiseAbs().maxCoeff();
  for (const auto& j : spec.jumps) scale += j.b().xi.squaredNorm();
  return std::max(1.0, scale);
}

bool omega_vanishes(const ChannelSpec& spec) {
  const Vec4 omega = assemble(spec).omega.ell;
  return omega.cwiseAbs().maxCoeff() <= kZeroTol * generator_scale(spec);
}

bool is_pseudo_linear(const ChannelSpec& spec) {
  const Vec4 omega = assemble(spec).omega.ell;
  const double bound = kZeroTol * std::max(1.0, omega.norm());
  return omega.tail<3>().cwiseAbs().maxCoeff() <= bound;
}

Velocity initial_velocity(const ChannelSpec& spec) {
  Mat2c dx = Mat2c::Zero();
  for (const auto& j : spec.jumps) {
    const Mat2c b = j.matrix();
    dx += 0.5 * static_cast<double>(j.zeta()) *
          (b * b.adjoint() - b.adjoint() * b);
  }
  const Mat2c omega = omega_matrix(spec);
  dx -= omega / 2.0;
  dx += spec.g * omega.trace() / 4.0 * Mat2c::Identity();

  const auto& s = pauli_basis();
  Velocity v;
  v.dtau = dx.trace().real();
  for (int a = 0; a < 3; ++a) v.dr[a] = (s[a + 1] * dx).trace().real();
  return v;
}

Velocity initial_velocity_pauli(const ChannelSpec& spec) {
  const AffineGenerator gen = assemble(spec);
  const double tr_x_omega = gen.tr_x_omega(1.0, Vec3::Zero());
  Velocity v;
  v.dr = gen.C_total;
  v.dtau = (gen.g - 1.0) * tr_x_omega;
  return v;
}

Classification classify(const ChannelSpec& spec) {
  Classification c;
  c.cp = std::all_of(spec.jumps.begin(), spec.jumps.end(),
                     [](const JumpTerm& j) { return j.zeta() == 1; });
  c.linear = spec.g == 0.0;
  const bool omega_zero = omega_vanishes(spec);
  if (c.linear && !omega_zero) {
    throw NotTracePreserving(
        "linear channel (g = 0) with nonzero Omega does not conserve trace");
  }
  c.channel_class = c.linear ? ChannelClass::kLinearPtp : ChannelClass::kNino;
  if (!c.linear && is_pseudo_linear(spec)) {
    c.pseudo_linear = true;
    c.kappa = assemble(spec).omega.ell[0];
  }
  c.unital = initial_velocity(spec).norm() <= kZeroTol;
  if (c.linear || omega_zero) {
    c.trace = TraceConservation::kUnconditional;
    c.trace_plane = 1.0;
  } else {
    c.trace = TraceConservation::kOnFixedPlane;
    c.trace_plane = 1.0 / spec.g;
  }
  return c;
}

ChannelSpec shift_transform(const ChannelSpec& spec, double c) {
  ChannelSpec out = spec;
  out.ell.ell[0] += c;
  return out;
}

ChannelSpec dualize(const ChannelSpec& spec) {
  if (std::abs(spec.g - 1.0) > kZeroTol) {
    throw NotPseudoLinear("duality map requires g = 1");
  }
  if (!is_pseudo_linear(spec)) {
    throw NotPseudoLinear("duality map requires Omega proportional to I");
  }
  const double kappa = assemble(spec).omega.ell[0];
  ChannelSpec out = shift_transform(spec, kappa / 2.0);
  out.g = 0.0;
  if (!out.name.empty()) out.name += "_dual";
  return out;
}

std::string to_string(ChannelClass c) {
  switch (c) {
    case ChannelClass::kLinearPtp:
      return "linear_ptp";
    case ChannelClass::kNino:
      return "nino";
  }
  return "unknown";
}

std::string to_string(TraceConservation t) {
  switch (t) {
    case TraceConservation::kUnconditional:
      return "unconditional";
    case TraceConservation::kOnFixedPlane:
      return "fixed_plane";
  }
  return "unknown";
}

}  // namespace blochamp

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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "blochamp/errors.hpp"
#include "blochamp/pauli.hpp"
#include "random_inputs.hpp"

using namespace blochamp;
using doctest::Approx;

namespace {

double max_abs(const Mat2c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("reconstruct matches direct substitution") {
  const Complex i(0, 1);
  Mat2c up;
  up << 1, 0, 0, 0;
  CHECK(max_abs(reconstruct(PsdState(1, Vec3(0, 0, 1))) - up) < 1e-15);
  CHECK(max_abs(reconstruct(PsdState(1, Vec3::Zero())) - 0.5 * Mat2c::Identity()) < 1e-15);
  Mat2c m;
  m << 1, (1.0 - i) / 2.0, (1.0 + i) / 2.0, 1;
  CHECK(max_abs(reconstruct(PsdState(2, Vec3(1, 1, 0))) - m) < 1e-15);
}

TEST_CASE("decompose inverts reconstruct on random cone states") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tau(0.1, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const PsdState s = testing::random_state(rng, tau(rng));
    const PsdState back = decompose(reconstruct(s));
    CHECK(std::abs(back.tau() - s.tau()) <= 1e-12);
    CHECK((back.r() - s.r()).norm() <= 1e-12);
  }
}

TEST_CASE("spectrum examples") {
  auto [a, b] = spectrum(PsdState(1, Vec3(1, 0, 0)));
  CHECK(a == Approx(1.0));
  CHECK(b == Approx(0.0));
  std::tie(a, b) = spectrum(PsdState(1, Vec3::Zero()));
  CHECK(a == Approx(0.5));
  CHECK(b == Approx(0.5));
  std::tie(a, b) = spectrum(PsdState(2, Vec3(0.6, 0, 0.8)));
  CHECK(a == Approx(1.5));
  CHECK(b == Approx(0.5));
}

TEST_CASE("spectrum agrees with a dense eigensolve") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const PsdState s = testing::random_state(rng, 0.5 + (k % 5));
    Eigen::SelfAdjointEigenSolver<Mat2c> es(reconstruct(s));
    const auto [hi, lo] = spectrum(s);
    CHECK(std::abs(es.eigenvalues()[0] - lo) <= 1e-12);
    CHECK(std::abs(es.eigenvalues()[1] - hi) <= 1e-12);
  }
}

TEST_CASE("is_pure") {
  CHECK(is_pure(PsdState(1, Vec3(0, 0, 1)), 1e-9));
  CHECK_FALSE(is_pure(PsdState(1, Vec3::Zero()), 1e-9));
  CHECK(is_pure(PsdState(1, Vec3(1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0)), 1e-9));
}

TEST_CASE("is_pure iff the eigenvalues are 0 and tau") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 500; ++k) {
    const double tau = 0.5 + k % 3;
    const Vec3 dir = testing::random_unit(rng);
    const double len = (k % 2 == 0) ? tau : tau * 0.7;
    const PsdState s(tau, len * dir);
    Eigen::SelfAdjointEigenSolver<Mat2c> es(reconstruct(s));
    const bool dense = std::abs(es.eigenvalues()[0]) <= 1e-9 &&
                       std::abs(es.eigenvalues()[1] - tau) <= 1e-9;
    CHECK(is_pure(s, 1e-9) == dense);
  }
}

TEST_CASE("purity and entropy") {
  auto pe = purity_entropy(PsdState(1, Vec3::Zero()));
  CHECK(pe.purity == Approx(0.5));
  CHECK(pe.entropy == Approx(std::log(2.0)));
  pe = purity_entropy(PsdState(1, Vec3(1, 0, 0)));
  CHECK(pe.purity == Approx(1.0));
  CHECK(pe.entropy == Approx(0.0));
  pe = purity_entropy(PsdState(2, Vec3(1, 0, 0)));
  CHECK(pe.purity == Approx(0.625));
  CHECK(pe.entropy == Approx(-(0.75 * std::log(0.75) + 0.25 * std::log(0.25))));
  CHECK(std::isnan(purity_entropy(PsdState(1, Vec3(1.5, 0, 0))).entropy));
}

TEST_CASE("expectation") {
  HermitianPauliVector s3;
  s3.ell << 0, 0, 0, 1;
  CHECK(expectation(PsdState(1, Vec3(0, 0, 1)), s3) == Approx(1.0));

  HermitianPauliVector omega;  // 2 (sigma^1 - I)
  omega.ell << -2, 2, 0, 0;
  CHECK(trace_product(PsdState(1, Vec3::Zero()), omega) == Approx(-2.0));

  HermitianPauliVector id;
  id.ell << 1, 0, 0, 0;
  CHECK(expectation(PsdState(2, Vec3::Zero()), id) == Approx(1.0));
  CHECK(trace_product(PsdState(2, Vec3::Zero()), id) == Approx(2.0));
}

TEST_CASE("expectation is invariant under rescaling") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 200; ++k) {
    const PsdState s = testing::random_state(rng);
    HermitianPauliVector a;
    a.ell << u(rng), u(rng), u(rng), u(rng);
    const double c = 0.1 + 5.0 * (u(rng) + 1.0);
    CHECK(expectation(PsdState(c * s.tau(), c * s.r()), a) ==
          Approx(expectation(s, a)).epsilon(1e-12));
  }
}

TEST_CASE("Pauli coordinates round-trip through matrices") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 100; ++k) {
    PauliVectorC b;
    for (int i = 0; i < 4; ++i) b.xi[i] = Complex(u(rng), u(rng));
    CHECK((PauliVectorC::from_matrix(b.to_matrix()).xi - b.xi).norm() < 1e-14);
    HermitianPauliVector a;
    a.ell << u(rng), u(rng), u(rng), u(rng);
    CHECK((HermitianPauliVector::from_matrix(a.to_matrix()).ell - a.ell).norm() < 1e-14);
    CHECK(a.trace() == Approx(a.to_matrix().trace().real()));
  }
}

TEST_CASE("states at the apex are rejected") {
  CHECK_THROWS_AS(PsdState(0.0, Vec3::Zero()), ApexReached);
  CHECK_THROWS_AS(PsdState(1e-10, Vec3::Zero()), ApexReached);
  CHECK_NOTHROW(PsdState(1e-9, Vec3::Zero()));
  CHECK_FALSE(PsdState(1, Vec3(2, 0, 0)).in_cone());
}

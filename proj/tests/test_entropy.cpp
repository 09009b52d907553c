// Copyright 2026 The asymdist Authors
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

#include <cmath>
#include <random>

#include "asymdist/entropy.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace asymdist;
using namespace testing_support;

namespace {
const DensityMatrix kP = DensityMatrix::from_probabilities({0.75, 0.25});
const DensityMatrix kQ = DensityMatrix::from_probabilities({0.5, 0.5});
const DensityMatrix k0 = DensityMatrix::basis_state(2, 0);
const DensityMatrix k1 = DensityMatrix::basis_state(2, 1);

DensityMatrix product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(HermitianMatrix::hermitian_part(kron(a.matrix(), b.matrix())));
}
}  // namespace

TEST_CASE("extended reals") {
  CHECK(ExtendedReal::infinity().is_infinite());
  CHECK(ExtendedReal::infinity().to_string() == "inf");
  CHECK(ExtendedReal::infinity().exp2_neg() == 0.0);
  CHECK(ExtendedReal(2.0).exp2_neg() == 0.25);
  CHECK_THROWS_AS(ExtendedReal(std::nan("")), InvalidInput);
}

TEST_CASE("Renyi orders") {
  const RenyiOrder o(0.75, RenyiFamily::sandwiched);
  CHECK(o.beta() == doctest::Approx(1.25));
  CHECK(o.gamma() == doctest::Approx(1.5));
  CHECK_THROWS_AS(RenyiOrder(1.0, RenyiFamily::petz), InvalidInput);
  CHECK_THROWS_AS(RenyiOrder(0.0, RenyiFamily::petz), InvalidInput);
  CHECK_THROWS_AS(RenyiOrder(2e6, RenyiFamily::petz), InvalidInput);
  CHECK_THROWS_AS(petz_renyi(kP, kQ, 1.0), InvalidInput);
  CHECK_THROWS_AS(sandwiched_renyi(kP, kQ, 1.0), InvalidInput);
}

TEST_CASE("relative entropy examples") {
  CHECK(rel_entropy(kP, kP).value() == doctest::Approx(0.0));
  const double want = 0.75 * std::log2(1.5) - 0.25;
  CHECK(rel_entropy(kP, kQ).value() == doctest::Approx(want).epsilon(1e-12));
  CHECK(want == doctest::Approx(0.18872).epsilon(1e-4));
  CHECK(rel_entropy(k0, k1).is_infinite());
  CHECK_THROWS_AS(rel_entropy(kP, DensityMatrix::maximally_mixed(3)), InvalidInput);
}

TEST_CASE("Renyi examples") {
  for (double a : {0.3, 0.5, 2.0, 7.0}) {
    CHECK(petz_renyi(kP, kP, a).value() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sandwiched_renyi(kP, kP, a).value() == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(petz_renyi(kP, kQ, 2.0).value() == doctest::Approx(std::log2(1.25)).epsilon(1e-12));
  CHECK(std::log2(1.25) == doctest::Approx(0.32193).epsilon(1e-4));
  const double half = -2.0 * std::log2(std::sqrt(0.375) + std::sqrt(0.125));
  CHECK(petz_renyi(kP, kQ, 0.5).value() == doctest::Approx(half).epsilon(1e-12));
  CHECK(half == doctest::Approx(0.10002).epsilon(1e-4));
  CHECK(sandwiched_renyi(kP, kQ, 2.0).value() == doctest::Approx(std::log2(1.25)).epsilon(1e-12));
  CHECK(petz_renyi(k0, k1, 2.0).is_infinite());
  CHECK(petz_renyi(k0, k1, 0.5).is_infinite());
  CHECK(sandwiched_renyi(k0, k1, 0.5).is_infinite());
  CHECK(petz_renyi(k0, kQ, 0.5).is_finite());
}

TEST_CASE("dmax and trace distance examples") {
  CHECK(dmax_exact(kP, kP).value() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dmax_exact(kP, kQ).value() == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(dmax_exact(k0, k1).is_infinite());
  CHECK(sandwiched_renyi(kP, kQ, 1e6).value() == doctest::Approx(std::log2(1.5)));
  CHECK(trace_distance(kP, kP) == 0.0);
  CHECK(trace_distance(k0, k1) == doctest::Approx(1.0));
  CHECK(trace_distance(kP, kQ) == doctest::Approx(0.25));
}

TEST_CASE("monotonicity in alpha, ordering and commuting agreement") {
  std::mt19937_64 rng(123);
  const double grid[] = {0.3, 0.5, 0.9, 1.5, 3.0};
  for (int rep = 0; rep < 30; ++rep) {
    const DensityMatrix r = random_state(2 + rep % 2, rng), s = random_state(2 + rep % 2, rng);
    const RenyiCurve c(r, s);
    for (int k = 1; k < 5; ++k) {
      CHECK(c.petz(grid[k]).value() >= c.petz(grid[k - 1]).value() - 1e-9);
      CHECK(c.sandwiched(grid[k]).value() >= c.sandwiched(grid[k - 1]).value() - 1e-9);
    }
    for (double a : {1.5, 2.0, 3.0}) CHECK(c.sandwiched(a).value() <= c.petz(a).value() + 1e-9);
    for (double a : {1.0 - 1e-4, 1.0 + 1e-4})
      CHECK(std::abs(c.petz(a).value() - c.relative_entropy().value()) <= 1e-3);
  }
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> p(3), q(3);
    double sp = 0, sq = 0;
    for (int i = 0; i < 3; ++i) sp += p[i] = u(rng), sq += q[i] = u(rng);
    for (int i = 0; i < 3; ++i) p[i] /= sp, q[i] /= sq;
    const auto r = DensityMatrix::from_probabilities(p), s = DensityMatrix::from_probabilities(q);
    for (double a : {0.3, 0.7, 1.5, 4.0}) {
      double acc = 0;
      for (int i = 0; i < 3; ++i) acc += std::pow(p[i], a) * std::pow(q[i], 1 - a);
      const double classical = std::log2(acc) / (a - 1);
      CHECK(petz_renyi(r, s, a).value() == doctest::Approx(classical).epsilon(1e-10));
      CHECK(std::abs(sandwiched_renyi(r, s, a).value() - petz_renyi(r, s, a).value()) <= 1e-9);
    }
  }
}

TEST_CASE("additivity under tensor products") {
  std::mt19937_64 rng(321);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix r1 = random_state(2, rng), s1 = random_state(2, rng);
    const DensityMatrix r2 = random_state(2, rng), s2 = random_state(2, rng);
    const DensityMatrix r = product(r1, r2), s = product(s1, s2);
    for (double a : {0.4, 0.8, 1.7, 2.5}) {
      CHECK(std::abs(petz_renyi(r, s, a).value() - petz_renyi(r1, s1, a).value() - petz_renyi(r2, s2, a).value()) <= 1e-8);
      CHECK(std::abs(sandwiched_renyi(r, s, a).value() - sandwiched_renyi(r1, s1, a).value() -
                     sandwiched_renyi(r2, s2, a).value()) <= 1e-8);
    }
  }
}

TEST_CASE("sandwiched divergence stays below dmax") {
  std::mt19937_64 rng(55);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix r = random_state(2, rng), s = random_state(2, rng);
    const double dm = dmax_exact(r, s).value();
    for (double b : {1.01, 1.5, 2.0, 3.0, 5.0}) CHECK(sandwiched_renyi(r, s, b).value() <= dm + 1e-8);
  }
}

TEST_CASE("support mismatch detection") {
  const DensityMatrix sigma = DensityMatrix::from_probabilities({1.0, 0.0});
  CHECK(petz_renyi(kQ, sigma, 2.0).is_infinite());
  CHECK(sandwiched_renyi(kQ, sigma, 2.0).is_infinite());
  CHECK(dmax_exact(kQ, sigma).is_infinite());
  CHECK(petz_renyi(kQ, sigma, 0.5).value() == doctest::Approx(-2.0 * std::log2(std::sqrt(0.5))));
  CHECK(dmax_exact(sigma, kQ).value() == doctest::Approx(1.0));
  CHECK(support_mismatch(kQ, sigma) == doctest::Approx(0.5));
}

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
#include <vector>

#include "asymdist/bounds.hpp"
#include "asymdist/classical.hpp"
#include "asymdist/exponents.hpp"
#include "asymdist/oracle.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace asymdist;
using testing_support::max_abs;

namespace {
const std::vector<double> kP = {0.75, 0.25};
const std::vector<double> kQ = {0.5, 0.5};
const StatePair kDiag(DensityMatrix::from_probabilities(kP), DensityMatrix::from_probabilities(kQ));
const StatePair kSame(DensityMatrix::from_probabilities(kP), DensityMatrix::from_probabilities(kP));
const StatePair kOrth(DensityMatrix::basis_state(2, 0), DensityMatrix::basis_state(2, 1));
}  // namespace

TEST_CASE("classical fast path by hand") {
  const ClassicalExponents same = classical_fast_path(kP, kP, 1.0);
  CHECK(same.err_exp.value() == doctest::Approx(1.0));
  CHECK(same.sc_exp.value() == doctest::Approx(1.0));
  CHECK(classical_fast_path(kP, kQ, 1.0).err_exp.value() == doctest::Approx(2.0));
  CHECK(classical_fast_path(kP, kQ, 1.0).sc_exp.value() == doctest::Approx(-std::log2(0.75)));
  CHECK(classical_fast_path(kP, kQ, 2.0).err_exp.value() == doctest::Approx(-std::log2(0.625)));
  CHECK(classical_fast_path(kP, kQ, 0.0).dilute_err_exp.value() == doctest::Approx(2.0));
  CHECK(classical_fast_path(kP, kQ, 0.5).dilute_err_exp.value() ==
        doctest::Approx(4.5431).epsilon(1e-4));
  // Outcomes with q = 0 are free.
  const std::vector<double> p0 = {0.5, 0.5}, q0 = {0.0, 1.0};
  CHECK(classical_fast_path(p0, q0, 3.0).distill_error == doctest::Approx(0.5 * (1.0 - 0.125)));
  CHECK_THROWS_AS(classical_fast_path(kP, std::vector<double>{0.5, 0.6}, 1.0), InvalidInput);
  CHECK_THROWS_AS(classical_fast_path(kP, std::vector<double>{1.0}, 1.0), InvalidInput);
}

TEST_CASE("classical fast path matches the SDP on diagonal pairs") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 6; ++k) {
    const int d = 2 + k % 3;
    const DensityMatrix r = random_diagonal_density(d, rng);
    const DensityMatrix s = random_diagonal_density(d, rng);
    std::vector<double> p(d), q(d);
    for (int i = 0; i < d; ++i) {
      p[i] = r.matrix()(i, i).real();
      q[i] = s.matrix()(i, i).real();
    }
    const StatePair pair(r, s);
    for (double m : {0.0, 0.5, 1.0, 2.0}) {
      const ClassicalExponents c = classical_fast_path(p, q, m);
      CHECK(std::abs(err_exp_distill(pair, m).epsilon - c.distill_error) <= 1e-6);
      CHECK(std::abs(err_exp_dilute(pair, m).epsilon - c.dilute_error) <= 1e-6);
    }
  }
}

TEST_CASE("tensor powers are additive for the distillation primal") {
  // At budget n*m the product test of n copies is feasible, so the n-copy
  // success is at least the single-copy success to the n-th power.
  for (int n = 2; n <= 8; ++n) {
    const auto pn = tensor_power(std::span<const double>(kP), n);
    const auto qn = tensor_power(std::span<const double>(kQ), n);
    const double one = 1.0 - classical_fast_path(kP, kQ, 1.0).distill_error;
    const double many = 1.0 - classical_fast_path(pn, qn, n * 1.0).distill_error;
    CHECK(many >= std::pow(one, n) - 1e-12);
  }
}

TEST_CASE("grid oracles on hand examples") {
  CHECK(brute_measurement(kSame, 1.0).value == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(brute_measurement(kDiag, 1.0).value == doctest::Approx(0.75).epsilon(2e-3));
  CHECK(brute_measurement(kOrth, 1.0).value == doctest::Approx(1.0).epsilon(2e-3));

  CHECK(brute_dilution(kDiag, 1.0).distance <= 1e-9);
  CHECK(std::abs(brute_dilution(kDiag, 0.0).distance - 0.25) <= 2e-3);
  CHECK(std::abs(brute_dilution(kDiag, 0.5).distance - (0.75 - std::sqrt(0.5))) <= 2e-3);
  CHECK_THROWS_AS(brute_measurement(StatePair(DensityMatrix::maximally_mixed(3),
                                              DensityMatrix::maximally_mixed(3)),
                                    1.0),
                  InvalidInput);
  CHECK_THROWS_AS((GridSpec{1, 64}.validate()), InvalidInput);
}

TEST_CASE("grid oracles against the SDP") {
  std::mt19937_64 rng(99);
  const GridSpec coarse{24, 24};
  for (int k = 0; k < 5; ++k) {
    const StatePair p = random_pair(2, rng);
    for (double m : {0.5, 1.0, 2.0}) {
      const double sdp_d = 1.0 - err_exp_distill(p, m).epsilon;
      const double grid_d = brute_measurement(p, m, coarse).value;
      CHECK(grid_d <= sdp_d + 1e-7);
      CHECK(sdp_d - grid_d <= 5e-3);
      const double sdp_c = err_exp_dilute(p, m).epsilon;
      const DilutionSearch grid_c = brute_dilution(p, m, coarse);
      CHECK(grid_c.distance >= sdp_c - 1e-7);
      CHECK(grid_c.distance - sdp_c <= 5e-3);
    }
  }
}

TEST_CASE("channel constructors") {
  const DensityMatrix w = DensityMatrix::from_probabilities({0.3, 0.7});
  CHECK(choi_defect(identity_channel(2), 2) <= 1e-12);
  CHECK(choi_defect(replacer_channel(2, w), 2) <= 1e-12);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 5; ++k) {
    const DensityMatrix x = random_density(2, rng);
    CHECK(max_abs(apply_channel(identity_channel(2), x).matrix() - x.matrix()) <= 1e-12);
    CHECK(max_abs(apply_channel(replacer_channel(2, w), x).matrix() - w.matrix()) <= 1e-12);
  }
  const DensityMatrix diag = DensityMatrix::from_probabilities({0.2, 0.8});
  CHECK(max_abs(apply_channel(dephasing_channel(2), diag).matrix() - diag.matrix()) <= 1e-12);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const HermitianMatrix j = random_cptp(2, 3, seed);
    CHECK(j.dim() == 6);
    CHECK(choi_defect(j, 2) <= 1e-10);
    CHECK(max_abs(random_cptp(2, 3, seed).matrix() - j.matrix()) == 0.0);
  }
  CHECK_THROWS_AS(apply_channel(identity_channel(3), w), InvalidInput);
}

TEST_CASE("processing makes distillation harder and dilution easier") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k) {
    const StatePair p = random_pair(2, rng);
    const StatePair q = apply_channel(random_cptp(2, 2, rng()), p);
    for (double m : {0.0, 1.0, 2.0}) {
      CHECK(err_exp_distill(p, m).epsilon <= err_exp_distill(q, m).epsilon + 1e-6);
      CHECK(err_exp_dilute(p, m).epsilon >= err_exp_dilute(q, m).epsilon - 1e-6);
    }
  }
}

TEST_CASE("the dilution exponent can grow under processing") {
  // Replacing both states by pi_2 makes dilution free: E_c goes from 2 to +inf,
  // so E_c(rho||sigma) >= E_c(N rho||N sigma) is the wrong way round.
  const HermitianMatrix n = replacer_channel(2, DensityMatrix::maximally_mixed(2));
  const ExponentResult before = err_exp_dilute(kDiag, 0.0);
  const ExponentResult after = err_exp_dilute(apply_channel(n, kDiag), 0.0);
  CHECK(before.value.value() == doctest::Approx(2.0));
  CHECK(after.value.is_infinite());
}

TEST_CASE("seeding") {
  std::mt19937_64 a(5), b(5);
  CHECK(max_abs(random_density(3, a).matrix() - random_density(3, b).matrix()) == 0.0);
  CHECK(default_seed() > 0);
}

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
#include <limits>
#include <random>

#include "asymdist/bounds.hpp"
#include "asymdist/entropy.hpp"
#include "asymdist/oracle.hpp"
#include "asymdist/relations.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace asymdist;

namespace {
const StatePair kDiag(DensityMatrix::from_probabilities({0.75, 0.25}),
                      DensityMatrix::from_probabilities({0.5, 0.5}));
const StatePair kSame(DensityMatrix::from_probabilities({0.75, 0.25}),
                      DensityMatrix::from_probabilities({0.75, 0.25}));
const StatePair kOrth(DensityMatrix::basis_state(2, 0), DensityMatrix::basis_state(2, 1));

constexpr double kBudgets[] = {0.0, 0.5, 1.0, 2.0, 4.0};

void check_report(const BoundReport& b) {
  CAPTURE(b.name);
  CHECK(b.holds());
  for (const Check& c : b.checks) {
    CAPTURE(c.name);
    CHECK(c.holds());
  }
}

void check_relation(const RelationReport& r) {
  CAPTURE(r.name);
  CHECK(!r.checks.empty());
  for (const Check& c : r.checks) {
    CAPTURE(c.name);
    CAPTURE(c.defect());
    CHECK(c.holds());
  }
}
}  // namespace

TEST_CASE("checks compare in the extended sense") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(Check{"a", 1.0, inf, Check::Kind::le, 0.0}.holds());
  CHECK_FALSE(Check{"b", inf, 1.0, Check::Kind::le, 0.0}.holds());
  CHECK(Check{"c", inf, inf, Check::Kind::eq, 0.0}.holds());
  CHECK(Check{"d", 1.0, 1.0 + 1e-9, Check::Kind::eq, 1e-8}.holds());
  CHECK_FALSE(Check{"e", 1.0, 1.1, Check::Kind::eq, 1e-8}.holds());
}

TEST_CASE("Neyman-Pearson tests") {
  const MeasurementOperator t = np_test_operator(0.5, kDiag);
  CHECK(std::abs(t.matrix()(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(t.matrix()(1, 1)) < 1e-12);
  // 0.5 * 0.25 + 0.5 * 0.5
  CHECK(np_error(0.5, kDiag, t) == doctest::Approx(0.375));
  CHECK(helstrom_error(0.5, kDiag) == doctest::Approx(0.375));
  CHECK(np_error(0.5, kOrth, np_test_operator(0.5, kOrth)) == doctest::Approx(0.0));
  for (double p : {0.2, 0.5, 0.7})
    CHECK(helstrom_error(p, kSame) == doctest::Approx(std::min(p, 1.0 - p)));
  CHECK_THROWS_AS(np_test_operator(0.0, kDiag), InvalidInput);
}

TEST_CASE("bounds on the diagonal pair") {
  const BoundReport sc = bound_sc_distill(kDiag, 2.0);
  CHECK(sc.bound_value <= -std::log2(0.375) + 1e-7);
  CHECK(sc.bound_value > 0.0);
  check_report(sc);

  const BoundReport err = bound_err_distill(kDiag, 1.0);
  CHECK(err.bound_value <= 2.0 + 1e-7);
  check_report(err);
  REQUIRE(err.certificate.has_value());
  CHECK(err.certificate->type_one >= 0.0);

  const BoundReport scc = bound_sc_dilute(kDiag, 0.0);
  CHECK(scc.bound_value <= -std::log2(0.75) + 1e-7);
  check_report(scc);
  CHECK(scc.branches.size() == 2);

  const BoundReport sd = bound_sd22(kDiag, 0.0);
  CHECK(sd.bound_value > 0.0);
  CHECK(sd.bound_value <= -std::log2(0.75) + 1e-7);
  // Pointwise against the halved Petz branch.
  for (double a = 0.05; a < 1.0; a += 0.05) {
    const double da = petz_renyi(kDiag.rho(), kDiag.sigma(), a).value();
    CHECK(sd.bound_value >= 0.5 * (1.0 - a) * da - 1e-9);
  }
}

TEST_CASE("bounds on identical states") {
  const BoundReport err = bound_err_distill(kSame, 1.0);
  CHECK(err.vacuous);
  CHECK(err.bound_value <= 0.0);
  CHECK(bound_sc_dilute(kSame, 1.0).bound_value <= 1e-9);
  CHECK(bound_sd22(kSame, 1.0).bound_value <= 1e-9);
  // D~_a = 0, so the supremum approaches m.
  const BoundReport sc = bound_sc_distill(kSame, 1.0);
  CHECK(sc.bound_value <= 1.0 + 1e-7);
  CHECK(sc.bound_value > 0.99);
}

TEST_CASE("asymptotic right-hand sides") {
  const double d = rel_entropy(kDiag.rho(), kDiag.sigma()).value();
  CHECK(std::abs(hoeffding_rhs(kDiag, d)) <= 1e-4);
  CHECK(std::abs(sc_rhs(kDiag, d)) <= 1e-4);
  CHECK(hoeffding_rhs(kDiag, 0.1) > 0.0);
  CHECK(sc_rhs(kDiag, 0.4) > 0.0);
  CHECK(sc_rhs(kSame, 1.0) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("relations on the diagonal pair") {
  const RelationReport dmin = dmin_errexp_link(kDiag, 0.25);
  CHECK(dmin.m.value() == doctest::Approx(1.0).epsilon(1e-7));
  check_relation(dmin);
  const RelationReport same = dmin_errexp_link(kSame, 0.5);
  CHECK(same.m.value() == doctest::Approx(1.0).epsilon(1e-7));
  check_relation(same);

  const RelationReport dmax = dmax_errexp_link(kDiag, 0.25);
  CHECK(dmax.m.value() == 0.0);
  check_relation(dmax);

  check_relation(dmin_swap_identity(kDiag, 0.25));
  check_relation(dmin_swap_identity(kSame, 0.5));
  check_relation(bound_err_dilute_check(kDiag, 0.0, {2.0}));
  check_relation(cross_bounds(kDiag, 0.0, 1.0));
  check_relation(cross_bounds(kSame, 1.0, 1.0));
}

TEST_CASE("relations under the infinity convention") {
  for (double eps : {0.1, 0.3}) {
    check_relation(dmin_errexp_link(kOrth, eps));
    check_relation(dmax_errexp_link(kOrth, eps));
  }
}

TEST_CASE("bounds and round trips on random qubit pairs") {
  std::mt19937_64 rng(2026);
  for (int k = 0; k < 6; ++k) {
    const StatePair p = random_pair(2, rng);
    for (double eps : {0.1, 0.3}) {
      check_relation(dmin_errexp_link(p, eps));
      check_relation(dmax_errexp_link(p, eps));
      check_relation(dmin_swap_identity(p, eps));
    }
    for (double m : kBudgets) {
      check_report(bound_sc_distill(p, m));
      check_report(bound_err_distill(p, m));
      check_report(bound_sc_dilute(p, m));
      const BoundReport sd = bound_sd22(p, m);
      check_report(sd);
      const double petz = bound_sc_dilute(p, m).branches.front().value;
      CHECK(std::max(petz, 0.0) <= std::max(sd.bound_value, 0.0) + 1e-9);
      check_relation(bound_err_dilute_check(p, m));
      for (double kk : {0.0, 1.0}) check_relation(cross_bounds(p, kk, m));
    }
  }
}

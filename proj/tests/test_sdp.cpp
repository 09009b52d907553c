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
#include <sstream>

#include "asymdist/sdp.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace asymdist;
using namespace asymdist::sdp;
using namespace testing_support;

namespace {

BlockSpec herm(int d) { return {d, BlockKind::hermitian}; }

// sup Tr[A X] s.t. X <= B, X >= 0.
SdpProblem box(const CMatrix& a, const CMatrix& b) {
  const int d = static_cast<int>(a.rows());
  return SdpProblem::from_map({herm(d)}, {{herm(d), false}}, BlockMatrix({a}), BlockMatrix({b}),
                              [](const BlockMatrix& x) { return x; });
}

// sup 0.75 x1 + 0.25 x2 s.t. 0.5 x1 + 0.5 x2 <= 0.25, x <= 1, x >= 0.
SdpProblem hand_lp() {
  const CMatrix a = HermitianMatrix::diagonal({0.75, 0.25}).matrix();
  const CMatrix s = HermitianMatrix::diagonal({0.5, 0.5}).matrix();
  return SdpProblem::from_map(
      {{2, BlockKind::real_symmetric}}, {{{1, BlockKind::real_symmetric}, false}, {{2, BlockKind::real_symmetric}, false}},
      BlockMatrix({a}), BlockMatrix({CMatrix::Constant(1, 1, 0.25), CMatrix::Identity(2, 2)}),
      [s](const BlockMatrix& x) {
        const CMatrix d = x[0].diagonal().asDiagonal();
        return BlockMatrix({CMatrix::Constant(1, 1, (s * d).trace()), d});
      });
}

// Random instance: sup Tr[A X] s.t. Tr[C_k X] <= b_k, X <= I.
SdpProblem random_problem(int d, std::mt19937_64& rng, bool real) {
  std::vector<CMatrix> cs;
  for (int k = 0; k < 3; ++k) {
    CMatrix c = gaussian(d, d, rng);
    if (real) c = c.real().cast<Complex>();
    cs.push_back((c + c.adjoint()) / 2.0);
  }
  CMatrix a = gaussian(d, d, rng);
  if (real) a = a.real().cast<Complex>();
  a = ((a + a.adjoint()) / 2.0).eval();
  const BlockKind kind = real ? BlockKind::real_symmetric : BlockKind::hermitian;
  return SdpProblem::from_map(
      {{d, kind}}, {{{3, kind}, false}, {{d, kind}, false}}, BlockMatrix({a}),
      BlockMatrix({CMatrix::Identity(3, 3), CMatrix::Identity(d, d)}), [cs](const BlockMatrix& x) {
        CMatrix t = CMatrix::Zero(3, 3);
        for (int k = 0; k < 3; ++k) t(k, k) = (cs[k] * x[0]).trace().real();
        return BlockMatrix({t, x[0]});
      });
}

// Real embedding [[Re, -Im], [Im, Re]] of a Hermitian problem of the above type.
CMatrix embed(const CMatrix& h) {
  const int d = static_cast<int>(h.rows());
  Eigen::MatrixXd e(2 * d, 2 * d);
  e << h.real(), -h.imag(), h.imag(), h.real();
  return e.cast<Complex>();
}

}  // namespace

TEST_CASE("coordinates are an orthonormal isometry") {
  std::mt19937_64 rng(1);
  for (BlockKind k : {BlockKind::hermitian, BlockKind::real_symmetric}) {
    const BlockSpec spec{4, k};
    CMatrix h = gaussian(4, 4, rng);
    if (k == BlockKind::real_symmetric) h = h.real().cast<Complex>();
    h = ((h + h.adjoint()) / 2.0).eval();
    std::vector<double> c(spec.coords());
    write_coords(h, spec, c.data());
    CHECK(max_abs(from_coords(c.data(), spec) - h) < 1e-14);
    double n2 = 0;
    for (double v : c) n2 += v * v;
    CHECK(n2 == doctest::Approx(h.squaredNorm()));
  }
}

TEST_CASE("identity instance") {
  const SdpProblem p = box(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
  const SdpSolution s = solve(p);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.primal_value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(max_abs(s.x[0] - CMatrix::Identity(2, 2)) < 1e-6);
  CHECK(s.primal_value <= s.dual_value + 1e-8);
  const SlacknessReport r = check_slackness(p, s);
  CHECK(r.residual_1 <= 1e-7);
  CHECK(r.residual_2 <= 1e-7);
}

TEST_CASE("slackness thresholds scale with the data") {
  const SdpProblem p = box(2.0 * CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
  const SdpSolution s = solve(p);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.primal_value == doctest::Approx(4.0).epsilon(1e-8));
  const SlacknessReport r = check_slackness(p, s);
  CHECK(r.residual_1 <= slackness_threshold(p, 1e-8));
  CHECK(r.residual_2 <= slackness_threshold(p, 1e-8));
  CHECK(slackness_threshold(p, 1e-8) > slackness_threshold(box(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)), 1e-8));
}

TEST_CASE("hand-solved linear program") {
  const SdpProblem p = hand_lp();
  const SdpSolution s = solve(p);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.primal_value == doctest::Approx(0.375).epsilon(1e-8));
  CHECK(s.dual_value == doctest::Approx(0.375).epsilon(1e-8));
  CHECK(std::abs(s.x[0](0, 0).real() - 0.5) < 1e-6);
  CHECK(std::abs(s.x[0](1, 1).real()) < 1e-6);
  const SlacknessReport r = check_slackness(p, s);
  const double thr = slackness_threshold(p, 1e-8);
  CHECK(r.residual_1 <= thr);
  CHECK(r.residual_2 <= thr);

  SdpSolution bad = s;
  bad.x[0](1, 1) += 0.1;
  CHECK(check_slackness(p, bad).residual_2 > thr);
}

TEST_CASE("random instances: weak duality, slackness, unitary invariance") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + rep % 3;
    const SdpProblem p = random_problem(d, rng, false);
    const SdpSolution s = solve(p);
    REQUIRE(s.status == Status::optimal);
    CHECK(s.primal_value <= s.dual_value + 1e-8);
    CHECK(std::abs(s.gap) <= 1e-7);
    CHECK(s.primal_infeasibility <= 1e-8);
    CHECK(s.dual_infeasibility <= 1e-8);
    const SlacknessReport r = check_slackness(p, s);
    CHECK(r.residual_1 <= slackness_threshold(p, 1e-8));
    CHECK(r.residual_2 <= slackness_threshold(p, 1e-8));

    // Conjugate every Hermitian datum by the same unitary.
    const CMatrix u = Eigen::HouseholderQR<CMatrix>(gaussian(d, d, rng)).householderQ();
    const Eigen::MatrixXd phi = p.phi();
    const SdpProblem q = SdpProblem::from_map(
        {herm(d)}, p.constraint_blocks(), BlockMatrix({u * p.objective()[0] * u.adjoint()}), p.bound(),
        [&](const BlockMatrix& x) { return p.apply(BlockMatrix({u.adjoint() * x[0] * u})); });
    const SdpSolution t = solve(q);
    REQUIRE(t.status == Status::optimal);
    CHECK(std::abs(t.primal_value - s.primal_value) <= 1e-7);
  }
}

TEST_CASE("complex problems agree with their real embeddings") {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + rep % 2;
    const SdpProblem p = random_problem(d, rng, false);
    const SdpSolution s = solve(p);
    // Embedding doubles traces, so the bounds on Tr[C X] double as well.
    const auto cons = p.constraint_blocks();
    std::vector<ConstraintBlock> rc{{{3, BlockKind::real_symmetric}, false}, {{2 * d, BlockKind::real_symmetric}, false}};
    const SdpProblem e = SdpProblem::from_map(
        {{2 * d, BlockKind::real_symmetric}}, rc, BlockMatrix({embed(p.objective()[0])}),
        BlockMatrix({2.0 * CMatrix::Identity(3, 3), CMatrix::Identity(2 * d, 2 * d)}),
        [&](const BlockMatrix& x) {
          CMatrix t = CMatrix::Zero(3, 3);
          const BlockMatrix img = p.apply(BlockMatrix({CMatrix::Identity(d, d)}));
          (void)img;
          for (int k = 0; k < 3; ++k) {
            // Recover C_k from the map by applying it to basis directions.
            CMatrix ck = CMatrix::Zero(d, d);
            const Layout& pl = p.primal_layout();
            for (int c = 0; c < pl.total(); ++c) ck += p.phi()(k, c) * pl.basis_element(c)[0];
            t(k, k) = (embed(ck) * x[0]).trace().real();
          }
          return BlockMatrix({t, x[0]});
        });
    const SdpSolution r = solve(e);
    REQUIRE(s.status == Status::optimal);
    REQUIRE(r.status == Status::optimal);
    CHECK(std::abs(r.primal_value / 2.0 - s.primal_value) <= 1e-7);
  }
}

TEST_CASE("equality blocks and redundant rows") {
  // sup Tr[A X] over density matrices: the largest eigenvalue of A. The
  // trace row is stated twice to exercise dependent-row removal.
  std::mt19937_64 rng(4);
  const HermitianMatrix a = random_hermitian(3, rng);
  const SdpProblem p = SdpProblem::from_map(
      {herm(3)}, {{{1, BlockKind::real_symmetric}, true}, {{1, BlockKind::real_symmetric}, true}},
      BlockMatrix({a.matrix()}), BlockMatrix({CMatrix::Constant(1, 1, 1.0), CMatrix::Constant(1, 1, 1.0)}),
      [](const BlockMatrix& x) {
        const CMatrix t = CMatrix::Constant(1, 1, x[0].trace().real());
        return BlockMatrix({t, t});
      });
  const SdpSolution s = solve(p);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.primal_value == doctest::Approx(max_eigenvalue(a)).epsilon(1e-8));
}

TEST_CASE("infeasibility detection") {
  const SdpProblem p = box(CMatrix::Identity(2, 2), -CMatrix::Identity(2, 2));
  CHECK(solve(p).status == Status::primal_infeasible);
  // sup Tr[X] with no upper bound on X: primal unbounded, dual infeasible.
  const SdpProblem q = SdpProblem::from_map(
      {herm(2)}, {{{1, BlockKind::real_symmetric}, false}}, BlockMatrix({CMatrix::Identity(2, 2)}),
      BlockMatrix({CMatrix::Constant(1, 1, 1.0)}), [](const BlockMatrix& x) {
        return BlockMatrix({CMatrix::Constant(1, 1, x[0](0, 0).real() - x[0](1, 1).real())});
      });
  CHECK(solve(q).status == Status::dual_infeasible);
  // Inconsistent equalities.
  const SdpProblem r = SdpProblem::from_map(
      {herm(2)}, {{{1, BlockKind::real_symmetric}, true}, {{1, BlockKind::real_symmetric}, true}},
      BlockMatrix({CMatrix::Identity(2, 2)}), BlockMatrix({CMatrix::Constant(1, 1, 1.0), CMatrix::Constant(1, 1, 2.0)}),
      [](const BlockMatrix& x) {
        const CMatrix t = CMatrix::Constant(1, 1, x[0].trace().real());
        return BlockMatrix({t, t});
      });
  CHECK(solve(r).status == Status::primal_infeasible);
}

TEST_CASE("Slater probes") {
  const SlaterReport empty = probe_slater(box(CMatrix::Identity(2, 2), CMatrix::Zero(2, 2)));
  CHECK(empty.primal.feasible);
  CHECK_FALSE(empty.primal_strict());
  const SlaterReport ok = probe_slater(box(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)));
  CHECK(ok.primal_strict());
  CHECK(ok.dual_strict());
  const SlaterReport bad = probe_slater(box(CMatrix::Identity(2, 2), -CMatrix::Identity(2, 2)));
  CHECK_FALSE(bad.primal.feasible);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(SdpProblem({herm(2)}, {{herm(2), false}}, BlockMatrix({CMatrix::Identity(2, 2)}),
                             BlockMatrix({CMatrix::Identity(2, 2)}), Eigen::MatrixXd::Zero(3, 4)),
                  InvalidInput);
  CMatrix nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(box(nh, CMatrix::Identity(2, 2)), InvalidInput);
  // A map that does not preserve Hermiticity.
  CHECK_THROWS_AS(SdpProblem::from_map({herm(2)}, {{herm(2), false}}, BlockMatrix({CMatrix::Identity(2, 2)}),
                                       BlockMatrix({CMatrix::Identity(2, 2)}),
                                       [](const BlockMatrix& x) {
                                         CMatrix m = x[0];
                                         m(0, 1) += 1.0;
                                         return BlockMatrix({m});
                                       }),
                  InvalidInput);
}

TEST_CASE("dump and load round trip") {
  const SdpProblem p = hand_lp();
  std::stringstream ss;
  dump(p, ss);
  const SdpProblem q = load(ss);
  CHECK((q.phi() - p.phi()).norm() == 0.0);
  CHECK(solve(q).primal_value == doctest::Approx(0.375).epsilon(1e-8));
  std::istringstream broken("asymdist-sdp 1\nprimal_blocks 1\n2 x\n");
  CHECK_THROWS_AS(load(broken), InvalidInput);
}

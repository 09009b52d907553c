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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "asymdist/sdp.hpp"

namespace asymdist::sdp {

namespace {

constexpr double kStrictMargin = 1e-9;
constexpr double kTraceCap = 1e3;

double lowest(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

SideReport from_margin(double margin, bool equalities_ok, bool analytic) {
  SideReport r;
  r.analytic = analytic;
  r.margin = margin;
  r.feasible = equalities_ok && margin >= -kStrictMargin;
  r.strict = equalities_ok && margin > kStrictMargin;
  return r;
}

SideReport primal_at(const SdpProblem& p, const BlockMatrix& x) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& b : x.blocks) margin = std::min(margin, lowest(b));
  const BlockMatrix px = p.apply(x);
  bool eq_ok = true;
  for (std::size_t i = 0; i < px.size(); ++i) {
    const CMatrix slack = p.bound()[i] - px[i];
    if (p.constraint_blocks()[i].equality) {
      eq_ok = eq_ok && slack.cwiseAbs().maxCoeff() <= 1e-9;
    } else {
      margin = std::min(margin, lowest(slack));
    }
  }
  return from_margin(margin, eq_ok, true);
}

SideReport dual_at(const SdpProblem& p, const BlockMatrix& y) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!p.constraint_blocks()[i].equality) margin = std::min(margin, lowest(y[i]));
  const BlockMatrix py = p.apply_adjoint(y);
  for (std::size_t i = 0; i < py.size(); ++i) margin = std::min(margin, lowest(py[i] - p.objective()[i]));
  return from_margin(margin, true, true);
}

SideReport numeric(const SdpProblem& aux, const std::function<SideReport(const SdpSolution&)>& check) {
  SolverOptions opt;
  opt.tol = 1e-9;
  const SdpSolution s = solve(aux, opt);
  if (s.status == Status::primal_infeasible) return SideReport{};
  if (s.status != Status::optimal && s.primal_infeasibility > 1e-6) return SideReport{};
  return check(s);
}

BlockSpec scalar() { return BlockSpec{1, BlockKind::real_symmetric}; }

CMatrix one(double v) { return CMatrix::Constant(1, 1, v); }

// max s over X' >= 0, s >= 0 with X = X' + sI strictly inside every
// inequality by s. Trace of X' is capped to keep the search bounded.
SideReport primal_search(const SdpProblem& p) {
  std::vector<BlockSpec> vars = p.primal_layout().blocks();
  const std::size_t np = vars.size();
  vars.push_back(scalar());
  std::vector<ConstraintBlock> cons = p.constraint_blocks();
  cons.push_back({scalar(), false});
  cons.push_back({scalar(), false});
  const BlockMatrix ident = BlockMatrix::identity(p.primal_layout().blocks());
  const BlockMatrix phi_id = p.apply(ident);
  auto map = [&](const BlockMatrix& v) {
    BlockMatrix x(std::vector<CMatrix>(v.blocks.begin(), v.blocks.begin() + np));
    const double s = v[np](0, 0).real();
    BlockMatrix out = p.apply(x);
    double tr = s * ident.frobenius() * ident.frobenius();
    for (const auto& b : x.blocks) tr += b.trace().real();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += s * phi_id[i];
      if (!p.constraint_blocks()[i].equality)
        out[i] += s * CMatrix::Identity(out[i].rows(), out[i].cols());
    }
    out.blocks.push_back(one(s));
    out.blocks.push_back(one(tr));
    return out;
  };
  BlockMatrix obj = BlockMatrix::zeros(vars);
  obj[np](0, 0) = 1.0;
  BlockMatrix bound = p.bound();
  bound.blocks.push_back(one(1.0));
  bound.blocks.push_back(one(kTraceCap * (1.0 + p.bound().frobenius())));
  const SdpProblem aux = SdpProblem::from_map(vars, cons, obj, bound, map);
  return numeric(aux, [](const SdpSolution& s) {
    SideReport r;
    r.feasible = true;
    r.margin = s.primal_value;
    r.strict = s.primal_value > 1e-7;
    return r;
  });
}

// Same search for Y: inequality blocks Y' + sI, equality blocks P - N.
SideReport dual_search(const SdpProblem& p) {
  const auto& cb = p.constraint_blocks();
  std::vector<BlockSpec> vars;
  std::vector<int> pos(cb.size()), neg(cb.size(), -1);
  for (std::size_t i = 0; i < cb.size(); ++i) {
    pos[i] = static_cast<int>(vars.size());
    vars.push_back(cb[i].spec);
    if (cb[i].equality) {
      neg[i] = static_cast<int>(vars.size());
      vars.push_back(cb[i].spec);
    }
  }
  const std::size_t si = vars.size();
  vars.push_back(scalar());
  std::vector<ConstraintBlock> cons;
  for (const auto& b : p.primal_layout().blocks()) cons.push_back({b, false});
  cons.push_back({scalar(), false});
  cons.push_back({scalar(), false});
  auto map = [&](const BlockMatrix& v) {
    const double s = v[si](0, 0).real();
    BlockMatrix y;
    double tr = 0.0;
    for (std::size_t i = 0; i < cb.size(); ++i) {
      CMatrix yi = v[pos[i]];
      tr += yi.trace().real();
      if (cb[i].equality) {
        yi -= v[neg[i]];
        tr += v[neg[i]].trace().real();
      } else {
        yi += s * CMatrix::Identity(yi.rows(), yi.cols());
        tr += s * yi.rows();
      }
      y.blocks.push_back(yi);
    }
    BlockMatrix out = p.apply_adjoint(y);
    for (auto& b : out.blocks) b = -b + s * CMatrix::Identity(b.rows(), b.cols());
    out.blocks.push_back(one(s));
    out.blocks.push_back(one(tr));
    return out;
  };
  BlockMatrix obj = BlockMatrix::zeros(vars);
  obj[si](0, 0) = 1.0;
  BlockMatrix bound;
  for (const auto& a : p.objective().blocks) bound.blocks.push_back(-a);
  bound.blocks.push_back(one(1.0));
  bound.blocks.push_back(one(kTraceCap * (1.0 + p.objective().frobenius())));
  const SdpProblem aux = SdpProblem::from_map(vars, cons, obj, bound, map);
  return numeric(aux, [](const SdpSolution& s) {
    SideReport r;
    r.feasible = true;
    r.margin = s.primal_value;
    r.strict = s.primal_value > 1e-7;
    return r;
  });
}

}  // namespace

SlaterReport probe_slater(const SdpProblem& problem) {
  SlaterReport r;
  r.primal = problem.known_points.primal ? primal_at(problem, *problem.known_points.primal)
                                         : primal_search(problem);
  r.dual = problem.known_points.dual ? dual_at(problem, *problem.known_points.dual)
                                     : dual_search(problem);
  return r;
}

}  // namespace asymdist::sdp

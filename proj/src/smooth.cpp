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
#include <limits>

#include "asymdist/exponents.hpp"
#include "exponents_internal.hpp"

namespace asymdist {

using detail::psd_violation;
using detail::scalar_block;
using detail::scalar_of;

namespace {

void require_smoothing(double eps) {
  if (!std::isfinite(eps) || eps < 0.0 || eps >= 1.0)
    throw InvalidInput("smoothing parameter eps must lie in [0, 1)");
}

void dmin_residuals(SmoothEntropyResult& r, const StatePair& pair) {
  const CMatrix& lam = std::get<MeasurementOperator>(r.witness).matrix();
  const int d = pair.dim();
  r.feasibility = {
      {"L >= 0", psd_violation(lam)},
      {"L <= I", psd_violation(CMatrix(CMatrix::Identity(d, d) - lam))},
      {"Tr[L rho] >= 1 - eps",
       std::max(0.0, 1.0 - r.epsilon - (lam * pair.rho().matrix()).trace().real())},
  };
  if (r.dual_witness) {
    const auto& dual = std::get<MinDual>(*r.dual_witness);
    r.feasibility.push_back({"mu >= 0", std::max(0.0, -dual.mu)});
    r.feasibility.push_back({"X >= 0", psd_violation(dual.x)});
    r.feasibility.push_back(
        {"mu rho <= sigma + X",
         psd_violation(CMatrix(pair.sigma().matrix() + dual.x.matrix() -
                               dual.mu * pair.rho().matrix()))});
  }
}

void dmax_residuals(SmoothEntropyResult& r, const StatePair& pair) {
  const auto& w = std::get<MaxWitness>(r.witness);
  const CMatrix& rho = pair.rho().matrix();
  const CMatrix& sigma = pair.sigma().matrix();
  const int d = pair.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  r.feasibility = {
      {"rt >= 0", psd_violation(w.state)},
      {"Z >= 0", psd_violation(w.slack)},
      {"Tr[rt] = 1", std::abs(w.state.trace() - 1.0)},
      {"Tr[Z] <= eps", std::max(0.0, w.slack.trace() - r.epsilon)},
      {"rho - rt <= Z", psd_violation(CMatrix(w.slack.matrix() - rho + w.state.matrix()))},
  };
  if (std::isfinite(w.lambda))
    r.feasibility.push_back(
        {"rt <= lambda sigma", psd_violation(CMatrix(w.lambda * sigma - w.state.matrix()))});
  if (r.dual_witness) {
    const auto& dual = std::get<MaxDual>(*r.dual_witness);
    const CMatrix& x = dual.x.matrix();
    const CMatrix& q = dual.q.matrix();
    r.feasibility.push_back({"X >= 0", psd_violation(x)});
    r.feasibility.push_back({"Q >= 0", psd_violation(q)});
    r.feasibility.push_back({"t >= 0", std::max(0.0, -dual.t)});
    r.feasibility.push_back(
        {"Tr[X sigma] <= 1", std::max(0.0, (x * sigma).trace().real() - 1.0)});
    r.feasibility.push_back({"Q + mu I <= X", psd_violation(CMatrix(x - q - dual.mu * id))});
    r.feasibility.push_back({"Q <= t I", psd_violation(CMatrix(dual.t * id - q))});
  }
}

}  // namespace

SmoothEntropyResult smooth_dmin(const StatePair& pair, double eps, const ExponentOptions& opt) {
  require_smoothing(eps);
  const int d = pair.dim();
  SmoothEntropyResult r;
  r.epsilon = eps;
  const HermitianMatrix proj_sigma = support_projector(pair.sigma());
  const double outside = 1.0 - proj_sigma.inner(pair.rho());
  if (outside >= 1.0 - eps - 1e-14) {
    // The complement of supp(sigma) already passes: Tr[L sigma] = 0.
    r.value = ExtendedReal::infinity();
    r.witness = MeasurementOperator::clamped(HermitianMatrix::identity(d) - proj_sigma);
    r.exact = true;
  } else if (eps == 0.0) {
    // L must be the identity on supp(rho); the dual infimum is not attained.
    const HermitianMatrix proj = support_projector(pair.rho());
    r.value = ExtendedReal(std::max(0.0, -std::log2(proj.inner(pair.sigma()))));
    r.witness = MeasurementOperator::clamped(proj);
    r.exact = true;
  } else {
    const sdp::SdpSolution sol =
        detail::solve_certified(dmin_problem(pair, eps), opt, "hypothesis testing program");
    r.value = ExtendedReal(std::max(0.0, -std::log2(-sol.primal_value)));
    r.gap = detail::scaled_gap(sol);
    r.witness = MeasurementOperator::clamped(HermitianMatrix::hermitian_part(sol.x[0]));
    r.dual_witness = MinDual{scalar_of(sol.y[0]), HermitianMatrix::hermitian_part(sol.y[1])};
  }
  dmin_residuals(r, pair);
  return r;
}

SmoothEntropyResult smooth_dmax(const StatePair& pair, double eps, const ExponentOptions& opt) {
  require_smoothing(eps);
  const int d = pair.dim();
  SmoothEntropyResult r;
  r.epsilon = eps;
  if (eps == 0.0) {
    const RenyiCurve curve(pair.rho(), pair.sigma());
    r.value = curve.dmax();
    r.exact = true;
    const double lambda = r.value.is_finite() ? std::exp2(r.value.value())
                                              : std::numeric_limits<double>::infinity();
    r.witness = MaxWitness{lambda, pair.rho().hermitian(), HermitianMatrix::zero(d)};
    if (r.value.is_finite()) {
      // X = s^{-1/2} v v* s^{-1/2} with v the top eigenvector of s^{-1/2} rho s^{-1/2}.
      const HermitianMatrix inv_sqrt = frac_power(pair.sigma(), -0.5);
      const HermitianMatrix ratio = HermitianMatrix::hermitian_part(
          inv_sqrt.matrix() * pair.rho().matrix() * inv_sqrt.matrix());
      const Spectrum s = eig_hermitian(ratio);
      const CVector u = inv_sqrt.matrix() * s.eigenvectors.col(0);
      CMatrix x = u * u.adjoint();
      x /= (x * pair.sigma().matrix()).trace().real();
      const HermitianMatrix xh = HermitianMatrix::hermitian_part(x);
      r.dual_witness = MaxDual{max_eigenvalue(xh), xh, xh, 0.0};
    }
  } else if (trace_distance(pair.rho(), pair.sigma()) <= eps) {
    // sigma itself is close enough, and lambda = 1 is the floor.
    r.value = ExtendedReal(0.0);
    r.exact = true;
    const HermitianMatrix z = positive_part(pair.rho().hermitian() - pair.sigma().hermitian());
    r.witness = MaxWitness{1.0, pair.sigma().hermitian(), z};
    r.dual_witness =
        MaxDual{0.0, HermitianMatrix::identity(d), HermitianMatrix::zero(d), 1.0};
  } else {
    // Outside the support the SDP has no feasible point and the solver only
    // stalls, so settle that case first: every state on supp(sigma) is below
    // sigma / (smallest positive eigenvalue), hence the best error inside the
    // support is the dilution error at that budget.
    if (support_mismatch(pair.rho(), pair.sigma()) > kSupportCutoff) {
      const RVector ev = eig_hermitian(pair.sigma().hermitian()).eigenvalues;
      double floor = 1.0;
      for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > kSupportCutoff) floor = std::min(floor, ev(i));
      const double reachable = err_exp_dilute(pair, -std::log2(floor), opt).epsilon;
      if (eps < reachable - 1e-9) {
        r.value = ExtendedReal::infinity();
        r.exact = true;
        r.witness = MaxWitness{std::numeric_limits<double>::infinity(), pair.rho().hermitian(),
                               HermitianMatrix::zero(d)};
        return r;
      }
    }
    const sdp::SdpSolution sol = detail::solve_certified(
        dmax_problem(pair, eps), opt, "smooth max-divergence program", true);
    if (sol.status == sdp::Status::primal_infeasible) {
      // No state inside supp(sigma) is within eps of rho.
      r.value = ExtendedReal::infinity();
      r.witness = MaxWitness{std::numeric_limits<double>::infinity(), pair.rho().hermitian(),
                             HermitianMatrix::zero(d)};
      // rho is no witness here, so there is nothing to check.
      return r;
    }
    const double lambda = -sol.primal_value;
    r.value = ExtendedReal(std::max(0.0, std::log2(lambda)));
    r.gap = detail::scaled_gap(sol);
    r.witness = MaxWitness{lambda, HermitianMatrix::hermitian_part(sol.x[1]),
                           HermitianMatrix::hermitian_part(sol.x[2])};
    r.dual_witness = MaxDual{scalar_of(sol.y[2]), HermitianMatrix::hermitian_part(sol.y[0]),
                             HermitianMatrix::hermitian_part(sol.y[1]), -scalar_of(sol.y[3])};
  }
  dmax_residuals(r, pair);
  return r;
}

sdp::SdpProblem dmin_problem(const StatePair& pair, double eps) {
  require_smoothing(eps);
  const int d = pair.dim();
  const CMatrix rho = pair.rho().matrix();
  const CMatrix& sigma = pair.sigma().matrix();
  const CMatrix id = CMatrix::Identity(d, d);
  const sdp::BlockSpec h{d, detail::block_kind({&rho, &sigma})};
  const sdp::BlockSpec one{1, sdp::BlockKind::real_symmetric};
  sdp::SdpProblem p = sdp::SdpProblem::from_map(
      {h}, {{one, false}, {h, false}}, sdp::BlockMatrix({CMatrix(-sigma)}),
      sdp::BlockMatrix({scalar_block(-(1.0 - eps)), id}), [&](const sdp::BlockMatrix& x) {
        return sdp::BlockMatrix({scalar_block(-(x[0] * rho).trace().real()), x[0]});
      });
  p.label = "hypothesis testing";
  p.known_points.primal = sdp::BlockMatrix({id});
  p.known_points.dual = sdp::BlockMatrix({scalar_block(1.0), CMatrix(rho + id)});
  return p;
}

sdp::SdpProblem dmax_problem(const StatePair& pair, double eps) {
  require_smoothing(eps);
  const int d = pair.dim();
  const CMatrix& rho = pair.rho().matrix();
  const CMatrix sigma = pair.sigma().matrix();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix zero = CMatrix::Zero(d, d);
  const sdp::BlockSpec h{d, detail::block_kind({&rho, &sigma})};
  const sdp::BlockSpec one{1, sdp::BlockKind::real_symmetric};
  // Variables (lambda, rt, Z).
  sdp::SdpProblem p = sdp::SdpProblem::from_map(
      {one, h, h}, {{h, false}, {h, false}, {one, false}, {one, true}},
      sdp::BlockMatrix({scalar_block(-1.0), zero, zero}),
      sdp::BlockMatrix({zero, CMatrix(-rho), scalar_block(eps), scalar_block(1.0)}),
      [&](const sdp::BlockMatrix& x) {
        return sdp::BlockMatrix({CMatrix(x[1] - scalar_of(x[0]) * sigma), CMatrix(-x[1] - x[2]),
                                 scalar_block(x[2].trace().real()),
                                 scalar_block(x[1].trace().real())});
      });
  p.label = "smooth max-divergence";
  const ExtendedReal dmax = dmax_exact(pair.rho(), pair.sigma());
  if (dmax.is_finite())
    p.known_points.primal =
        sdp::BlockMatrix({scalar_block(std::exp2(dmax.value()) + 1.0), rho, zero});
  p.known_points.dual = sdp::BlockMatrix(
      {CMatrix(0.5 * id), CMatrix(0.5 * id), scalar_block(1.0), scalar_block(1.0)});
  return p;
}

}  // namespace asymdist

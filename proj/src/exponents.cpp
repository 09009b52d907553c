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

#include "asymdist/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "exponents_internal.hpp"

namespace asymdist {

namespace detail {

sdp::BlockKind block_kind(std::initializer_list<const CMatrix*> data) {
  for (const CMatrix* m : data)
    if (m->imag().cwiseAbs().maxCoeff() != 0.0) return sdp::BlockKind::hermitian;
  return sdp::BlockKind::real_symmetric;
}

double psd_violation(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(((a + a.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  return std::max(0.0, -es.eigenvalues()(0));
}

double psd_violation(const HermitianMatrix& a) { return psd_violation(a.matrix()); }

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

namespace {

bool acceptable(const sdp::SdpSolution& s) {
  const double scale = 1.0 + std::abs(s.primal_value);
  return std::isfinite(s.gap) && std::abs(s.gap) <= 1e-8 * scale &&
         s.primal_infeasibility <= 1e-8 * scale && s.dual_infeasibility <= 1e-8 * scale;
}

}  // namespace

sdp::SdpSolution solve_certified(const sdp::SdpProblem& problem, const ExponentOptions& opt,
                                 const std::string& what, bool allow_infeasible) {
  sdp::SolverOptions so;
  so.tol = opt.tol;
  sdp::SdpSolution sol;
  std::optional<sdp::SdpSolution> fallback;
  // Shorter steps first, then a looser tolerance. A stalled run with a small
  // gap may still be far from central, so it is only used when nothing
  // converges.
  for (int attempt = 0; attempt < 3; ++attempt) {
    sol = sdp::solve(problem, so);
    if (sol.status == sdp::Status::optimal) return sol;
    if (sol.status == sdp::Status::primal_infeasible && allow_infeasible) return sol;
    if (sol.status == sdp::Status::max_iter && acceptable(sol) && !fallback) fallback = sol;
    if (attempt == 0) so.step_fraction = 0.9;
    if (attempt == 1) so.tol = std::max(opt.tol * 100.0, 1e-9);
  }
  if (fallback) return *fallback;
  std::ostringstream msg;
  msg << what << ": solver stopped with status " << sdp::to_string(sol.status) << " after "
      << sol.iterations << " iterations (gap " << sol.gap << ", primal residual "
      << sol.primal_infeasibility << ", dual residual " << sol.dual_infeasibility << ")";
  if (!sol.diagnostics.empty()) msg << ": " << sol.diagnostics;
  throw SolverFailure(msg.str());
}

double scaled_gap(const sdp::SdpSolution& s) {
  return s.gap / std::max(1.0, std::abs(s.primal_value));
}

void require_exponent_parameter(double m, const char* name) {
  if (!std::isfinite(m) || m < 0.0)
    throw InvalidInput(std::string(name) + " must be finite and nonnegative");
}

}  // namespace detail

using detail::op_norm;
using detail::psd_violation;
using detail::scalar_block;
using detail::scalar_of;

StatePair::StatePair(DensityMatrix rho, DensityMatrix sigma)
    : rho_(std::move(rho)), sigma_(std::move(sigma)) {
  require_same_dim(rho_, sigma_);
}

StatePair golden_pair(double m) {
  detail::require_exponent_parameter(m, "m");
  return StatePair(DensityMatrix::basis_state(2, 0), pi_state(std::exp2(m)));
}

std::string to_string(ExponentKind k) {
  switch (k) {
    case ExponentKind::distill_error: return "err_exp_distill";
    case ExponentKind::distill_strong_converse: return "sc_exp_distill";
    case ExponentKind::dilute_error: return "err_exp_dilute";
    case ExponentKind::dilute_strong_converse: return "sc_exp_dilute";
    case ExponentKind::transform_error: return "statepair_err_exp";
  }
  return "unknown";
}

namespace {

double max_value(const std::vector<Residual>& r) {
  double worst = 0.0;
  for (const auto& x : r) worst = std::max(worst, x.value);
  return worst;
}

ExtendedReal neg_log2(double x) {
  if (x <= 0.0) return ExtendedReal::infinity();
  return ExtendedReal(std::max(0.0, -std::log2(std::min(x, 1.0))));
}

bool strong_converse(ExponentKind k) {
  return k == ExponentKind::distill_strong_converse || k == ExponentKind::dilute_strong_converse;
}

void set_value(ExponentResult& r) {
  r.epsilon = std::clamp(r.epsilon, 0.0, 1.0);
  r.value = strong_converse(r.kind) ? neg_log2(1.0 - r.epsilon) : neg_log2(r.epsilon);
}

// Distillation -----------------------------------------------------------

void distillation_residuals(ExponentResult& r, const StatePair& pair) {
  const auto& lam = std::get<MeasurementOperator>(r.primal_witness).matrix();
  const auto& dual = std::get<DistillationDual>(r.dual_witness);
  const CMatrix& rho = pair.rho().matrix();
  const CMatrix& sigma = pair.sigma().matrix();
  const CMatrix& w = dual.w.matrix();
  const double budget = std::exp2(-r.m);
  const double used = (lam * sigma).trace().real();
  const CMatrix cover = dual.lambda * sigma + w - rho;
  const int d = pair.dim();

  r.slackness = {
      {"(lambda sigma + W - rho) L", (cover * lam).norm()},
      {"lambda (2^-m - Tr[L sigma])", std::abs(dual.lambda * (budget - used))},
      {"W - L W", (w - lam * w).norm()},
  };
  r.feasibility = {
      {"L >= 0", psd_violation(lam)},
      {"L <= I", psd_violation(CMatrix(CMatrix::Identity(d, d) - lam))},
      {"Tr[L sigma] <= 2^-m", std::max(0.0, used - budget)},
      {"lambda >= 0", std::max(0.0, -dual.lambda)},
      {"W >= 0", psd_violation(w)},
      {"lambda sigma + W >= rho", psd_violation(cover)},
  };
}

ExponentResult distill(const StatePair& pair, double m, const ExponentOptions& opt,
                       ExponentKind kind) {
  detail::require_exponent_parameter(m, "m");
  ExponentResult r;
  r.kind = kind;
  r.m = m;
  const HermitianMatrix proj = support_projector(pair.rho());
  const double budget = std::exp2(-m);
  if (proj.inner(pair.sigma()) <= budget * (1.0 + 1e-12)) {
    // The support projector of rho passes every test: zero error.
    r.epsilon = 0.0;
    r.primal_witness = MeasurementOperator::clamped(proj);
    r.dual_witness = DistillationDual{0.0, pair.rho().hermitian()};
    r.exact = true;
  } else {
    const sdp::SdpProblem problem = distillation_problem(pair, m);
    const sdp::SdpSolution sol = detail::solve_certified(problem, opt, "distillation program");
    r.epsilon = 1.0 - sol.primal_value;
    r.gap = detail::scaled_gap(sol);
    r.primal_witness = MeasurementOperator::clamped(HermitianMatrix::hermitian_part(sol.x[0]));
    r.dual_witness =
        DistillationDual{scalar_of(sol.y[0]), HermitianMatrix::hermitian_part(sol.y[1])};
  }
  set_value(r);
  distillation_residuals(r, pair);
  return r;
}

// Dilution ---------------------------------------------------------------

void dilution_residuals(ExponentResult& r, const StatePair& pair) {
  const auto& wit = std::get<DilutionWitness>(r.primal_witness);
  const auto& dual = std::get<DilutionDual>(r.dual_witness);
  const CMatrix& rho = pair.rho().matrix();
  const CMatrix scaled = std::exp2(r.m) * pair.sigma().matrix();
  const CMatrix& rt = wit.state.matrix();
  const CMatrix& z = wit.slack.matrix();
  const CMatrix& rr = dual.r.matrix();
  const CMatrix& s = dual.s.matrix();
  const int d = pair.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix cover = rr + s - dual.kappa * id;

  r.slackness = {
      {"Z - R Z", (z - rr * z).norm()},
      {"(R + S - kappa I) rt", (cover * rt).norm()},
      {"Z R - (rt - rho) R", (z * rr - (rt - rho) * rr).norm()},
      {"(2^m sigma - rt) S", ((scaled - rt) * s).norm()},
  };
  r.feasibility = {
      {"rt >= 0", psd_violation(rt)},
      {"Tr[rt] = 1", std::abs(rt.trace().real() - 1.0)},
      {"rt <= 2^m sigma", psd_violation(CMatrix(scaled - rt))},
      {"Z >= 0", psd_violation(z)},
      {"Z >= rt - rho", psd_violation(CMatrix(z - rt + rho))},
      {"kappa >= 0", std::max(0.0, -dual.kappa)},
      {"R >= 0", psd_violation(rr)},
      {"R <= I", psd_violation(CMatrix(id - rr))},
      {"S >= 0", psd_violation(s)},
      {"R + S >= kappa I", psd_violation(cover)},
  };
}

ExponentResult dilute(const StatePair& pair, double m, const ExponentOptions& opt,
                      ExponentKind kind) {
  detail::require_exponent_parameter(m, "m");
  ExponentResult r;
  r.kind = kind;
  r.m = m;
  const int d = pair.dim();
  const RenyiCurve curve(pair.rho(), pair.sigma());
  const ExtendedReal dmax = curve.dmax();
  if (dmax.is_finite() && m >= dmax.value() - 1e-12) {
    // rho itself fits under 2^m sigma.
    r.epsilon = 0.0;
    r.primal_witness = DilutionWitness{pair.rho().hermitian(), HermitianMatrix::zero(d)};
    r.dual_witness = DilutionDual{0.0, HermitianMatrix::zero(d), HermitianMatrix::zero(d)};
    r.exact = true;
  } else if (1.0 - curve.mismatch() <= 1e-14) {
    // Orthogonal supports: every admissible state is at distance one.
    const HermitianMatrix proj = support_projector(pair.rho());
    r.epsilon = 1.0;
    r.primal_witness = DilutionWitness{pair.sigma().hermitian(), pair.sigma().hermitian()};
    r.dual_witness = DilutionDual{1.0, HermitianMatrix::identity(d) - proj, proj};
    r.exact = true;
  } else {
    const sdp::SdpProblem problem = dilution_problem(pair, m);
    const sdp::SdpSolution sol = detail::solve_certified(problem, opt, "dilution program");
    r.epsilon = -sol.primal_value;
    r.gap = detail::scaled_gap(sol);
    // Tr[rt] >= 1 in the program; rescaling keeps every constraint.
    CMatrix rt = sol.x[1];
    rt /= rt.trace().real();
    r.primal_witness = DilutionWitness{HermitianMatrix::hermitian_part(rt),
                                       HermitianMatrix::hermitian_part(sol.x[0])};
    r.dual_witness = DilutionDual{scalar_of(sol.y[2]), HermitianMatrix::hermitian_part(sol.y[0]),
                                  HermitianMatrix::hermitian_part(sol.y[1])};
  }
  set_value(r);
  dilution_residuals(r, pair);
  return r;
}

}  // namespace

double ExponentResult::max_slackness() const { return max_value(slackness); }
double ExponentResult::max_infeasibility() const { return max_value(feasibility); }
double SmoothEntropyResult::max_infeasibility() const { return max_value(feasibility); }

ExponentResult err_exp_distill(const StatePair& pair, double m, const ExponentOptions& opt) {
  return distill(pair, m, opt, ExponentKind::distill_error);
}

ExponentResult sc_exp_distill(const StatePair& pair, double m, const ExponentOptions& opt) {
  return distill(pair, m, opt, ExponentKind::distill_strong_converse);
}

ExponentResult err_exp_dilute(const StatePair& pair, double m, const ExponentOptions& opt) {
  return dilute(pair, m, opt, ExponentKind::dilute_error);
}

ExponentResult sc_exp_dilute(const StatePair& pair, double m, const ExponentOptions& opt) {
  return dilute(pair, m, opt, ExponentKind::dilute_strong_converse);
}

sdp::SdpProblem distillation_problem(const StatePair& pair, double m) {
  detail::require_exponent_parameter(m, "m");
  const int d = pair.dim();
  const CMatrix& rho = pair.rho().matrix();
  const CMatrix sigma = pair.sigma().matrix();
  const CMatrix id = CMatrix::Identity(d, d);
  const double budget = std::exp2(-m);
  const sdp::BlockSpec h{d, detail::block_kind({&rho, &sigma})};
  const sdp::BlockSpec one{1, sdp::BlockKind::real_symmetric};

  sdp::SdpProblem p = sdp::SdpProblem::from_map(
      {h}, {{one, false}, {h, false}}, sdp::BlockMatrix({rho}),
      sdp::BlockMatrix({scalar_block(budget), id}), [&](const sdp::BlockMatrix& x) {
        return sdp::BlockMatrix({scalar_block((x[0] * sigma).trace().real()), x[0]});
      });
  p.label = "distillation";
  p.known_points.primal = sdp::BlockMatrix({CMatrix(budget * id)});
  const HermitianMatrix w = positive_part(pair.rho().hermitian() - pair.sigma().hermitian()) +
                            HermitianMatrix::identity(d);
  p.known_points.dual = sdp::BlockMatrix({scalar_block(1.0), w.matrix()});
  return p;
}

sdp::SdpProblem dilution_problem(const StatePair& pair, double m) {
  detail::require_exponent_parameter(m, "m");
  const int d = pair.dim();
  const CMatrix& rho = pair.rho().matrix();
  const CMatrix& sigma = pair.sigma().matrix();
  const CMatrix id = CMatrix::Identity(d, d);
  const sdp::BlockSpec h{d, detail::block_kind({&rho, &sigma})};
  const sdp::BlockSpec one{1, sdp::BlockKind::real_symmetric};

  // Variables (Z, rt).
  sdp::SdpProblem p = sdp::SdpProblem::from_map(
      {h, h}, {{h, false}, {h, false}, {one, false}},
      sdp::BlockMatrix({CMatrix(-id), CMatrix(CMatrix::Zero(d, d))}),
      sdp::BlockMatrix({rho, CMatrix(std::exp2(m) * sigma), scalar_block(-1.0)}),
      [](const sdp::BlockMatrix& x) {
        return sdp::BlockMatrix(
            {CMatrix(x[1] - x[0]), x[1], scalar_block(-x[1].trace().real())});
      });
  p.label = "dilution";
  const HermitianMatrix z = positive_part(pair.sigma().hermitian() - pair.rho().hermitian());
  p.known_points.primal = sdp::BlockMatrix({z.matrix(), sigma});
  p.known_points.dual =
      sdp::BlockMatrix({CMatrix(0.5 * id), id, scalar_block(0.5)});
  return p;
}

}  // namespace asymdist

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

#include "asymdist/exponents.hpp"
#include "exponents_internal.hpp"

namespace asymdist {

using detail::psd_violation;

namespace {

// Choi operators on in (x) out, row index i * d_out + a.
CMatrix choi_apply(const CMatrix& j, const CMatrix& x, int d_out) {
  const int d_in = static_cast<int>(x.rows());
  CMatrix out = CMatrix::Zero(d_out, d_out);
  for (int r = 0; r < d_in; ++r)
    for (int c = 0; c < d_in; ++c)
      if (x(r, c) != Complex(0.0, 0.0)) out += x(r, c) * j.block(r * d_out, c * d_out, d_out, d_out);
  return out;
}

CMatrix partial_trace_out(const CMatrix& j, int d_in, int d_out) {
  CMatrix out(d_in, d_in);
  for (int r = 0; r < d_in; ++r)
    for (int c = 0; c < d_in; ++c) out(r, c) = j.block(r * d_out, c * d_out, d_out, d_out).trace();
  return out;
}

bool same_pair(const StatePair& a, const StatePair& b) {
  if (a.dim() != b.dim()) return false;
  return (a.rho().matrix() - b.rho().matrix()).cwiseAbs().maxCoeff() <= 1e-12 &&
         (a.sigma().matrix() - b.sigma().matrix()).cwiseAbs().maxCoeff() <= 1e-12;
}

}  // namespace

HermitianMatrix apply_choi(const HermitianMatrix& choi, const HermitianMatrix& x, int dim_out) {
  if (dim_out < 1 || choi.dim() != x.dim() * dim_out)
    throw InvalidInput("Choi operator has dimension " + std::to_string(choi.dim()) +
                       ", expected " + std::to_string(x.dim()) + " x " + std::to_string(dim_out));
  return HermitianMatrix::hermitian_part(choi_apply(choi.matrix(), x.matrix(), dim_out));
}

sdp::SdpProblem transformation_problem(const StatePair& source, const StatePair& target) {
  const int d_in = source.dim();
  const int d_out = target.dim();
  if (d_in > 4 || d_out > 4)
    throw InvalidInput("transformation program supports input and output dimension up to 4");
  const CMatrix rho = source.rho().matrix();
  const CMatrix sigma = source.sigma().matrix();
  const CMatrix& tau = target.rho().matrix();
  const CMatrix& omega = target.sigma().matrix();
  const CMatrix id_out = CMatrix::Identity(d_out, d_out);
  const CMatrix id_in = CMatrix::Identity(d_in, d_in);
  const sdp::BlockSpec choi{d_in * d_out, sdp::BlockKind::hermitian};
  const sdp::BlockSpec out{d_out, sdp::BlockKind::hermitian};
  const sdp::BlockSpec in{d_in, sdp::BlockKind::hermitian};

  // Variables (J, Z): maximize -Tr Z.
  sdp::SdpProblem p = sdp::SdpProblem::from_map(
      {choi, out}, {{out, false}, {in, true}, {out, true}},
      sdp::BlockMatrix({CMatrix(CMatrix::Zero(d_in * d_out, d_in * d_out)), CMatrix(-id_out)}),
      sdp::BlockMatrix({tau, id_in, omega}), [&](const sdp::BlockMatrix& x) {
        return sdp::BlockMatrix({CMatrix(choi_apply(x[0], rho, d_out) - x[1]),
                                 partial_trace_out(x[0], d_in, d_out),
                                 choi_apply(x[0], sigma, d_out)});
      });
  p.label = "state pair transformation";
  // The replacer channel x -> Tr[x] omega.
  const HermitianMatrix z = positive_part(target.sigma().hermitian() - target.rho().hermitian());
  p.known_points.primal = sdp::BlockMatrix({kron(id_in, omega), z.matrix()});
  p.known_points.dual = sdp::BlockMatrix(
      {CMatrix(0.5 * id_out), id_in, CMatrix(CMatrix::Zero(d_out, d_out))});
  return p;
}

ExponentResult statepair_err_exp(const StatePair& source, const StatePair& target,
                                 const ExponentOptions& opt) {
  const int d_in = source.dim();
  const int d_out = target.dim();
  const sdp::SdpProblem problem = transformation_problem(source, target);
  ExponentResult r;
  r.kind = ExponentKind::transform_error;
  r.m = 0.0;
  CMatrix j, z;
  sdp::BlockMatrix y;
  if (same_pair(source, target)) {
    // Identity channel: J = |Omega><Omega|.
    j = CMatrix::Zero(d_in * d_in, d_in * d_in);
    for (int a = 0; a < d_in; ++a)
      for (int b = 0; b < d_in; ++b) j(a * d_in + a, b * d_in + b) = 1.0;
    z = CMatrix::Zero(d_out, d_out);
    y = sdp::BlockMatrix({CMatrix(CMatrix::Zero(d_out, d_out)),
                          CMatrix(CMatrix::Zero(d_in, d_in)),
                          CMatrix(CMatrix::Zero(d_out, d_out))});
    r.epsilon = 0.0;
    r.exact = true;
  } else {
    const sdp::SdpSolution sol = detail::solve_certified(problem, opt, "transformation program");
    j = sol.x[0];
    z = sol.x[1];
    y = sol.y;
    r.gap = detail::scaled_gap(sol);
    r.epsilon = std::clamp(-sol.primal_value, 0.0, 1.0);
    // Below this the error is indistinguishable from solver noise.
    if (r.epsilon <= 1e-9) r.epsilon = 0.0;
  }
  r.value = r.epsilon > 0.0 ? ExtendedReal(std::max(0.0, -std::log2(r.epsilon)))
                            : ExtendedReal::infinity();
  r.primal_witness =
      ChannelWitness{HermitianMatrix::hermitian_part(j), HermitianMatrix::hermitian_part(z)};
  r.dual_witness = TransformationDual{HermitianMatrix::hermitian_part(y[0]),
                                      HermitianMatrix::hermitian_part(y[1]),
                                      HermitianMatrix::hermitian_part(y[2])};

  const sdp::BlockMatrix x({j, z});
  const sdp::BlockMatrix px = problem.apply(x);
  const sdp::BlockMatrix py = problem.apply_adjoint(y);
  const CMatrix& tau = target.rho().matrix();
  r.feasibility = {
      {"J >= 0", psd_violation(j)},
      {"Tr_out J = I", (px[1] - CMatrix::Identity(d_in, d_in)).norm()},
      {"N(sigma) = omega", (px[2] - target.sigma().matrix()).norm()},
      {"Z >= 0", psd_violation(z)},
      {"Z >= N(rho) - tau", psd_violation(CMatrix(tau - px[0]))},
      {"Y >= 0", psd_violation(y[0])},
      {"Y <= I", psd_violation(CMatrix(CMatrix::Identity(d_out, d_out) - y[0]))},
      {"dual cover on J", psd_violation(CMatrix(py[0] - problem.objective()[0]))},
  };
  r.slackness = {
      {"(tau - N(rho) + Z) Y", ((tau - px[0]) * y[0]).norm()},
      {"(I - Y) Z", ((CMatrix::Identity(d_out, d_out) - y[0]) * z).norm()},
      {"dual cover J", ((py[0] - problem.objective()[0]) * j).norm()},
  };
  return r;
}

}  // namespace asymdist

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
#include <sstream>

#include "asymdist/sdp.hpp"

namespace asymdist::sdp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2 = 1.41421356237309504880;

double hermitian_eig_extreme(const CMatrix& m, bool lowest) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return lowest ? ev(0) : ev(ev.size() - 1);
}

void check_block(const CMatrix& m, const BlockSpec& spec, const std::string& what) {
  if (m.rows() != spec.dim || m.cols() != spec.dim)
    throw InvalidInput(what + ": block has shape " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ", expected " + std::to_string(spec.dim));
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (symmetry_defect(m) > kHermitianTol * scale) throw InvalidInput(what + ": block not Hermitian");
  if (spec.kind == BlockKind::real_symmetric && m.imag().cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw InvalidInput(what + ": real symmetric block has imaginary entries");
}

std::vector<BlockSpec> specs_of(const std::vector<ConstraintBlock>& c) {
  std::vector<BlockSpec> out;
  for (const auto& b : c) out.push_back(b.spec);
  return out;
}

}  // namespace

void write_coords(const CMatrix& h, const BlockSpec& spec, double* out) {
  const int d = spec.dim;
  int k = 0;
  for (int j = 0; j < d; ++j) out[k++] = h(j, j).real();
  for (int j = 0; j < d; ++j) {
    for (int l = j + 1; l < d; ++l) {
      const Complex hjl = 0.5 * (h(j, l) + std::conj(h(l, j)));
      out[k++] = kSqrt2 * hjl.real();
      if (spec.kind == BlockKind::hermitian) out[k++] = kSqrt2 * hjl.imag();
    }
  }
}

CMatrix from_coords(const double* c, const BlockSpec& spec) {
  const int d = spec.dim;
  CMatrix h = CMatrix::Zero(d, d);
  int k = 0;
  for (int j = 0; j < d; ++j) h(j, j) = c[k++];
  for (int j = 0; j < d; ++j) {
    for (int l = j + 1; l < d; ++l) {
      const double re = c[k++];
      const double im = spec.kind == BlockKind::hermitian ? c[k++] : 0.0;
      h(j, l) = Complex(re, im) * kInvSqrt2;
      h(l, j) = std::conj(h(j, l));
    }
  }
  return h;
}

BlockMatrix BlockMatrix::zeros(std::span<const BlockSpec> specs) {
  BlockMatrix m;
  for (const auto& s : specs) m.blocks.push_back(CMatrix::Zero(s.dim, s.dim));
  return m;
}

BlockMatrix BlockMatrix::identity(std::span<const BlockSpec> specs) {
  BlockMatrix m;
  for (const auto& s : specs) m.blocks.push_back(CMatrix::Identity(s.dim, s.dim));
  return m;
}

double BlockMatrix::inner(const BlockMatrix& o) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    acc += (blocks[i].conjugate().cwiseProduct(o.blocks[i])).sum().real();
  return acc;
}

double BlockMatrix::frobenius() const {
  double acc = 0.0;
  for (const auto& b : blocks) acc += b.squaredNorm();
  return std::sqrt(acc);
}

Layout::Layout(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (b.dim < 1) throw InvalidInput("block dimension must be positive");
    offsets_.push_back(total_);
    total_ += b.coords();
  }
}

RVector Layout::to_coords(const BlockMatrix& m) const {
  if (m.size() != blocks_.size()) throw InvalidInput("block count mismatch");
  RVector c(total_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) write_coords(m[i], blocks_[i], c.data() + offsets_[i]);
  return c;
}

BlockMatrix Layout::from_coords(const RVector& c) const {
  BlockMatrix m;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    m.blocks.push_back(sdp::from_coords(c.data() + offsets_[i], blocks_[i]));
  return m;
}

BlockMatrix Layout::basis_element(int k) const {
  RVector c = RVector::Zero(total_);
  c(k) = 1.0;
  return from_coords(c);
}

SdpProblem::SdpProblem(std::vector<BlockSpec> primal_blocks,
                       std::vector<ConstraintBlock> constraint_blocks, BlockMatrix objective,
                       BlockMatrix bound, Eigen::MatrixXd phi)
    : primal_(std::move(primal_blocks)),
      constraint_(specs_of(constraint_blocks)),
      cblocks_(std::move(constraint_blocks)),
      a_(std::move(objective)),
      b_(std::move(bound)),
      phi_(std::move(phi)) {
  if (primal_.blocks().empty()) throw InvalidInput("problem needs at least one primal block");
  if (a_.size() != primal_.blocks().size())
    throw InvalidInput("objective has " + std::to_string(a_.size()) + " blocks, expected " +
                       std::to_string(primal_.blocks().size()));
  if (b_.size() != constraint_.blocks().size())
    throw InvalidInput("bound has " + std::to_string(b_.size()) + " blocks, expected " +
                       std::to_string(constraint_.blocks().size()));
  for (std::size_t i = 0; i < a_.size(); ++i) check_block(a_[i], primal_.blocks()[i], "objective");
  for (std::size_t i = 0; i < b_.size(); ++i) check_block(b_[i], constraint_.blocks()[i], "bound");
  if (phi_.rows() != constraint_.total() || phi_.cols() != primal_.total())
    throw InvalidInput("map matrix has shape " + std::to_string(phi_.rows()) + "x" +
                       std::to_string(phi_.cols()) + ", expected " +
                       std::to_string(constraint_.total()) + "x" + std::to_string(primal_.total()));
  if (!phi_.allFinite()) throw InvalidInput("map matrix has non-finite entries");
  for (auto& m : a_.blocks) m = ((m + m.adjoint()) / 2.0).eval();
  for (auto& m : b_.blocks) m = ((m + m.adjoint()) / 2.0).eval();
}

SdpProblem SdpProblem::from_map(std::vector<BlockSpec> primal_blocks,
                                std::vector<ConstraintBlock> constraint_blocks,
                                BlockMatrix objective, BlockMatrix bound, const LinearMap& phi) {
  const Layout in(primal_blocks);
  const Layout out(specs_of(constraint_blocks));
  Eigen::MatrixXd rep(out.total(), in.total());
  for (int k = 0; k < in.total(); ++k) {
    const BlockMatrix img = phi(in.basis_element(k));
    if (img.size() != out.blocks().size()) throw InvalidInput("map returned wrong block count");
    for (std::size_t i = 0; i < img.size(); ++i)
      check_block(img[i], out.blocks()[i], "map image");
    rep.col(k) = out.to_coords(img);
  }
  return SdpProblem(std::move(primal_blocks), std::move(constraint_blocks), std::move(objective),
                    std::move(bound), std::move(rep));
}

BlockMatrix SdpProblem::apply(const BlockMatrix& x) const {
  return constraint_.from_coords(phi_ * primal_.to_coords(x));
}

BlockMatrix SdpProblem::apply_adjoint(const BlockMatrix& y) const {
  return primal_.from_coords(phi_.transpose() * constraint_.to_coords(y));
}

std::string to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::primal_infeasible: return "primal_infeasible";
    case Status::dual_infeasible: return "dual_infeasible";
    case Status::max_iter: return "max_iter";
  }
  return "unknown";
}

double primal_infeasibility(const SdpProblem& problem, const BlockMatrix& x) {
  double worst = 0.0;
  for (const auto& b : x.blocks) worst = std::max(worst, -hermitian_eig_extreme(b, true));
  const BlockMatrix px = problem.apply(x);
  for (std::size_t i = 0; i < px.size(); ++i) {
    const CMatrix diff = px[i] - problem.bound()[i];
    if (problem.constraint_blocks()[i].equality) {
      worst = std::max({worst, hermitian_eig_extreme(diff, false), -hermitian_eig_extreme(diff, true)});
    } else {
      worst = std::max(worst, hermitian_eig_extreme(diff, false));
    }
  }
  return worst;
}

double dual_infeasibility(const SdpProblem& problem, const BlockMatrix& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!problem.constraint_blocks()[i].equality)
      worst = std::max(worst, -hermitian_eig_extreme(y[i], true));
  const BlockMatrix py = problem.apply_adjoint(y);
  for (std::size_t i = 0; i < py.size(); ++i)
    worst = std::max(worst, -hermitian_eig_extreme(py[i] - problem.objective()[i], true));
  return worst;
}

SlacknessReport check_slackness(const SdpProblem& problem, const SdpSolution& solution) {
  const BlockMatrix px = problem.apply(solution.x);
  const BlockMatrix py = problem.apply_adjoint(solution.y);
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i)
    r1 += ((problem.bound()[i] - px[i]) * solution.y[i]).squaredNorm();
  for (std::size_t i = 0; i < py.size(); ++i)
    r2 += ((py[i] - problem.objective()[i]) * solution.x[i]).squaredNorm();
  return {std::sqrt(r1), std::sqrt(r2)};
}

double slackness_threshold(const SdpProblem& problem, double tol) {
  return 10.0 * tol * (1.0 + problem.bound().frobenius() + problem.objective().frobenius());
}

}  // namespace asymdist::sdp

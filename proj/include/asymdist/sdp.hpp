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

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymdist/linalg.hpp"

// Semidefinite programs in the triple form (Phi, A, B):
//   primal  sup { Tr[A X] : Phi(X) <= B, X >= 0 }
//   dual    inf { Tr[B Y] : Phi^dagger(Y) >= A, Y >= 0 }
// Constraint blocks may be flagged as equalities, in which case the matching
// dual block is free (not sign constrained).
namespace asymdist::sdp {

enum class BlockKind { hermitian, real_symmetric };

struct BlockSpec {
  int dim = 1;
  BlockKind kind = BlockKind::hermitian;
  int coords() const { return kind == BlockKind::hermitian ? dim * dim : dim * (dim + 1) / 2; }
};

// Coordinates in the orthonormal basis: diagonal units first, then for each
// j < k the pair (E_jk + E_kj)/sqrt2 and (i E_jk - i E_kj)/sqrt2 (the latter
// only for Hermitian blocks).
void write_coords(const CMatrix& h, const BlockSpec& spec, double* out);
CMatrix from_coords(const double* c, const BlockSpec& spec);

struct BlockMatrix {
  std::vector<CMatrix> blocks;

  BlockMatrix() = default;
  explicit BlockMatrix(std::vector<CMatrix> b) : blocks(std::move(b)) {}
  static BlockMatrix zeros(std::span<const BlockSpec> specs);
  static BlockMatrix identity(std::span<const BlockSpec> specs);

  std::size_t size() const { return blocks.size(); }
  CMatrix& operator[](std::size_t i) { return blocks[i]; }
  const CMatrix& operator[](std::size_t i) const { return blocks[i]; }
  double inner(const BlockMatrix& o) const;  // sum of Tr[A_i B_i]
  double frobenius() const;
};

class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<BlockSpec> blocks);
  const std::vector<BlockSpec>& blocks() const { return blocks_; }
  int offset(std::size_t i) const { return offsets_[i]; }
  int total() const { return total_; }
  RVector to_coords(const BlockMatrix& m) const;
  BlockMatrix from_coords(const RVector& c) const;
  BlockMatrix basis_element(int k) const;

 private:
  std::vector<BlockSpec> blocks_;
  std::vector<int> offsets_;
  int total_ = 0;
};

struct ConstraintBlock {
  BlockSpec spec;
  bool equality = false;
};

using LinearMap = std::function<BlockMatrix(const BlockMatrix&)>;

// Optional analytic points, checked by probe_slater before any numeric search.
struct KnownPoints {
  std::optional<BlockMatrix> primal;
  std::optional<BlockMatrix> dual;
};

class SdpProblem {
 public:
  SdpProblem(std::vector<BlockSpec> primal_blocks, std::vector<ConstraintBlock> constraint_blocks,
             BlockMatrix objective, BlockMatrix bound, Eigen::MatrixXd phi);
  // Builds the matrix of phi by applying it to every primal basis element.
  static SdpProblem from_map(std::vector<BlockSpec> primal_blocks,
                             std::vector<ConstraintBlock> constraint_blocks,
                             BlockMatrix objective, BlockMatrix bound, const LinearMap& phi);

  const Layout& primal_layout() const { return primal_; }
  const Layout& constraint_layout() const { return constraint_; }
  const std::vector<ConstraintBlock>& constraint_blocks() const { return cblocks_; }
  const BlockMatrix& objective() const { return a_; }
  const BlockMatrix& bound() const { return b_; }
  const Eigen::MatrixXd& phi() const { return phi_; }

  BlockMatrix apply(const BlockMatrix& x) const;
  BlockMatrix apply_adjoint(const BlockMatrix& y) const;

  KnownPoints known_points;
  std::string label;

 private:
  Layout primal_;
  Layout constraint_;
  std::vector<ConstraintBlock> cblocks_;
  BlockMatrix a_;
  BlockMatrix b_;
  Eigen::MatrixXd phi_;
};

enum class Status { optimal, primal_infeasible, dual_infeasible, max_iter };
std::string to_string(Status s);

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 500;
  double step_fraction = 0.98;
};

struct SdpSolution {
  BlockMatrix x;
  BlockMatrix y;
  double primal_value = 0.0;  // Tr[A X]
  double dual_value = 0.0;    // Tr[B Y]
  double gap = 0.0;           // dual_value - primal_value
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  Status status = Status::max_iter;
  int iterations = 0;
  std::string diagnostics;
};

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});

// Largest violation of X >= 0, Phi(X) <= B (equality blocks: Phi(X) = B).
double primal_infeasibility(const SdpProblem& problem, const BlockMatrix& x);
// Largest violation of Y >= 0 (inequality blocks) and Phi^dagger(Y) >= A.
double dual_infeasibility(const SdpProblem& problem, const BlockMatrix& y);

struct SlacknessReport {
  double residual_1 = 0.0;  // ||B Y - Phi(X) Y||
  double residual_2 = 0.0;  // ||Phi^dagger(Y) X - A X||
};

SlacknessReport check_slackness(const SdpProblem& problem, const SdpSolution& solution);
// 10 tol (1 + ||B|| + ||A||).
double slackness_threshold(const SdpProblem& problem, double tol);

struct SideReport {
  bool feasible = false;
  bool strict = false;
  double margin = 0.0;  // smallest eigenvalue slack of the point examined
  bool analytic = false;
};

struct SlaterReport {
  SideReport primal;
  SideReport dual;
  bool primal_strict() const { return primal.strict; }
  bool dual_strict() const { return dual.strict; }
};

SlaterReport probe_slater(const SdpProblem& problem);

void dump(const SdpProblem& problem, std::ostream& out);
SdpProblem load(std::istream& in);

}  // namespace asymdist::sdp

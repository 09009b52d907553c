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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "asymdist/entropy.hpp"
#include "asymdist/linalg.hpp"
#include "asymdist/sdp.hpp"

namespace asymdist {

class StatePair {
 public:
  StatePair(DensityMatrix rho, DensityMatrix sigma);
  const DensityMatrix& rho() const { return rho_; }
  const DensityMatrix& sigma() const { return sigma_; }
  int dim() const { return rho_.dim(); }
  StatePair swapped() const { return StatePair(sigma_, rho_); }

 private:
  DensityMatrix rho_;
  DensityMatrix sigma_;
};

// The bit of asymmetric distinguishability at budget m: (|0><0|, pi_{2^m}).
StatePair golden_pair(double m);

struct ExponentOptions {
  double tol = 1e-10;  // solver tolerance on gap, residuals and centrality
};

// Thrown when the solver cannot certify an instance.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExponentKind {
  distill_error,
  distill_strong_converse,
  dilute_error,
  dilute_strong_converse,
  transform_error
};
std::string to_string(ExponentKind k);

struct DilutionWitness {
  HermitianMatrix state;  // the approximating state, trace one
  HermitianMatrix slack;  // Z >= state - rho
};
struct ChannelWitness {
  HermitianMatrix choi;   // sum_ij |i><j| (x) N(|i><j|)
  HermitianMatrix slack;  // Z >= N(rho) - tau
};
struct DistillationDual {
  double lambda = 0.0;
  HermitianMatrix w;
};
struct DilutionDual {
  double kappa = 0.0;
  HermitianMatrix r;
  HermitianMatrix s;
};
struct TransformationDual {
  HermitianMatrix error;     // multiplier of Z >= N(rho) - tau
  HermitianMatrix trace;     // multiplier of Tr_out J = I
  HermitianMatrix target;    // multiplier of N(sigma) = omega
};

struct Residual {
  std::string name;
  double value = 0.0;
};

// `epsilon` is always the optimal transformation error. Error exponents
// report value = -log2(epsilon); strong converse exponents report
// value = -log2(1 - epsilon).
struct ExponentResult {
  ExponentKind kind = ExponentKind::distill_error;
  double m = 0.0;
  ExtendedReal value;
  double epsilon = 0.0;
  std::variant<DilutionWitness, MeasurementOperator, ChannelWitness> primal_witness;
  std::variant<DistillationDual, DilutionDual, TransformationDual> dual_witness;
  double gap = 0.0;  // dual minus primal value over max(1, |primal value|)
  std::vector<Residual> slackness;    // optimality conditions of the program
  std::vector<Residual> feasibility;  // constraint violations of both witnesses
  bool exact = false;                 // settled analytically, no solver run

  double max_slackness() const;
  double max_infeasibility() const;
};

// Smooth relative entropies.
struct MinDual {
  double mu = 0.0;
  HermitianMatrix x;
};
struct MaxWitness {
  double lambda = 0.0;
  HermitianMatrix state;
  HermitianMatrix slack;
};
struct MaxDual {
  double t = 0.0;
  HermitianMatrix x;
  HermitianMatrix q;
  double mu = 0.0;
};

struct SmoothEntropyResult {
  ExtendedReal value;
  double epsilon = 0.0;
  std::variant<MaxWitness, MeasurementOperator> witness;
  // Absent only where the dual optimum is not attained (D_min at eps = 0).
  std::optional<std::variant<MinDual, MaxDual>> dual_witness;
  double gap = 0.0;  // as in ExponentResult
  std::vector<Residual> feasibility;
  bool exact = false;

  double max_infeasibility() const;
};

SmoothEntropyResult smooth_dmin(const StatePair& pair, double eps, const ExponentOptions& opt = {});
SmoothEntropyResult smooth_dmax(const StatePair& pair, double eps, const ExponentOptions& opt = {});

ExponentResult err_exp_distill(const StatePair& pair, double m, const ExponentOptions& opt = {});
ExponentResult sc_exp_distill(const StatePair& pair, double m, const ExponentOptions& opt = {});
ExponentResult err_exp_dilute(const StatePair& pair, double m, const ExponentOptions& opt = {});
ExponentResult sc_exp_dilute(const StatePair& pair, double m, const ExponentOptions& opt = {});

// Error exponent of the one-shot transformation (rho, sigma) -> (tau, omega)
// over channels that map sigma exactly to omega.
ExponentResult statepair_err_exp(const StatePair& source, const StatePair& target,
                                 const ExponentOptions& opt = {});

// The underlying programs, with their known feasible points attached.
// Distillation: sup Tr[rho L] s.t. Tr[sigma L] <= 2^-m, L <= I.
sdp::SdpProblem distillation_problem(const StatePair& pair, double m);
// Dilution: sup -Tr[Z] s.t. rt - Z <= rho, rt <= 2^m sigma, Tr[rt] >= 1.
sdp::SdpProblem dilution_problem(const StatePair& pair, double m);
sdp::SdpProblem dmin_problem(const StatePair& pair, double eps);
sdp::SdpProblem dmax_problem(const StatePair& pair, double eps);
sdp::SdpProblem transformation_problem(const StatePair& source, const StatePair& target);

// N(x) = Tr_in[(x^T (x) I) J] for a Choi operator on in (x) out.
HermitianMatrix apply_choi(const HermitianMatrix& choi, const HermitianMatrix& x, int dim_out);

}  // namespace asymdist

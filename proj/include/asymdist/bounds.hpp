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
#include <vector>

#include "asymdist/entropy.hpp"
#include "asymdist/exponents.hpp"

namespace asymdist {

// One asserted relation. `le` asserts lhs <= rhs, `eq` asserts lhs = rhs;
// both within `tolerance`. Infinite sides compare in the extended sense.
struct Check {
  enum class Kind { le, eq };
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Kind kind = Kind::le;
  double tolerance = 0.0;

  double defect() const;
  bool holds() const { return defect() <= tolerance; }
};

bool all_hold(const std::vector<Check>& checks);

struct BoundBranch {
  std::string name;
  double value = 0.0;  // may be -inf when every alpha was excluded
  double alpha = 0.0;
};

// The certificate behind the distillation error bound: the Neyman-Pearson
// test at the prior p chosen for the maximizing alpha.
struct TestCertificate {
  double alpha = 0.0;
  double p = 0.0;
  MeasurementOperator test;
  double type_one = 0.0;  // Tr[(I - T) rho]
  double type_two = 0.0;  // Tr[T sigma]
};

struct BoundReport {
  std::string name;
  double bound_value = 0.0;
  double maximizing_alpha = 0.0;
  ExtendedReal target_value;
  bool has_target = true;
  double slack = 0.0;  // target - bound, +inf when the target is infinite
  bool vacuous = false;  // bound <= 0 says nothing about a nonnegative exponent
  std::vector<BoundBranch> branches;
  std::vector<Check> checks;
  std::optional<TestCertificate> certificate;

  bool holds(double tol = 1e-7) const { return !has_target || slack >= -tol; }
};

// Strong converse of distillation: sup_{a>1} ((a-1)/a)(m - Dt_a).
BoundReport bound_sc_distill(const StatePair& pair, double m, const ExponentOptions& opt = {});
// Error exponent of distillation: sup_{a in (0,1)} ((1-a)/a)(D_a - m).
BoundReport bound_err_distill(const StatePair& pair, double m, const ExponentOptions& opt = {});
// Strong converse of dilution, two branches over Petz and sandwiched orders.
BoundReport bound_sc_dilute(const StatePair& pair, double m, const ExponentOptions& opt = {});
// sup_{a in (0,1)} (1-a)(D_a - m), twice the first branch above.
BoundReport bound_sd22(const StatePair& pair, double m, const ExponentOptions& opt = {});
// Strong converse bound for (rho, sigma) -> (tau, omega) at rate ratio = m/n.
// The target value is the single-copy exponent, computed only for ratio 1.
BoundReport statepair_sc_bound(const StatePair& source, const StatePair& target, double ratio,
                               const ExponentOptions& opt = {});

// Projector onto the nonnegative eigenspace of p rho - (1-p) sigma.
MeasurementOperator np_test_operator(double p, const StatePair& pair);
// p Tr[(I-T) rho] + (1-p) Tr[T sigma].
double np_error(double p, const StatePair& pair, const MeasurementOperator& test);
// The optimum of the above, (1 - ||p rho - (1-p) sigma||_1) / 2.
double helstrom_error(double p, const StatePair& pair);

// Asymptotic right-hand sides at rate r.
double hoeffding_rhs(const StatePair& pair, double r);
double sc_rhs(const StatePair& pair, double r);

// Alpha ranges used by every search.
inline constexpr double kAlphaFloor = 1e-6;         // smallest order below one
inline constexpr double kAlphaBelowOne = 1e-9;      // orders stop at 1 - this
inline constexpr double kAlphaCeiling = 1e3;        // largest order above one
inline constexpr double kHalfOffset = 1e-6;         // (1/2, 1) branch starts at 1/2 + this

}  // namespace asymdist

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

#include <string>
#include <vector>

#include "asymdist/bounds.hpp"
#include "asymdist/exponents.hpp"

namespace asymdist {

struct RelationReport {
  std::string name;
  ExtendedReal m;  // the budget the relation was evaluated at
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool holds() const { return all_hold(checks); }
};

// m = D_min^eps, then E_d^m = -log2 eps, with the optimal test and the
// rescaled dual (1/mu, X/mu) carried over as witnesses.
RelationReport dmin_errexp_link(const StatePair& pair, double eps, const ExponentOptions& opt = {});
// 2^{-Et_d^m(sigma||rho)} + 2^{-D_min^eps(rho||sigma)} = 1 at m = log2(1/eps).
RelationReport dmin_swap_identity(const StatePair& pair, double eps,
                                  const ExponentOptions& opt = {});
// m = D_max^eps, then E_c^m = -log2 eps; both dual substitutions.
RelationReport dmax_errexp_link(const StatePair& pair, double eps, const ExponentOptions& opt = {});
// ((a-1)/2)(m - Dt_a) <= E_c^m + ((a-1)/2) log2(1/(1 - 2^{-2 E_c^m})).
RelationReport bound_err_dilute_check(const StatePair& pair, double m,
                                      const std::vector<double>& alphas = {1.5, 2.0, 3.0, 5.0},
                                      const ExponentOptions& opt = {});
// Mixed bounds between distillation at m and dilution at k.
RelationReport cross_bounds(const StatePair& pair, double k, double m,
                            const ExponentOptions& opt = {});

}  // namespace asymdist

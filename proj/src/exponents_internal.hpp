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

#include "asymdist/exponents.hpp"
#include "asymdist/sdp.hpp"

namespace asymdist::detail {

inline CMatrix scalar_block(double v) { return CMatrix::Constant(1, 1, Complex(v, 0.0)); }
inline double scalar_of(const CMatrix& m) { return m(0, 0).real(); }

// Real symmetric blocks halve the variable count when every input is real.
sdp::BlockKind block_kind(std::initializer_list<const CMatrix*> data);

// Amount by which a fails to be PSD (0 when it is).
double psd_violation(const HermitianMatrix& a);
double psd_violation(const CMatrix& a);
double op_norm(const CMatrix& a);

// Duality gap relative to the size of the optimal value, when that exceeds one.
double scaled_gap(const sdp::SdpSolution& s);

// Solves with the caller's tolerance, retries with shorter steps and then
// looser, and falls back to a stalled run only when its gap and residuals
// are already certified small.
// Throws SolverFailure otherwise. A primal_infeasible status is returned
// untouched when allow_infeasible is set.
sdp::SdpSolution solve_certified(const sdp::SdpProblem& problem, const ExponentOptions& opt,
                                 const std::string& what, bool allow_infeasible = false);

void require_exponent_parameter(double m, const char* name);

}  // namespace asymdist::detail

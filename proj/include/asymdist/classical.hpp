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

#include <span>

#include "asymdist/entropy.hpp"

namespace asymdist {

struct ClassicalExponents {
  double distill_error = 0.0;  // optimal distillation error
  double dilute_error = 0.0;   // optimal dilution error
  ExtendedReal err_exp;        // -log2 distill_error
  ExtendedReal sc_exp;         // -log2 (1 - distill_error)
  ExtendedReal dilute_err_exp; // -log2 dilute_error
};

// Exact programs for commuting pairs given as probability vectors.
// Distillation fills the budget 2^-m greedily by likelihood ratio p_i/q_i
// (q_i = 0 first) with a fractional last element; dilution pays the deficit
// sum_i (p_i - 2^m q_i)_+.
ClassicalExponents classical_fast_path(std::span<const double> p, std::span<const double> q,
                                       double m);

}  // namespace asymdist

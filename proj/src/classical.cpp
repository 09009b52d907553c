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

#include "asymdist/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace asymdist {

namespace {

void require_distribution(std::span<const double> p, const char* name) {
  if (p.empty()) throw InvalidInput(std::string(name) + " is empty");
  double total = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0)
      throw InvalidInput(std::string(name) + " has a negative or non-finite entry");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw InvalidInput(std::string(name) + " sums to " + std::to_string(total) + ", not 1");
}

ExtendedReal neg_log2(double x) {
  if (x <= 0.0) return ExtendedReal::infinity();
  return ExtendedReal(std::max(0.0, -std::log2(x)));
}

}  // namespace

ClassicalExponents classical_fast_path(std::span<const double> p, std::span<const double> q,
                                       double m) {
  require_distribution(p, "p");
  require_distribution(q, "q");
  if (p.size() != q.size()) throw InvalidInput("p and q have different lengths");
  if (!std::isfinite(m) || m < 0.0) throw InvalidInput("m must be finite and nonnegative");

  // Outcomes with p = 0 never help; the rest go in order of p/q, with
  // q = 0 treated as an infinite ratio.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p[a] * q[b] > p[b] * q[a];
  });

  // The error is the p-mass left out, summed directly so that a full
  // acceptance gives exactly zero.
  double budget = std::exp2(-m);
  std::size_t k = 0;
  for (; k < order.size() && q[order[k]] <= budget; ++k) budget -= q[order[k]];
  double missed = 0.0;
  if (k < order.size()) {
    const std::size_t j = order[k];
    missed += p[j] * (1.0 - budget / q[j]);
    for (std::size_t i = k + 1; i < order.size(); ++i) missed += p[order[i]];
  }

  const double scale = std::exp2(m);
  double deficit = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) deficit += std::max(0.0, p[i] - scale * q[i]);

  ClassicalExponents out;
  out.distill_error = std::clamp(missed, 0.0, 1.0);
  out.dilute_error = std::clamp(deficit, 0.0, 1.0);
  out.err_exp = neg_log2(out.distill_error);
  out.sc_exp = neg_log2(1.0 - out.distill_error);
  out.dilute_err_exp = neg_log2(out.dilute_error);
  return out;
}

}  // namespace asymdist

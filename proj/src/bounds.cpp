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

#include "asymdist/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asymdist/search.hpp"

namespace asymdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite values pass through; +inf divergences make a term excluded or
// unbounded depending on the sign it enters with.
double as_double(const ExtendedReal& x) { return x.value(); }

double safe_product(double factor, double diff) {
  const double v = factor * diff;
  return std::isnan(v) ? -kInf : v;
}

BoundBranch search_branch(const std::string& name, const std::function<double(double)>& f,
                          double lo, double hi) {
  const SearchResult s = maximize_on_interval(f, lo, hi);
  return {name, s.value, s.argmax};
}

// Orders above one through u = 1 - 1/a, so the search interval is compact.
BoundBranch search_above_one(const std::string& name, const std::function<double(double)>& f) {
  const auto g = [&](double u) { return f(1.0 / (1.0 - u)); };
  const double hi = 1.0 - 1.0 / kAlphaCeiling;
  const SearchResult s = maximize_on_interval(g, kAlphaBelowOne, hi);
  return {name, s.value, 1.0 / (1.0 - s.argmax)};
}

void finish(BoundReport& r, const ExtendedReal& target) {
  r.bound_value = -kInf;
  for (const auto& b : r.branches) {
    if (b.value > r.bound_value) {
      r.bound_value = b.value;
      r.maximizing_alpha = b.alpha;
    }
  }
  r.vacuous = !(r.bound_value > 0.0);
  r.target_value = target;
  if (!r.has_target || target.is_infinite())
    r.slack = kInf;
  else
    r.slack = target.value() - r.bound_value;
}

}  // namespace

double Check::defect() const {
  if (kind == Kind::le) {
    if (lhs == -kInf || rhs == kInf) return 0.0;
    if (lhs == kInf || rhs == -kInf) return kInf;
    return std::max(0.0, lhs - rhs);
  }
  if (lhs == rhs) return 0.0;
  if (std::isinf(lhs) || std::isinf(rhs)) return kInf;
  return std::abs(lhs - rhs);
}

bool all_hold(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds(); });
}

MeasurementOperator np_test_operator(double p, const StatePair& pair) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("prior p must lie in (0, 1)");
  const HermitianMatrix diff = p * pair.rho().hermitian() - (1.0 - p) * pair.sigma().hermitian();
  const Spectrum s = eig_hermitian(diff);
  const double cut = -1e-12 * std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  return MeasurementOperator::clamped(
      spectral_map(s, [cut](double x) { return x >= cut ? 1.0 : 0.0; }));
}

double np_error(double p, const StatePair& pair, const MeasurementOperator& test) {
  const double miss = 1.0 - test.hermitian().inner(pair.rho());
  return p * miss + (1.0 - p) * test.hermitian().inner(pair.sigma());
}

double helstrom_error(double p, const StatePair& pair) {
  return 0.5 * (1.0 - trace_norm(p * pair.rho().hermitian() - (1.0 - p) * pair.sigma().hermitian()));
}

BoundReport bound_sc_distill(const StatePair& pair, double m, const ExponentOptions& opt) {
  const RenyiCurve curve(pair.rho(), pair.sigma());
  BoundReport r;
  r.name = "bound_sc_distill";
  r.branches.push_back(search_above_one("sandwiched", [&](double a) {
    return safe_product((a - 1.0) / a, m - as_double(curve.sandwiched(a)));
  }));
  finish(r, sc_exp_distill(pair, m, opt).value);
  return r;
}

BoundReport bound_err_distill(const StatePair& pair, double m, const ExponentOptions& opt) {
  const RenyiCurve curve(pair.rho(), pair.sigma());
  BoundReport r;
  r.name = "bound_err_distill";
  r.branches.push_back(search_branch(
      "petz",
      [&](double a) { return safe_product((1.0 - a) / a, as_double(curve.petz(a)) - m); },
      kAlphaFloor, 1.0 - kAlphaBelowOne));
  finish(r, err_exp_distill(pair, m, opt).value);

  // The constructive test behind the bound: at the maximizing order choose
  // p with 2^-m = (p/(1-p))^a Tr[rho^a sigma^(1-a)].
  const double a = r.maximizing_alpha;
  const ExtendedReal da = curve.petz(a);
  if (da.is_finite()) {
    const double x = (m + (a - 1.0) * da.value()) / a;
    const double p = 1.0 / (1.0 + std::exp2(x));
    if (p > 0.0 && p < 1.0) {
      MeasurementOperator t = np_test_operator(p, pair);
      const double type_one = 1.0 - t.hermitian().inner(pair.rho());
      const double type_two = t.hermitian().inner(pair.sigma());
      r.checks.push_back({"Tr[T sigma] <= 2^-m", type_two, std::exp2(-m), Check::Kind::le, 1e-9});
      const double achieved = type_one > 0.0 ? -std::log2(type_one) : kInf;
      const double branch = ((1.0 - a) / a) * (da.value() - m);
      r.checks.push_back(
          {"bound <= -log2 Tr[(I - T) rho]", branch, achieved, Check::Kind::le, 1e-9});
      r.certificate = TestCertificate{a, p, std::move(t), type_one, type_two};
    }
  }
  return r;
}

BoundReport bound_sc_dilute(const StatePair& pair, double m, const ExponentOptions& opt) {
  const RenyiCurve curve(pair.rho(), pair.sigma());
  BoundReport r;
  r.name = "bound_sc_dilute";
  r.branches.push_back(search_branch(
      "petz",
      [&](double a) { return safe_product((1.0 - a) / 2.0, as_double(curve.petz(a)) - m); },
      kAlphaFloor, 1.0 - kAlphaBelowOne));
  r.branches.push_back(search_branch(
      "sandwiched",
      [&](double a) {
        return safe_product((1.0 - a) / (2.0 * a), as_double(curve.sandwiched(a)) - m);
      },
      0.5 + kHalfOffset, 1.0 - kAlphaBelowOne));
  finish(r, sc_exp_dilute(pair, m, opt).value);
  return r;
}

BoundReport bound_sd22(const StatePair& pair, double m, const ExponentOptions& opt) {
  const RenyiCurve curve(pair.rho(), pair.sigma());
  BoundReport r;
  r.name = "bound_sd22";
  r.branches.push_back(search_branch(
      "petz", [&](double a) { return safe_product(1.0 - a, as_double(curve.petz(a)) - m); },
      kAlphaFloor, 1.0 - kAlphaBelowOne));
  const BoundBranch half = search_branch(
      "petz halved",
      [&](double a) { return safe_product((1.0 - a) / 2.0, as_double(curve.petz(a)) - m); },
      kAlphaFloor, 1.0 - kAlphaBelowOne);
  finish(r, sc_exp_dilute(pair, m, opt).value);
  // Compared as bounds on a nonnegative exponent: below zero both say nothing.
  r.checks.push_back({"halved branch <= bound", std::max(half.value, 0.0),
                      std::max(r.bound_value, 0.0), Check::Kind::le, 1e-9});
  return r;
}

BoundReport statepair_sc_bound(const StatePair& source, const StatePair& target, double ratio,
                               const ExponentOptions& opt) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw InvalidInput("ratio must be positive");
  const RenyiCurve src(source.rho(), source.sigma());
  const RenyiCurve tgt(target.rho(), target.sigma());
  BoundReport r;
  r.name = "statepair_sc_bound";
  r.branches.push_back(search_branch(
      "petz",
      [&](double a) {
        const double lost = as_double(src.petz(2.0 - a));
        if (std::isinf(lost)) return -kInf;
        return safe_product((1.0 - a) / 2.0, ratio * as_double(tgt.petz(a)) - lost);
      },
      kAlphaFloor, 1.0 - kAlphaBelowOne));
  r.branches.push_back(search_branch(
      "sandwiched",
      [&](double a) {
        const double lost = as_double(src.sandwiched(a / (2.0 * a - 1.0)));
        if (std::isinf(lost)) return -kInf;
        return safe_product((1.0 - a) / (2.0 * a), ratio * as_double(tgt.sandwiched(a)) - lost);
      },
      0.5 + kHalfOffset, 1.0 - kAlphaBelowOne));
  ExtendedReal value = ExtendedReal::infinity();
  if (ratio == 1.0) {
    const double eps = statepair_err_exp(source, target, opt).epsilon;
    value = eps < 1.0 ? ExtendedReal(std::max(0.0, -std::log2(1.0 - eps)))
                      : ExtendedReal::infinity();
  } else {
    r.has_target = false;
  }
  finish(r, value);
  return r;
}

double hoeffding_rhs(const StatePair& pair, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("rate must be positive");
  const RenyiCurve curve(pair.rho(), pair.sigma());
  return search_branch(
             "petz",
             [&](double a) { return safe_product((a - 1.0) / a, r - as_double(curve.petz(a))); },
             kAlphaFloor, 1.0 - kAlphaBelowOne)
      .value;
}

double sc_rhs(const StatePair& pair, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("rate must be positive");
  const RenyiCurve curve(pair.rho(), pair.sigma());
  return search_above_one("sandwiched", [&](double a) {
           return safe_product((a - 1.0) / a, r - as_double(curve.sandwiched(a)));
         }).value;
}

}  // namespace asymdist

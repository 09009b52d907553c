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

#include "asymdist/relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exponents_internal.hpp"

namespace asymdist {

using detail::psd_violation;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kValueTol = 1e-5;
constexpr double kWitnessTol = 1e-6;

void require_open_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("eps must lie in (0, 1)");
}

double neg_log2(double x) { return x > 0.0 ? -std::log2(x) : kInf; }

Check le(std::string name, double lhs, double rhs, double tol) {
  return {std::move(name), lhs, rhs, Check::Kind::le, tol};
}
Check eq(std::string name, double lhs, double rhs, double tol) {
  return {std::move(name), lhs, rhs, Check::Kind::eq, tol};
}
// A PSD requirement as "violation <= 0".
Check psd(std::string name, const CMatrix& a) {
  return le(std::move(name), psd_violation(a), 0.0, kWitnessTol);
}

}  // namespace

RelationReport dmin_errexp_link(const StatePair& pair, double eps, const ExponentOptions& opt) {
  require_open_eps(eps);
  RelationReport r;
  r.name = "dmin_errexp_link";
  const SmoothEntropyResult dmin = smooth_dmin(pair, eps, opt);
  r.m = dmin.value;
  if (dmin.value.is_infinite()) {
    // +inf convention: the distillation error stays within eps at any budget.
    r.notes.push_back("D_min is infinite: checked at a large budget instead");
    const ExponentResult ed = err_exp_distill(pair, 40.0, opt);
    r.checks.push_back(le("-log2 eps <= E_d^40", -std::log2(eps), ed.value.value(), kValueTol));
    return r;
  }
  const double m = dmin.value.value();
  const ExponentResult ed = err_exp_distill(pair, m, opt);
  r.checks.push_back(eq("E_d^m = -log2 eps", ed.value.value(), -std::log2(eps), kValueTol));

  // The optimal test is feasible for the distillation program at m.
  const auto& lam = std::get<MeasurementOperator>(dmin.witness).hermitian();
  r.checks.push_back(le("Tr[L sigma] <= 2^-m", lam.inner(pair.sigma()), std::exp2(-m), 1e-7));
  r.checks.push_back(le("Tr[(I - L) rho] <= eps", 1.0 - lam.inner(pair.rho()), eps, 1e-7));

  if (dmin.dual_witness) {
    const auto& dual = std::get<MinDual>(*dmin.dual_witness);
    if (dual.mu > 0.0) {
      const double lambda = 1.0 / dual.mu;
      const CMatrix w = dual.x.matrix() / dual.mu;
      r.checks.push_back(le("lambda >= 0", -lambda, 0.0, kWitnessTol));
      r.checks.push_back(psd("W >= 0", w));
      r.checks.push_back(psd("lambda sigma + W >= rho",
                             CMatrix(lambda * pair.sigma().matrix() + w - pair.rho().matrix())));
      r.checks.push_back(eq("lambda 2^-m + Tr[W] = 1 - eps",
                            lambda * std::exp2(-m) + w.trace().real(), 1.0 - eps, kValueTol));
    } else {
      r.notes.push_back("dual multiplier mu is zero; substitution skipped");
    }
  }
  return r;
}

RelationReport dmin_swap_identity(const StatePair& pair, double eps, const ExponentOptions& opt) {
  require_open_eps(eps);
  RelationReport r;
  r.name = "dmin_swap_identity";
  const double m = std::log2(1.0 / eps);
  r.m = ExtendedReal(m);
  const StatePair swapped = pair.swapped();
  const ExponentResult sc = sc_exp_distill(swapped, m, opt);
  const ExponentResult err = err_exp_distill(swapped, m, opt);
  const SmoothEntropyResult dmin = smooth_dmin(pair, eps, opt);
  r.checks.push_back(eq("2^-Et_d(sigma||rho) + 2^-D_min(rho||sigma) = 1",
                        sc.value.exp2_neg() + dmin.value.exp2_neg(), 1.0, 1e-7));
  r.checks.push_back(
      eq("D_min(rho||sigma) = E_d(sigma||rho)", dmin.value.value(), err.value.value(), kValueTol));
  return r;
}

RelationReport dmax_errexp_link(const StatePair& pair, double eps, const ExponentOptions& opt) {
  require_open_eps(eps);
  RelationReport r;
  r.name = "dmax_errexp_link";
  const SmoothEntropyResult dmax = smooth_dmax(pair, eps, opt);
  r.m = dmax.value;
  if (dmax.value.is_infinite()) {
    // +inf convention: E_c^m stays below -log2 eps at every budget. Past the
    // inverse smallest eigenvalue of sigma the dilution error no longer moves.
    r.notes.push_back("D_max is infinite: checked past the budget where the support saturates");
    const RVector ev = eig_hermitian(pair.sigma().hermitian()).eigenvalues;
    double floor = 1.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > kSupportCutoff) floor = std::min(floor, ev(i));
    const double m = -std::log2(floor) + 4.0;
    const ExponentResult ec = err_exp_dilute(pair, m, opt);
    r.checks.push_back(le("eps <= eps_c past saturation", eps, ec.epsilon, kValueTol));
    return r;
  }
  const double m = dmax.value.value();
  const ExponentResult ec = err_exp_dilute(pair, m, opt);
  const int d = pair.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix& rho = pair.rho().matrix();
  const CMatrix& sigma = pair.sigma().matrix();

  if (m == 0.0 && trace_distance(pair.rho(), pair.sigma()) < eps) {
    // The budget floor is active, so only one direction survives.
    r.notes.push_back("D_max^eps is clipped at zero; the link reduces to an inequality");
    r.checks.push_back(le("-log2 eps <= E_c^0", -std::log2(eps), ec.value.value(), kValueTol));
  } else {
    r.checks.push_back(eq("E_c^m = -log2 eps", ec.value.value(), -std::log2(eps), kValueTol));
  }

  // Forward: S = X/t, R = I - Q/t, kappa = 1 + mu/t.
  if (dmax.dual_witness) {
    const auto& dual = std::get<MaxDual>(*dmax.dual_witness);
    if (dual.t > 0.0) {
      const CMatrix s = dual.x.matrix() / dual.t;
      const CMatrix rr = id - dual.q.matrix() / dual.t;
      const double kappa = 1.0 + dual.mu / dual.t;
      r.checks.push_back(psd("R >= 0", rr));
      r.checks.push_back(psd("R <= I", CMatrix(id - rr)));
      r.checks.push_back(psd("S >= 0", s));
      r.checks.push_back(psd("R + S >= kappa I", CMatrix(rr + s - kappa * id)));
      const double value =
          kappa - (rr * rho).trace().real() - std::exp2(m) * (s * sigma).trace().real();
      r.checks.push_back(eq("kappa - Tr[R rho] - 2^m Tr[S sigma] = eps", value, eps, kValueTol));
    } else {
      r.notes.push_back("dual multiplier t is zero; forward substitution skipped");
    }
  }

  // Inverse: t = 1/Tr[S sigma], X = S t, Q = (I - R) t, mu = (kappa - 1) t.
  if (!ec.exact) {
    const auto& dual = std::get<DilutionDual>(ec.dual_witness);
    const double mass = dual.s.inner(pair.sigma());
    if (mass > 0.0) {
      const double t = 1.0 / mass;
      const CMatrix x = dual.s.matrix() * t;
      const CMatrix q = (id - dual.r.matrix()) * t;
      const double mu = (dual.kappa - 1.0) * t;
      // Scaled by t, so the tolerance scales with it.
      const double tol = kWitnessTol * std::max(1.0, t);
      r.checks.push_back(le("X >= 0", psd_violation(x), 0.0, tol));
      r.checks.push_back(le("Q >= 0", psd_violation(q), 0.0, tol));
      r.checks.push_back(le("Q <= t I", psd_violation(CMatrix(t * id - q)), 0.0, tol));
      r.checks.push_back(le("Q + mu I <= X", psd_violation(CMatrix(x - q - mu * id)), 0.0, tol));
      r.checks.push_back(le("Tr[X sigma] <= 1", (x * sigma).trace().real(), 1.0, kWitnessTol));
      const double value = (q * rho).trace().real() + mu - ec.epsilon * t;
      r.checks.push_back(eq("log2(Tr[Q rho] + mu - eps t) = m",
                            value > 0.0 ? std::log2(value) : -kInf, m, kValueTol));
    } else {
      r.notes.push_back("Tr[S sigma] vanishes; inverse substitution skipped");
    }
  }
  return r;
}

RelationReport bound_err_dilute_check(const StatePair& pair, double m,
                                      const std::vector<double>& alphas,
                                      const ExponentOptions& opt) {
  RelationReport r;
  r.name = "bound_err_dilute_check";
  r.m = ExtendedReal(m);
  const ExponentResult ec = err_exp_dilute(pair, m, opt);
  const RenyiCurve curve(pair.rho(), pair.sigma());
  if (ec.value.is_infinite()) r.notes.push_back("E_c^m is infinite; every order holds trivially");
  for (double a : alphas) {
    if (!(a > 1.0)) throw InvalidInput("orders for this check must exceed 1");
    const double lhs = ((a - 1.0) / 2.0) * (m - curve.sandwiched(a).value());
    double rhs = kInf;
    if (ec.value.is_finite()) {
      const double e = ec.value.value();
      rhs = e + ((a - 1.0) / 2.0) * neg_log2(1.0 - std::exp2(-2.0 * e));
    }
    r.checks.push_back(le("alpha = " + ExtendedReal(a).to_string(4), lhs, rhs, kWitnessTol));
  }
  return r;
}

RelationReport cross_bounds(const StatePair& pair, double k, double m, const ExponentOptions& opt) {
  detail::require_exponent_parameter(k, "k");
  detail::require_exponent_parameter(m, "m");
  RelationReport r;
  r.name = "cross_bounds";
  r.m = ExtendedReal(m);
  const ExponentResult ec = err_exp_dilute(pair, k, opt);
  const ExponentResult ed = err_exp_distill(pair, m, opt);
  const double shift = std::exp2(k - m);
  // The strong converse exponents share their errors with the above.
  const double sc_d = neg_log2(1.0 - ed.epsilon);
  const double sc_c = neg_log2(1.0 - ec.epsilon);
  r.checks.push_back(le("-log2(2^-E_c^k + 2^(k-m)) <= Et_d^m",
                        neg_log2(ec.value.exp2_neg() + shift), sc_d, 1e-7));
  r.checks.push_back(le("-log2(2^-E_d^m + 2^(k-m)) <= Et_c^k",
                        neg_log2(ed.value.exp2_neg() + shift), sc_c, 1e-7));
  r.checks.push_back(le("2^-Et_d^m + 2^-Et_c^k <= 1 + 2^(k-m)",
                        (1.0 - ed.epsilon) + (1.0 - ec.epsilon), 1.0 + shift, 1e-7));
  return r;
}

}  // namespace asymdist

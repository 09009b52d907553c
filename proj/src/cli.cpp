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

#include "asymdist/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "asymdist/bounds.hpp"
#include "asymdist/classical.hpp"
#include "asymdist/entropy.hpp"
#include "asymdist/exponents.hpp"
#include "asymdist/oracle.hpp"
#include "asymdist/pair_file.hpp"
#include "asymdist/relations.hpp"

namespace asymdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxSweepPoints = 10000;

// Thrown for argument problems found after CLI11 has parsed.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One named proposition of the verify command.
struct Suite {
  explicit Suite(std::string n) : name(std::move(n)) {}
  std::string name;
  double worst = 0.0;
  long checks = 0;
  long failures = 0;
  std::string first_failure;
  std::string skipped;  // reason, when the suite does not apply

  void add(const Check& c) {
    ++checks;
    const double d = c.defect();
    worst = std::max(worst, d);
    if (!(d <= c.tolerance)) {
      if (failures++ == 0) first_failure = c.name + " (defect " + format_number(d) + ")";
    }
  }
  void le(std::string what, double lhs, double rhs, double tol) {
    add({std::move(what), lhs, rhs, Check::Kind::le, tol});
  }
  void eq(std::string what, double lhs, double rhs, double tol) {
    add({std::move(what), lhs, rhs, Check::Kind::eq, tol});
  }
  void error(const std::string& what) {
    ++checks;
    worst = kInf;
    if (failures++ == 0) first_failure = what;
  }
  bool passed() const { return failures == 0; }
};

std::string with_pair(std::size_t index, const std::string& what) {
  return "pair " + std::to_string(index) + ": " + what;
}

const std::vector<double> kBudgets{0.0, 0.5, 1.0, 2.0, 4.0};
const std::vector<double> kSmoothings{0.1, 0.3};

double max_residual(const ExponentResult& r) {
  return std::max(r.max_slackness(), r.max_infeasibility());
}

bool is_diagonal(const CMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (r != c && std::abs(m(r, c)) > 1e-14) return false;
  return true;
}

std::vector<double> diagonal_of(const DensityMatrix& s) {
  std::vector<double> p(static_cast<std::size_t>(s.dim()));
  for (int i = 0; i < s.dim(); ++i) p[static_cast<std::size_t>(i)] = std::max(0.0, s.matrix()(i, i).real());
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return p;
}

// Exponents agree in bits, or in the error itself once it is too small for
// its logarithm to be meaningful.
double exponent_disagreement(const ExtendedReal& a, double eps_a, const ExtendedReal& b,
                             double eps_b) {
  if (std::max(eps_a, eps_b) <= 1e-9) return std::abs(eps_a - eps_b) * 1e-3;
  if (a.is_infinite() || b.is_infinite()) return a == b ? 0.0 : kInf;
  return std::abs(a.value() - b.value());
}

// compute ------------------------------------------------------------------

struct ComputeArgs {
  std::string file;
  std::string quantity;
  std::optional<double> m;
  std::optional<double> eps;
  std::optional<double> alpha;
  std::string family = "both";
};

void print_residuals(std::ostream& out, const char* title, const std::vector<Residual>& rs) {
  out << title << ":\n";
  for (const auto& r : rs) out << "  " << r.name << ": " << format_number(r.value) << "\n";
}

void print_exponent(std::ostream& out, const ExponentResult& r) {
  out << "value: " << r.value.to_string(12) << "\n";
  out << "epsilon: " << format_number(r.epsilon) << "\n";
  out << "gap: " << format_number(r.gap) << "\n";
  out << "exact: " << (r.exact ? "yes" : "no") << "\n";
  print_residuals(out, "slackness", r.slackness);
  print_residuals(out, "feasibility", r.feasibility);
}

double require(const std::optional<double>& v, const std::string& quantity, const char* flag) {
  if (!v) throw UsageError("quantity " + quantity + " needs " + flag);
  return *v;
}

void print_bound(std::ostream& out, const BoundReport& b) {
  out << b.name << ":\n";
  out << "  bound: " << format_number(b.bound_value) << "\n";
  out << "  alpha: " << format_number(b.maximizing_alpha) << "\n";
  if (b.has_target) {
    out << "  target: " << b.target_value.to_string(12) << "\n";
    out << "  slack: " << format_number(b.slack) << "\n";
  }
  out << "  vacuous: " << (b.vacuous ? "yes" : "no") << "\n";
  for (const auto& c : b.checks)
    out << "  check " << c.name << ": " << (c.holds() ? "ok" : "violated") << " (defect "
        << format_number(c.defect()) << ")\n";
}

// Writes into a buffer so that a failed run prints no partial report.
int cmd_compute(const ComputeArgs& a, const ExponentOptions& opt, std::ostream& report) {
  std::ostringstream out;
  const StatePairFile file = load_pair_file(a.file);
  const StatePair& pair = file.pair;
  const std::string& q = a.quantity;
  out << "quantity: " << q << "\n";
  if (q == "ed" || q == "scd" || q == "ec" || q == "scc") {
    const double m = require(a.m, q, "--m");
    out << "m: " << format_number(m) << "\n";
    const ExponentResult r = q == "ed"    ? err_exp_distill(pair, m, opt)
                             : q == "scd" ? sc_exp_distill(pair, m, opt)
                             : q == "ec"  ? err_exp_dilute(pair, m, opt)
                                          : sc_exp_dilute(pair, m, opt);
    print_exponent(out, r);
  } else if (q == "dmin" || q == "dmax") {
    const double eps = require(a.eps, q, "--eps");
    const SmoothEntropyResult r = q == "dmin" ? smooth_dmin(pair, eps, opt) : smooth_dmax(pair, eps, opt);
    out << "value: " << r.value.to_string(12) << "\n";
    out << "epsilon: " << format_number(r.epsilon) << "\n";
    out << "gap: " << format_number(r.gap) << "\n";
    out << "exact: " << (r.exact ? "yes" : "no") << "\n";
    print_residuals(out, "feasibility", r.feasibility);
  } else if (q == "renyi") {
    const double alpha = require(a.alpha, q, "--alpha");
    out << "alpha: " << format_number(alpha) << "\n";
    if (a.family == "petz" || a.family == "sandwiched") {
      const RenyiFamily f = a.family == "petz" ? RenyiFamily::petz : RenyiFamily::sandwiched;
      out << "family: " << a.family << "\n";
      out << "value: " << renyi(pair.rho(), pair.sigma(), RenyiOrder(alpha, f)).to_string(12) << "\n";
    } else {
      out << "petz: " << petz_renyi(pair.rho(), pair.sigma(), alpha).to_string(12) << "\n";
      out << "sandwiched: " << sandwiched_renyi(pair.rho(), pair.sigma(), alpha).to_string(12)
          << "\n";
    }
  } else if (q == "relent") {
    out << "value: " << rel_entropy(pair.rho(), pair.sigma()).to_string(12) << "\n";
  } else if (q == "bounds") {
    const double m = require(a.m, q, "--m");
    out << "m: " << format_number(m) << "\n";
    print_bound(out, bound_err_distill(pair, m, opt));
    print_bound(out, bound_sc_distill(pair, m, opt));
    print_bound(out, bound_sc_dilute(pair, m, opt));
    print_bound(out, bound_sd22(pair, m, opt));
    const RelationReport dil = bound_err_dilute_check(pair, m, {1.5, 2.0, 3.0, 5.0}, opt);
    out << dil.name << ":\n";
    for (const auto& c : dil.checks)
      out << "  " << c.name << ": " << (c.holds() ? "ok" : "violated") << " (lhs "
          << format_number(c.lhs) << ", rhs " << format_number(c.rhs) << ")\n";
  } else {
    throw UsageError("unknown quantity " + q);
  }
  report << out.str();
  return kExitOk;
}

// sweep --------------------------------------------------------------------

struct SweepArgs {
  std::string file;
  std::vector<std::string> quantities;
  std::string over = "m";
  double from = 0.0;
  double to = 0.0;
  long points = -1;
  std::vector<double> values;
  bool bounds = false;
  bool timing = false;
  std::string output = "-";
};

std::vector<double> sweep_grid(const SweepArgs& a) {
  if (!a.values.empty() && a.points >= 0) throw UsageError("give either --values or --points, not both");
  std::vector<double> grid = a.values;
  if (a.points >= 0) {
    for (long i = 0; i < a.points; ++i)
      grid.push_back(a.points == 1 ? a.from
                                   : a.from + (a.to - a.from) * static_cast<double>(i) /
                                                  static_cast<double>(a.points - 1));
  }
  if (grid.empty()) throw UsageError("empty grid: give --points n >= 1 or --values");
  if (grid.size() > kMaxSweepPoints)
    throw UsageError("grid has " + std::to_string(grid.size()) + " points, limit is " +
                     std::to_string(kMaxSweepPoints));
  return grid;
}

int cmd_sweep(SweepArgs a, const ExponentOptions& opt, std::ostream& out) {
  const std::vector<double> grid = sweep_grid(a);
  std::vector<std::string> allowed;
  if (a.over == "m")
    allowed = {"ed", "scd", "ec", "scc"};
  else if (a.over == "alpha")
    allowed = {"petz", "sandwiched"};
  else
    allowed = {"dmin", "dmax"};
  if (a.quantities.empty()) a.quantities = allowed;
  for (const auto& q : a.quantities)
    if (std::find(allowed.begin(), allowed.end(), q) == allowed.end())
      throw UsageError("quantity " + q + " cannot be swept over " + a.over);
  if (a.bounds && a.over != "m") throw UsageError("--bounds needs a sweep over m");

  const StatePairFile file = load_pair_file(a.file);
  const StatePair& pair = file.pair;
  const bool certified = a.over != "alpha";

  std::ostringstream csv;
  csv << a.over;
  for (const auto& q : a.quantities) {
    csv << "," << q;
    if (certified) csv << "," << q << "_gap," << q << "_residual";
  }
  const std::vector<std::string> bound_names{"bound_err_distill", "bound_sc_distill",
                                             "bound_sc_dilute", "bound_sd22"};
  if (a.bounds)
    for (const auto& b : bound_names) csv << "," << b;
  if (a.timing) csv << ",runtime_s";
  csv << "\n";

  const RenyiCurve curve(pair.rho(), pair.sigma());
  for (double x : grid) {
    const auto start = std::chrono::steady_clock::now();
    csv << format_number(x);
    for (const auto& q : a.quantities) {
      if (a.over == "m") {
        const ExponentResult r = q == "ed"    ? err_exp_distill(pair, x, opt)
                                 : q == "scd" ? sc_exp_distill(pair, x, opt)
                                 : q == "ec"  ? err_exp_dilute(pair, x, opt)
                                              : sc_exp_dilute(pair, x, opt);
        csv << "," << format_number(r.value.value()) << "," << format_number(r.gap) << ","
            << format_number(max_residual(r));
      } else if (a.over == "eps") {
        const SmoothEntropyResult r = q == "dmin" ? smooth_dmin(pair, x, opt) : smooth_dmax(pair, x, opt);
        csv << "," << format_number(r.value.value()) << "," << format_number(r.gap) << ","
            << format_number(r.max_infeasibility());
      } else {
        csv << "," << format_number((q == "petz" ? curve.petz(x) : curve.sandwiched(x)).value());
      }
    }
    if (a.bounds) {
      csv << "," << format_number(bound_err_distill(pair, x, opt).bound_value);
      csv << "," << format_number(bound_sc_distill(pair, x, opt).bound_value);
      csv << "," << format_number(bound_sc_dilute(pair, x, opt).bound_value);
      csv << "," << format_number(bound_sd22(pair, x, opt).bound_value);
    }
    if (a.timing)
      csv << ","
          << format_number(
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    csv << "\n";
  }

  if (a.output == "-") {
    out << csv.str();
  } else {
    std::ofstream f(a.output);
    if (!f) throw PairFileError(a.output + ": cannot open for writing");
    f << csv.str();
    if (!f) throw PairFileError(a.output + ": write failed");
  }
  return kExitOk;
}

// verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string target;
  int channels = 5;
};

std::vector<StatePair> verify_pairs(const std::string& target, std::uint64_t& seed) {
  if (target.rfind("random", 0) != 0) return {load_pair_file(target).pair};
  // random[:seed[:count]]
  std::vector<std::string> parts;
  std::stringstream ss(target);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts[0] != "random" || parts.size() > 3)
    throw UsageError("random target must read random[:seed[:count]], got " + target);
  long count = 20;
  try {
    if (parts.size() >= 2 && !parts[1].empty()) seed = std::stoull(parts[1]);
    if (parts.size() == 3) count = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("random target must read random[:seed[:count]], got " + target);
  }
  if (count < 1 || count > 1000) throw UsageError("random pair count must lie in [1, 1000]");
  std::mt19937_64 rng(seed);
  std::vector<StatePair> pairs;
  for (long i = 0; i < count; ++i) pairs.push_back(random_pair(2, rng));
  return pairs;
}

// Runs body for every pair, turning solver failures into suite failures.
void for_pairs(Suite& s, const std::vector<StatePair>& pairs,
               const std::function<void(std::size_t, const StatePair&)>& body) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    try {
      body(i, pairs[i]);
    } catch (const SolverFailure& e) {
      s.error(with_pair(i, e.what()));
    }
  }
}

void add_relation(Suite& s, std::size_t i, const RelationReport& r) {
  for (const auto& c : r.checks) {
    Check named = c;
    named.name = with_pair(i, r.name + ": " + c.name);
    s.add(named);
  }
}

int cmd_verify(const VerifyArgs& a, const ExponentOptions& opt, std::ostream& out,
               std::ostream& err) {
  std::uint64_t seed = default_seed();
  const std::vector<StatePair> pairs = verify_pairs(a.target, seed);
  if (a.channels < 0) throw UsageError("--channels must be nonnegative");
  std::vector<Suite> suites;

  {
    Suite s{"complement_identities"};
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      for (double m : kBudgets) {
        const auto ed = err_exp_distill(p, m, opt), sd = sc_exp_distill(p, m, opt);
        const auto ec = err_exp_dilute(p, m, opt), sc = sc_exp_dilute(p, m, opt);
        s.eq(with_pair(i, "distillation at m = " + format_number(m)), ed.value.exp2_neg(),
             1.0 - sd.value.exp2_neg(), 1e-9);
        s.eq(with_pair(i, "dilution at m = " + format_number(m)), ec.value.exp2_neg(),
             1.0 - sc.value.exp2_neg(), 1e-9);
      }
    });
    suites.push_back(s);
  }
  {
    Suite s{"duality_certificates"};
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      for (double m : kBudgets) {
        for (const auto& r : {err_exp_distill(p, m, opt), err_exp_dilute(p, m, opt)}) {
          const std::string tag = with_pair(i, to_string(r.kind) + " at m = " + format_number(m));
          s.le(tag + ": gap", std::abs(r.gap), 0.0, 1e-7);
          s.le(tag + ": slackness", r.max_slackness(), 0.0, 1e-6);
          s.le(tag + ": feasibility", r.max_infeasibility(), 0.0, 1e-7);
        }
      }
      for (double eps : kSmoothings) {
        for (const auto& r : {smooth_dmin(p, eps, opt), smooth_dmax(p, eps, opt)}) {
          const std::string tag = with_pair(i, "smooth entropy at eps = " + format_number(eps));
          s.le(tag + ": gap", std::abs(r.gap), 0.0, 1e-7);
          s.le(tag + ": feasibility", r.max_infeasibility(), 0.0, 1e-7);
        }
      }
    });
    suites.push_back(s);
  }
  {
    // On the error scale, where solver noise does not blow up near zero.
    Suite s{"monotonicity_in_m"};
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      double prev_d = -kInf, prev_c = kInf;
      for (double m : kBudgets) {
        const double ed = err_exp_distill(p, m, opt).epsilon;
        const double ec = err_exp_dilute(p, m, opt).epsilon;
        s.le(with_pair(i, "distillation error grows at m = " + format_number(m)), prev_d, ed, 1e-8);
        s.le(with_pair(i, "dilution error shrinks at m = " + format_number(m)), ec, prev_c, 1e-8);
        prev_d = ed;
        prev_c = ec;
      }
    });
    suites.push_back(s);
  }
  for (const char* name : {"dmin_errexp_link", "dmax_errexp_link", "dmin_swap_identity"}) {
    Suite s{name};
    const std::string n = name;
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      for (double eps : kSmoothings) {
        const RelationReport r = n == "dmin_errexp_link"   ? dmin_errexp_link(p, eps, opt)
                                 : n == "dmax_errexp_link" ? dmax_errexp_link(p, eps, opt)
                                                           : dmin_swap_identity(p, eps, opt);
        add_relation(s, i, r);
      }
    });
    suites.push_back(s);
  }
  {
    Suite s{"renyi_bounds"};
    Suite sd{"sd22_improvement"};
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      for (double m : kBudgets) {
        const std::string at = " at m = " + format_number(m);
        for (const BoundReport& b : {bound_err_distill(p, m, opt), bound_sc_distill(p, m, opt),
                                     bound_sc_dilute(p, m, opt)}) {
          if (b.has_target) s.le(with_pair(i, b.name + at), b.bound_value, b.target_value.value(), 1e-7);
          for (const auto& c : b.checks) {
            Check named = c;
            named.name = with_pair(i, b.name + at + ": " + c.name);
            s.add(named);
          }
        }
        const BoundReport b = bound_sd22(p, m, opt);
        s.le(with_pair(i, b.name + at), b.bound_value, b.target_value.value(), 1e-7);
        const double petz_branch = bound_sc_dilute(p, m, opt).branches.front().value;
        sd.le(with_pair(i, "Petz branch of bound_sc_dilute <= bound_sd22" + at),
              std::max(petz_branch, 0.0), std::max(b.bound_value, 0.0), 1e-9);
        for (const auto& c : b.checks) {
          Check named = c;
          named.name = with_pair(i, b.name + at + ": " + c.name);
          sd.add(named);
        }
      }
    });
    suites.push_back(s);
    suites.push_back(sd);
  }
  {
    Suite s{"bound_err_dilute_check"};
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      for (double m : kBudgets) add_relation(s, i, bound_err_dilute_check(p, m, {1.5, 2.0, 3.0, 5.0}, opt));
    });
    suites.push_back(s);
  }
  {
    Suite s{"cross_bounds"};
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      for (double k : {0.0, 0.5, 1.0, 2.0})
        for (double m : kBudgets) add_relation(s, i, cross_bounds(p, k, m, opt));
    });
    suites.push_back(s);
  }
  {
    // Processing can only make distillation worse and dilution easier.
    Suite s{"data_processing"};
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      for (int c = 0; c < a.channels; ++c) {
        const HermitianMatrix choi = random_cptp(p.dim(), p.dim(), rng());
        const StatePair q = apply_channel(choi, p);
        for (double m : {0.5, 1.0, 2.0}) {
          const std::string at = with_pair(i, "channel " + std::to_string(c) + " at m = " + format_number(m));
          s.le(at + ": distillation error", err_exp_distill(p, m, opt).epsilon,
               err_exp_distill(q, m, opt).epsilon, 1e-6);
          s.le(at + ": dilution error", err_exp_dilute(q, m, opt).epsilon,
               err_exp_dilute(p, m, opt).epsilon, 1e-6);
        }
      }
    });
    suites.push_back(s);
  }
  {
    Suite meas{"oracle_measurement"};
    Suite dil{"oracle_dilution"};
    const bool qubits = pairs.front().dim() == 2;
    if (!qubits) {
      meas.skipped = dil.skipped = "grid oracles cover qubit pairs only";
    } else {
      for_pairs(meas, pairs, [&](std::size_t i, const StatePair& p) {
        for (double m : {0.5, 1.0, 2.0}) {
          const std::string at = with_pair(i, "m = " + format_number(m));
          const double best = 1.0 - err_exp_distill(p, m, opt).epsilon;
          const MeasurementSearch bm = brute_measurement(p, m);
          meas.eq(at + ": grid vs program", bm.value, best, 5e-3);
          meas.le(at + ": grid never beats the program", bm.value, best, 1e-7);
          const double eps = err_exp_dilute(p, m, opt).epsilon;
          const DilutionSearch bd = brute_dilution(p, m);
          dil.eq(at + ": grid vs program", bd.distance, eps, 5e-3);
          dil.le(at + ": grid never beats the program", eps, bd.distance, 1e-7);
        }
      });
    }
    suites.push_back(meas);
    suites.push_back(dil);
  }
  {
    Suite s{"classical_fast_path"};
    long used = 0;
    for_pairs(s, pairs, [&](std::size_t i, const StatePair& p) {
      if (!is_diagonal(p.rho().matrix()) || !is_diagonal(p.sigma().matrix())) return;
      ++used;
      const std::vector<double> pv = diagonal_of(p.rho()), qv = diagonal_of(p.sigma());
      for (double m : kBudgets) {
        const ClassicalExponents c = classical_fast_path(pv, qv, m);
        const auto ed = err_exp_distill(p, m, opt);
        const auto ec = err_exp_dilute(p, m, opt);
        const std::string at = with_pair(i, "m = " + format_number(m));
        s.le(at + ": distillation", exponent_disagreement(ed.value, ed.epsilon, c.err_exp, c.distill_error),
             0.0, 1e-6);
        s.le(at + ": dilution",
             exponent_disagreement(ec.value, ec.epsilon, c.dilute_err_exp, c.dilute_error), 0.0, 1e-6);
      }
    });
    if (used == 0) s.skipped = "no pair is diagonal";
    suites.push_back(s);
  }

  std::vector<std::string> failing;
  for (const auto& s : suites) {
    if (!s.skipped.empty()) {
      out << "SKIP " << s.name << " (" << s.skipped << ")\n";
      continue;
    }
    out << (s.passed() ? "PASS " : "FAIL ") << s.name << " worst=" << format_number(s.worst)
        << " checks=" << s.checks;
    if (!s.passed()) out << " failures=" << s.failures << " first: " << s.first_failure;
    out << "\n";
    if (!s.passed()) failing.push_back(s.name);
  }
  out << "pairs: " << pairs.size() << ", seed: " << seed << "\n";
  if (failing.empty()) return kExitOk;
  err << "failing propositions:";
  for (const auto& f : failing) err << " " << f;
  err << "\n";
  return kExitFailure;
}

// transform ----------------------------------------------------------------

int cmd_transform(const std::string& source_path, const std::string& target_path,
                  const ExponentOptions& opt, std::ostream& out) {
  const StatePairFile source = load_pair_file(source_path);
  const StatePairFile target = load_pair_file(target_path);
  const ExponentResult r = statepair_err_exp(source.pair, target.pair, opt);
  print_exponent(out, r);
  const auto& w = std::get<ChannelWitness>(r.primal_witness);
  out << "choi defect: " << format_number(choi_defect(w.choi, source.pair.dim())) << "\n";
  return kExitOk;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asymmetric distinguishability exponents, smooth entropies and their bounds"};
  app.name("asymdist");
  app.require_subcommand(1);
  app.fallthrough();
  double tol = ExponentOptions{}.tol;
  app.add_option("--tol", tol, "Solver tolerance on gap, residuals and centrality")
      ->check(CLI::PositiveNumber);

  ComputeArgs ca;
  CLI::App* compute = app.add_subcommand("compute", "Compute one quantity for a state pair file");
  compute->add_option("file", ca.file, "State pair file")->required();
  compute->add_option("quantity", ca.quantity, "dmin, dmax, ed, scd, ec, scc, renyi, relent or bounds")
      ->required()
      ->check(CLI::IsMember({"dmin", "dmax", "ed", "scd", "ec", "scc", "renyi", "relent", "bounds"}));
  compute->add_option("--m", ca.m, "Budget in bits");
  compute->add_option("--eps", ca.eps, "Smoothing parameter");
  compute->add_option("--alpha", ca.alpha, "Renyi order");
  compute->add_option("--family", ca.family, "petz, sandwiched or both")
      ->check(CLI::IsMember({"petz", "sandwiched", "both"}));

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "Tabulate quantities over a parameter grid as CSV");
  sweep->add_option("file", sa.file, "State pair file")->required();
  sweep->add_option("-q,--quantity", sa.quantities, "Quantities (default: all for the axis)");
  sweep->add_option("--over", sa.over, "m, alpha or eps")->check(CLI::IsMember({"m", "alpha", "eps"}));
  sweep->add_option("--from", sa.from, "First grid value");
  sweep->add_option("--to", sa.to, "Last grid value");
  sweep->add_option("--points", sa.points, "Number of evenly spaced points")->check(CLI::NonNegativeNumber);
  sweep->add_option("--values", sa.values, "Explicit grid values")->delimiter(',');
  sweep->add_flag("--bounds", sa.bounds, "Add the four Renyi bound columns (m sweeps)");
  sweep->add_flag("--timing", sa.timing, "Add a per-row runtime column");
  sweep->add_option("-o,--output", sa.output, "CSV path, - for standard output");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run the property suites on a file or random pairs");
  verify->add_option("target", va.target, "State pair file or random[:seed[:count]]")->required();
  verify->add_option("--channels", va.channels, "Random channels per pair for data processing");

  std::string source, target;
  CLI::App* transform = app.add_subcommand("transform", "One-shot state pair transformation exponent");
  transform->add_option("source", source, "Source pair file")->required();
  transform->add_option("target", target, "Target pair file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  ExponentOptions opt;
  opt.tol = tol;
  try {
    if (*compute) return cmd_compute(ca, opt, out);
    if (*sweep) return cmd_sweep(sa, opt, out);
    if (*verify) return cmd_verify(va, opt, out, err);
    return cmd_transform(source, target, opt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PairFileError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace asymdist

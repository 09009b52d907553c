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

// Primal-dual interior point method with Nesterov-Todd scaling and a
// Mehrotra predictor-corrector, run on the standard form
//   min c.x  s.t.  A x = b,  x in K   /   max b.y  s.t.  c - A^T y = z in K
// where K is a product of Hermitian (or real symmetric) PSD cones written in
// orthonormal basis coordinates. Inequality constraint blocks receive a slack
// cone block; equality blocks do not.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "asymdist/sdp.hpp"

namespace asymdist::sdp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kNeighbourhood = 1e-4;

struct StandardForm {
  std::vector<BlockSpec> cone;
  std::vector<int> off;
  int n = 0;
  int nu = 0;
  Eigen::MatrixXd a;
  RVector b;
  RVector c;
  std::vector<int> rows;  // constraint coordinate of each kept row
  int primal_blocks = 0;
  bool inconsistent = false;
};

StandardForm standardize(const SdpProblem& p) {
  StandardForm f;
  const Layout& pl = p.primal_layout();
  const Layout& cl = p.constraint_layout();
  f.cone = pl.blocks();
  f.primal_blocks = static_cast<int>(f.cone.size());
  std::vector<std::pair<int, int>> slack;  // (constraint block, cone block)
  for (std::size_t i = 0; i < p.constraint_blocks().size(); ++i) {
    if (p.constraint_blocks()[i].equality) continue;
    slack.emplace_back(static_cast<int>(i), static_cast<int>(f.cone.size()));
    f.cone.push_back(p.constraint_blocks()[i].spec);
  }
  for (const auto& s : f.cone) {
    f.off.push_back(f.n);
    f.n += s.coords();
    f.nu += s.dim;
  }
  const int m = cl.total();
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m, f.n);
  full.leftCols(pl.total()) = p.phi();
  for (const auto& [ci, kb] : slack) {
    const int cnt = cl.blocks()[ci].coords();
    for (int t = 0; t < cnt; ++t) full(cl.offset(ci) + t, f.off[kb] + t) = 1.0;
  }
  const RVector bfull = cl.to_coords(p.bound());

  // Equality rows can be linearly dependent (e.g. a partial trace constraint
  // that also fixes the trace); keep a maximal independent subset.
  std::vector<int> eq_rows, ineq_rows;
  for (std::size_t i = 0; i < p.constraint_blocks().size(); ++i) {
    const int cnt = cl.blocks()[i].coords();
    for (int t = 0; t < cnt; ++t)
      (p.constraint_blocks()[i].equality ? eq_rows : ineq_rows).push_back(cl.offset(i) + t);
  }
  std::vector<int> kept = ineq_rows;
  if (!eq_rows.empty()) {
    Eigen::MatrixXd me(f.n, static_cast<Eigen::Index>(eq_rows.size()));
    for (std::size_t k = 0; k < eq_rows.size(); ++k) me.col(k) = full.row(eq_rows[k]).transpose();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(me);
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    std::vector<int> indep;
    for (int k = 0; k < rank; ++k) indep.push_back(eq_rows[qr.colsPermutation().indices()(k)]);
    std::sort(indep.begin(), indep.end());
    if (rank < static_cast<int>(eq_rows.size())) {
      Eigen::MatrixXd basis(f.n, rank);
      RVector bb(rank);
      for (int k = 0; k < rank; ++k) {
        basis.col(k) = full.row(indep[k]).transpose();
        bb(k) = bfull(indep[k]);
      }
      const auto solver = basis.colPivHouseholderQr();
      for (int r : eq_rows) {
        if (std::find(indep.begin(), indep.end(), r) != indep.end()) continue;
        const RVector w = solver.solve(full.row(r).transpose());
        if (std::abs(w.dot(bb) - bfull(r)) > 1e-8 * (1.0 + std::abs(bfull(r)))) f.inconsistent = true;
      }
    }
    kept.insert(kept.end(), indep.begin(), indep.end());
  }
  f.rows = kept;
  f.a.resize(static_cast<Eigen::Index>(kept.size()), f.n);
  f.b.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    f.a.row(k) = full.row(kept[k]);
    f.b(k) = bfull(kept[k]);
  }
  f.c = RVector::Zero(f.n);
  f.c.head(pl.total()) = -pl.to_coords(p.objective());
  return f;
}

struct BlockScaling {
  CMatrix r;
  CMatrix r_inv;
  RVector lambda;
  Eigen::MatrixXd t;  // coordinates of U -> R^dagger U R
};

// R with R^{-1} X R^{-dagger} = R^dagger Z R = diag(lambda).
bool nt_scaling(const CMatrix& x, const CMatrix& z, const BlockSpec& spec, BlockScaling& s) {
  const int d = spec.dim;
  if (spec.kind == BlockKind::real_symmetric) {
    Eigen::LLT<Eigen::MatrixXd> lx(x.real()), lz(z.real());
    if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
    const Eigen::MatrixXd l1 = lx.matrixL(), l2 = lz.matrixL();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(l2.transpose() * l1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    s.lambda = svd.singularValues();
    if (s.lambda.minCoeff() <= 0.0) return false;
    const Eigen::MatrixXd v = svd.matrixV();
    const RVector is = s.lambda.cwiseSqrt().cwiseInverse();
    s.r = (l1 * v * is.asDiagonal()).cast<Complex>();
    s.r_inv = (s.lambda.cwiseSqrt().asDiagonal() * v.transpose() *
               l1.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d)))
                  .cast<Complex>();
  } else {
    Eigen::LLT<CMatrix> lx(x), lz(z);
    if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
    const CMatrix l1 = lx.matrixL(), l2 = lz.matrixL();
    Eigen::JacobiSVD<CMatrix> svd(l2.adjoint() * l1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    s.lambda = svd.singularValues();
    if (s.lambda.minCoeff() <= 0.0) return false;
    const CMatrix v = svd.matrixV();
    const RVector is = s.lambda.cwiseSqrt().cwiseInverse();
    s.r = l1 * v * is.cast<Complex>().asDiagonal();
    s.r_inv = s.lambda.cwiseSqrt().cast<Complex>().asDiagonal() * v.adjoint() *
              l1.triangularView<Eigen::Lower>().solve(CMatrix::Identity(d, d));
  }
  // Columns of T: coordinates of R^dagger E_k R for each basis element E_k.
  const int nc = spec.coords();
  s.t.resize(nc, nc);
  std::vector<double> col(nc);
  int k = 0;
  auto emit = [&](const CMatrix& m) {
    write_coords(m, spec, col.data());
    for (int i = 0; i < nc; ++i) s.t(i, k) = col[i];
    ++k;
  };
  std::vector<Eigen::RowVectorXcd> u(d);
  for (int j = 0; j < d; ++j) u[j] = s.r.row(j);
  for (int j = 0; j < d; ++j) emit(u[j].adjoint() * u[j]);
  for (int j = 0; j < d; ++j) {
    for (int l = j + 1; l < d; ++l) {
      const CMatrix o = u[j].adjoint() * u[l];
      emit((o + o.adjoint()) * kInvSqrt2);
      if (spec.kind == BlockKind::hermitian) emit((o - o.adjoint()) * Complex(0.0, kInvSqrt2));
    }
  }
  return true;
}

// Largest alpha with diag(lambda) + alpha * D >= 0 (infinity if unbounded).
double max_step(const RVector& lambda, const CMatrix& d) {
  const RVector is = lambda.cwiseSqrt().cwiseInverse();
  CMatrix m = is.cast<Complex>().asDiagonal() * d * is.cast<Complex>().asDiagonal();
  m = (m + m.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return lo < 0.0 ? -1.0 / lo : std::numeric_limits<double>::infinity();
}

struct Iterate {
  RVector x, y, z;
};

struct Direction {
  RVector dy;
  std::vector<CMatrix> dx;  // scaled space, per block
  std::vector<CMatrix> dz;
};

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  const StandardForm f = standardize(problem);
  const int nb = static_cast<int>(f.cone.size());
  const int p = static_cast<int>(f.b.size());
  SdpSolution sol;

  auto block = [&](const RVector& v, int j) { return from_coords(v.data() + f.off[j], f.cone[j]); };
  auto put = [&](RVector& v, int j, const CMatrix& m) { write_coords(m, f.cone[j], v.data() + f.off[j]); };

  auto finish = [&](const Iterate& it, Status status, int iters, const std::string& diag) {
    BlockMatrix x;
    for (int j = 0; j < f.primal_blocks; ++j) x.blocks.push_back(block(it.x, j));
    RVector yfull = RVector::Zero(problem.constraint_layout().total());
    for (int k = 0; k < p; ++k) yfull(f.rows[k]) = -it.y(k);
    sol.x = std::move(x);
    sol.y = problem.constraint_layout().from_coords(yfull);
    sol.primal_value = problem.objective().inner(sol.x);
    sol.dual_value = problem.bound().inner(sol.y);
    sol.gap = sol.dual_value - sol.primal_value;
    sol.primal_infeasibility = primal_infeasibility(problem, sol.x);
    sol.dual_infeasibility = dual_infeasibility(problem, sol.y);
    sol.status = status;
    sol.iterations = iters;
    sol.diagnostics = diag;
    return sol;
  };

  Iterate it{RVector::Zero(f.n), RVector::Zero(p), RVector::Zero(f.n)};
  if (f.inconsistent) return finish(it, Status::primal_infeasible, 0, "inconsistent equality constraints");

  // Infeasible starting point scaled to the data, in the spirit of SDPT3.
  for (int j = 0; j < nb; ++j) {
    const int d = f.cone[j].dim;
    double xi = std::max(10.0, std::sqrt(static_cast<double>(d)));
    double eta = xi;
    for (int k = 0; k < p; ++k) {
      const double na = f.a.row(k).segment(f.off[j], f.cone[j].coords()).norm();
      xi = std::max(xi, d * (1.0 + std::abs(f.b(k))) / (1.0 + na));
      eta = std::max(eta, na);
    }
    eta = std::max(eta, f.c.segment(f.off[j], f.cone[j].coords()).norm());
    put(it.x, j, xi * CMatrix::Identity(d, d));
    put(it.z, j, eta * CMatrix::Identity(d, d));
  }

  const double nb_norm = 1.0 + f.b.norm();
  const double nc_norm = 1.0 + f.c.norm();
  Iterate best = it;
  double best_merit = std::numeric_limits<double>::infinity();
  int stalls = 0;
  std::ostringstream diag;
  int iter = 0;

  for (; iter <= options.max_iter; ++iter) {
    const RVector rp = f.b - f.a * it.x;
    const RVector rd = f.c - f.a.transpose() * it.y - it.z;
    const double pobj = f.c.dot(it.x);
    const double dobj = f.b.dot(it.y);
    const double compl_ = it.x.dot(it.z);
    const double mu = compl_ / f.nu;
    const double pres = rp.norm() / nb_norm;
    const double dres = rd.norm() / nc_norm;
    const double scale = std::max(1.0, std::min(std::abs(pobj), std::abs(dobj)));
    const double gap = std::max(std::abs(pobj - dobj), compl_) / scale;
    // Complementarity measured as ||X Z||_F; a small trace alone allows
    // ||X Z|| ~ sqrt(mu) when the iterate is off-center.
    double cnorm2 = 0.0;
    for (int j = 0; j < nb; ++j) cnorm2 += (block(it.x, j) * block(it.z, j)).squaredNorm();
    const double cnorm = std::sqrt(cnorm2) / (nb_norm + nc_norm);
    const double merit = std::max({pres, dres, gap, cnorm});
    if (merit < best_merit) {
      best_merit = merit;
      best = it;
    }
    diag.str("");
    diag << "iter=" << iter << " pres=" << pres << " dres=" << dres << " gap=" << gap
         << " compl=" << cnorm;
    const bool converged = pres <= options.tol && dres <= options.tol && gap <= options.tol;
    if (converged && cnorm <= options.tol) return finish(it, Status::optimal, iter, diag.str());

    // Farkas-type certificates along a diverging iterate.
    if (dobj > 1e8 && (f.c - rd).norm() <= 1e-8 * dobj)
      return finish(it, Status::primal_infeasible, iter, diag.str() + " (dual ray)");
    if (-pobj > 1e8 && (f.b - rp).norm() <= -1e-8 * pobj)
      return finish(it, Status::dual_infeasible, iter, diag.str() + " (primal ray)");
    if (iter == options.max_iter) break;

    std::vector<BlockScaling> sc(nb);
    bool ok = true;
    for (int j = 0; j < nb && ok; ++j) ok = nt_scaling(block(it.x, j), block(it.z, j), f.cone[j], sc[j]);
    if (!ok) {
      diag << " (scaling breakdown)";
      break;
    }

    Eigen::MatrixXd at(p, f.n);
    RVector rdt(f.n);
    for (int j = 0; j < nb; ++j) {
      const int w = f.cone[j].coords();
      at.middleCols(f.off[j], w).noalias() = f.a.middleCols(f.off[j], w) * sc[j].t.transpose();
      rdt.segment(f.off[j], w) = sc[j].t * rd.segment(f.off[j], w);
    }
    // M = At At^T is factored through a QR of At^T, which avoids squaring
    // the condition number of At when the iterate nears the boundary.
    if (p > f.n) {
      diag << " (more constraints than coordinates)";
      break;
    }
    // A tiny Tikhonov row block keeps the factor usable when At loses rank,
    // as it does when the primal feasible set has no interior.
    Eigen::MatrixXd stacked(f.n + p, p);
    stacked.topRows(f.n) = at.transpose();
    stacked.bottomRows(p) =
        1e-10 * std::max(1.0, at.rowwise().norm().maxCoeff()) * Eigen::MatrixXd::Identity(p, p);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
    const Eigen::MatrixXd rfac = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
    if (!rfac.diagonal().allFinite() || rfac.diagonal().cwiseAbs().minCoeff() <= 1e-300) {
      diag << " (Schur complement breakdown)";
      break;
    }
    auto schur_solve = [&](const RVector& v) {
      RVector u = rfac.transpose().triangularView<Eigen::Lower>().solve(v);
      return RVector(rfac.triangularView<Eigen::Upper>().solve(u));
    };

    // Solves for the direction given the complementarity right-hand side.
    auto direction = [&](const std::vector<CMatrix>& rc) {
      RVector q(f.n);
      for (int j = 0; j < nb; ++j) {
        const RVector& l = sc[j].lambda;
        CMatrix qm = rc[j];
        for (int a = 0; a < l.size(); ++a)
          for (int b = 0; b < l.size(); ++b) qm(a, b) *= 2.0 / (l(a) + l(b));
        put(q, j, qm);
      }
      Direction dir;
      const RVector rhs = rp - at * (q - rdt);
      dir.dy = schur_solve(rhs);
      for (int round = 0; round < 2; ++round)
        dir.dy += schur_solve(rhs - at * (at.transpose() * dir.dy));
      const RVector dzt = rdt - at.transpose() * dir.dy;
      const RVector dxt = q - dzt;
      for (int j = 0; j < nb; ++j) {
        dir.dx.push_back(block(dxt, j));
        dir.dz.push_back(block(dzt, j));
      }
      return dir;
    };
    auto steps = [&](const Direction& dir) {
      double ap = std::numeric_limits<double>::infinity(), ad = ap;
      for (int j = 0; j < nb; ++j) {
        ap = std::min(ap, max_step(sc[j].lambda, dir.dx[j]));
        ad = std::min(ad, max_step(sc[j].lambda, dir.dz[j]));
      }
      return std::pair{ap, ad};
    };
    // Moves to the new iterate, shortening the step while the new point
    // leaves the wide neighbourhood min eig(X Z) >= gamma mu of the central
    // path. Without it X and Z can collapse together along one direction,
    // after which the scaling no longer exists.
    auto take_step = [&](const Direction& dir, double& ap, double& ad) {
      std::vector<CMatrix> dxm(nb), dzm(nb);
      for (int j = 0; j < nb; ++j) {
        dxm[j] = sc[j].r * dir.dx[j] * sc[j].r.adjoint();
        dzm[j] = sc[j].r_inv.adjoint() * dir.dz[j] * sc[j].r_inv;
      }
      for (int attempt = 0; attempt < 40; ++attempt) {
        Iterate next = it;
        bool pd = true;
        std::vector<double> low(nb);
        for (int j = 0; j < nb && pd; ++j) {
          const CMatrix xn = block(it.x, j) + ap * dxm[j];
          const CMatrix zn = block(it.z, j) + ad * dzm[j];
          const Eigen::LLT<CMatrix> lx(xn);
          pd = lx.info() == Eigen::Success && Eigen::LLT<CMatrix>(zn).info() == Eigen::Success;
          if (pd) {
            const CMatrix l = lx.matrixL();
            const CMatrix w = (l.adjoint() * zn * l).eval();
            Eigen::SelfAdjointEigenSolver<CMatrix> es(((w + w.adjoint()) / 2.0).eval(),
                                                      Eigen::EigenvaluesOnly);
            low[j] = es.eigenvalues()(0);
          }
          put(next.x, j, xn);
          put(next.z, j, zn);
        }
        if (pd) {
          const double mu_next = next.x.dot(next.z) / f.nu;
          pd = *std::min_element(low.begin(), low.end()) >= kNeighbourhood * mu_next;
        }
        if (pd) {
          next.y += ad * dir.dy;
          it = std::move(next);
          return true;
        }
        ap *= 0.5;
        ad *= 0.5;
      }
      return false;
    };

    std::vector<CMatrix> rc(nb);
    if (converged) {
      // Pure centering at the current mu.
      for (int j = 0; j < nb; ++j)
        rc[j] = (mu - sc[j].lambda.cwiseAbs2().array()).matrix().cast<Complex>().asDiagonal();
      const Direction dir = direction(rc);
      auto [ap, ad] = steps(dir);
      ap = std::min(1.0, options.step_fraction * ap);
      ad = std::min(1.0, options.step_fraction * ad);
      if (!take_step(dir, ap, ad)) {
        diag << " (step breakdown)";
        break;
      }
      continue;
    }
    for (int j = 0; j < nb; ++j) rc[j] = (-sc[j].lambda.cwiseAbs2()).cast<Complex>().asDiagonal();
    const Direction aff = direction(rc);
    auto [ap_aff, ad_aff] = steps(aff);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double mu_aff = 0.0;
    for (int j = 0; j < nb; ++j) {
      const CMatrix l = sc[j].lambda.cast<Complex>().asDiagonal();
      mu_aff += ((l + ap_aff * aff.dx[j]).conjugate().cwiseProduct(l + ad_aff * aff.dz[j])).sum().real();
    }
    mu_aff /= f.nu;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    for (int j = 0; j < nb; ++j) {
      const int d = f.cone[j].dim;
      const CMatrix cross = aff.dx[j] * aff.dz[j];
      rc[j] = sigma * mu * CMatrix::Identity(d, d) -
              CMatrix(sc[j].lambda.cwiseAbs2().cast<Complex>().asDiagonal()) -
              (cross + cross.adjoint()) / 2.0;
    }
    const Direction dir = direction(rc);
    auto [ap, ad] = steps(dir);
    ap = std::min(1.0, options.step_fraction * ap);
    ad = std::min(1.0, options.step_fraction * ad);

    if (!take_step(dir, ap, ad)) {
      diag << " (step breakdown)";
      break;
    }

    stalls = (ap < 1e-10 && ad < 1e-10) ? stalls + 1 : 0;
    if (stalls >= 5) {
      diag << " (stalled)";
      break;
    }
  }
  return finish(best, Status::max_iter, iter, diag.str());
}

}  // namespace asymdist::sdp

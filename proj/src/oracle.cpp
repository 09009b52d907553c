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

#include "asymdist/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

namespace asymdist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPenalty = 10.0;

using Bloch = std::array<double, 3>;

Bloch bloch_of(const CMatrix& m) {
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

void require_qubit(const StatePair& pair) {
  if (pair.dim() != 2) throw InvalidInput("grid oracles work on qubit pairs only");
}

double dot(const Bloch& a, const Bloch& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Bloch direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Zooming grid: sample an 11^N box around the incumbent and move to the best
// sample; halve the box when nothing improves, down to `floor`. The dense
// box finds the narrow descent wedges along ridges of the objective, where
// a coordinate search stalls.
template <std::size_t N, class F>
std::array<double, N> zoom_search(std::array<double, N> x, std::array<double, N> half, F&& f,
                                  double floor = 1e-10) {
  constexpr int kSide = 11;
  std::size_t samples = 1;
  for (std::size_t k = 0; k < N; ++k) samples *= kSide;
  double best = f(x);
  while (*std::max_element(half.begin(), half.end()) > floor) {
    const auto centre = x;
    for (std::size_t code = 0; code < samples; ++code) {
      auto trial = centre;
      std::size_t c = code;
      for (std::size_t k = 0; k < N; ++k, c /= kSide)
        trial[k] += half[k] * (2.0 * static_cast<double>(c % kSide) / (kSide - 1) - 1.0);
      const double v = f(trial);
      if (v > best) {
        best = v;
        x = trial;
      }
    }
    if (x == centre)
      for (auto& h : half) h *= 0.5;
  }
  return x;
}

}  // namespace

void GridSpec::validate() const {
  if (angle_steps < 2 || eigenvalue_steps < 2)
    throw InvalidInput("grid needs at least 2 angle steps and 2 eigenvalue steps");
}

MeasurementSearch brute_measurement(const StatePair& pair, double m, const GridSpec& grid) {
  require_qubit(pair);
  grid.validate();
  if (!std::isfinite(m) || m < 0.0) throw InvalidInput("m must be finite and nonnegative");
  const Bloch r = bloch_of(pair.rho().matrix());
  const Bloch s = bloch_of(pair.sigma().matrix());
  const double budget = std::exp2(-m);
  MeasurementSearch out;

  // Value of the test with eigenvector n(theta, phi) at eigenvalue t1 and the
  // orthogonal one at the largest admissible t2.
  // Out-of-range t1 is clamped rather than rejected, so the local search
  // can slide along the budget boundary.
  const auto admissible_t1 = [&](double t1, double a) {
    const double top = a > 0.0 ? std::min(1.0, budget / a) : 1.0;
    return std::clamp(t1, 0.0, top);
  };
  const auto value = [&](const std::array<double, 3>& x) {
    const Bloch n = direction(x[0], x[1]);
    const double a = 0.5 * (1.0 + dot(s, n));
    const double b = 1.0 - a;
    const double t1 = admissible_t1(x[2], a);
    const double left = std::max(0.0, budget - t1 * a);
    const double t2 = b > 0.0 ? std::clamp(left / b, 0.0, 1.0) : 1.0;
    const double ra = 0.5 * (1.0 + dot(r, n));
    return t1 * ra + t2 * (1.0 - ra);
  };

  std::array<double, 3> best_x{0.0, 0.0, 0.0};
  double best = -kInf;
  const int na = grid.angle_steps;
  const int ne = grid.eigenvalue_steps;
  for (int i = 0; i < na; ++i) {
    const double theta = kPi * i / (na - 1);
    for (int j = 0; j < na; ++j) {
      const double phi = 2.0 * kPi * j / na;
      for (int k = 0; k < ne; ++k) {
        const std::array<double, 3> x{theta, phi, static_cast<double>(k) / (ne - 1)};
        const double v = value(x);
        ++out.evaluated;
        if (v > best) {
          best = v;
          best_x = x;
        }
      }
    }
  }
  best_x = zoom_search<3>(best_x, {kPi / (na - 1), 2.0 * kPi / na, 1.0 / (ne - 1)}, value);

  const Bloch n = direction(best_x[0], best_x[1]);
  const double a = 0.5 * (1.0 + dot(s, n));
  const double t1 = admissible_t1(best_x[2], a);
  const double t2 =
      (1.0 - a) > 0.0 ? std::clamp(std::max(0.0, budget - t1 * a) / (1.0 - a), 0.0, 1.0) : 1.0;
  CVector u1(2), u2(2);
  u1 << std::cos(best_x[0] / 2), std::polar(1.0, best_x[1]) * std::sin(best_x[0] / 2);
  u2 << -std::polar(1.0, -best_x[1]) * std::sin(best_x[0] / 2), std::cos(best_x[0] / 2);
  out.best = HermitianMatrix::hermitian_part(t1 * u1 * u1.adjoint() + t2 * u2 * u2.adjoint());
  out.value = out.best.inner(pair.rho());
  return out;
}

DilutionSearch brute_dilution(const StatePair& pair, double m, const GridSpec& grid) {
  require_qubit(pair);
  grid.validate();
  if (!std::isfinite(m) || m < 0.0) throw InvalidInput("m must be finite and nonnegative");
  const Bloch r = bloch_of(pair.rho().matrix());
  const Bloch anchor = bloch_of(pair.sigma().matrix());
  const CMatrix cap = std::exp2(m) * pair.sigma().matrix();
  DilutionSearch out;

  // Closed-form smallest eigenvalue of the 2x2 matrix cap - rt.
  const auto headroom = [&](const Bloch& x) {
    const double a = cap(0, 0).real() - 0.5 * (1.0 + x[2]);
    const double d = cap(1, 1).real() - 0.5 * (1.0 - x[2]);
    const Complex b = cap(0, 1) - 0.5 * Complex(x[0], -x[1]);
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  };
  const auto feasible = [&](const Bloch& x) { return dot(x, x) <= 1.0 && headroom(x) >= -1e-12; };
  const auto score = [&](const Bloch& x) {
    if (!feasible(x)) return -kInf;
    const Bloch diff{x[0] - r[0], x[1] - r[1], x[2] - r[2]};
    return -0.5 * std::sqrt(dot(diff, diff));
  };
  // The feasible set is convex and holds sigma, so any point can be pulled
  // back towards sigma onto it.
  const auto pull_back = [&](const Bloch& x) {
    if (feasible(x)) return x;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
      const double t = 0.5 * (lo + hi);
      const Bloch y{anchor[0] + t * (x[0] - anchor[0]), anchor[1] + t * (x[1] - anchor[1]),
                    anchor[2] + t * (x[2] - anchor[2])};
      (feasible(y) ? lo : hi) = t;
    }
    return Bloch{anchor[0] + lo * (x[0] - anchor[0]), anchor[1] + lo * (x[1] - anchor[1]),
                 anchor[2] + lo * (x[2] - anchor[2])};
  };

  Bloch best_x{0.0, 0.0, 0.0};
  double best = -kInf;
  const int na = grid.angle_steps;
  const int ne = grid.eigenvalue_steps;
  for (int k = 0; k < ne; ++k) {
    const double radius = static_cast<double>(k) / (ne - 1);
    for (int i = 0; i < na; ++i) {
      const double theta = kPi * i / (na - 1);
      for (int j = 0; j < na; ++j) {
        const Bloch n = direction(theta, 2.0 * kPi * j / na);
        const Bloch x{radius * n[0], radius * n[1], radius * n[2]};
        const double v = score(x);
        if (v == -kInf) continue;
        ++out.feasible_points;
        if (v > best) {
          best = v;
          best_x = x;
        }
        if (k == 0) break;  // the centre needs one probe
      }
      if (k == 0) break;
    }
  }
  // sigma always fits, so a grid too coarse for a thin feasible set still
  // leaves a starting point.
  if (out.feasible_points == 0) best_x = anchor;
  const double h = 1.0 / (ne - 1);
  // Polished on an exact penalty: both constraint violations are convex in
  // the Bloch vector, so the penalized distance is convex with the same
  // minimizer once the weight exceeds the multipliers.
  const auto penalized = [&](const Bloch& x) {
    const Bloch diff{x[0] - r[0], x[1] - r[1], x[2] - r[2]};
    const double violation =
        std::max(0.0, std::sqrt(dot(x, x)) - 1.0) + std::max(0.0, -headroom(x));
    return -0.5 * std::sqrt(dot(diff, diff)) - kPenalty * violation;
  };
  best_x = pull_back(zoom_search<3>(best_x, {h, h, h}, penalized));

  out.feasible = true;
  out.distance = -score(best_x);
  CMatrix rt(2, 2);
  rt << 0.5 * (1.0 + best_x[2]), 0.5 * Complex(best_x[0], -best_x[1]),
      0.5 * Complex(best_x[0], best_x[1]), 0.5 * (1.0 - best_x[2]);
  out.best = HermitianMatrix::hermitian_part(rt);
  return out;
}

HermitianMatrix identity_channel(int dim) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  CMatrix j = CMatrix::Zero(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) j(a * dim + a, b * dim + b) = 1.0;
  return HermitianMatrix::hermitian_part(j);
}

HermitianMatrix replacer_channel(int dim_in, const DensityMatrix& omega) {
  if (dim_in < 1) throw InvalidInput("dimension must be positive");
  return HermitianMatrix::hermitian_part(
      kron(CMatrix::Identity(dim_in, dim_in), omega.matrix()));
}

HermitianMatrix dephasing_channel(int dim) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  CMatrix j = CMatrix::Zero(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a) j(a * dim + a, a * dim + a) = 1.0;
  return HermitianMatrix::hermitian_part(j);
}

HermitianMatrix random_cptp(int dim_in, int dim_out, std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || dim_in > 4 || dim_out > 4)
    throw InvalidInput("random channels support dimensions 1 to 4");
  const int env = std::max(2, (dim_in + dim_out - 1) / dim_out);
  const int rows = dim_out * env;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, dim_in);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < dim_in; ++j) g(i, j) = Complex(normal(rng), normal(rng));

  // Q from QR with the phases of diag(R) folded back in is Haar distributed.
  const Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix v = qr.householderQ() * CMatrix::Identity(rows, dim_in);
  for (int k = 0; k < dim_in; ++k) {
    const Complex d = qr.matrixQR()(k, k);
    if (std::abs(d) > 0.0) v.col(k) *= d / std::abs(d);
  }

  CMatrix j = CMatrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (int i = 0; i < dim_in; ++i)
    for (int k = 0; k < dim_in; ++k)
      for (int a = 0; a < dim_out; ++a)
        for (int b = 0; b < dim_out; ++b) {
          Complex acc = 0.0;
          for (int e = 0; e < env; ++e) acc += v(a * env + e, i) * std::conj(v(b * env + e, k));
          j(i * dim_out + a, k * dim_out + b) = acc;
        }
  return HermitianMatrix::hermitian_part(j);
}

double choi_defect(const HermitianMatrix& choi, int dim_in) {
  if (dim_in < 1 || choi.dim() % dim_in != 0) throw InvalidInput("Choi dimension mismatch");
  const int dim_out = choi.dim() / dim_in;
  double worst = std::max(0.0, -min_eigenvalue(choi));
  for (int i = 0; i < dim_in; ++i)
    for (int k = 0; k < dim_in; ++k) {
      const Complex t = choi.matrix().block(i * dim_out, k * dim_out, dim_out, dim_out).trace();
      worst = std::max(worst, std::abs(t - (i == k ? 1.0 : 0.0)));
    }
  return worst;
}

DensityMatrix apply_channel(const HermitianMatrix& choi, const DensityMatrix& state) {
  if (choi.dim() % state.dim() != 0)
    throw InvalidInput("Choi operator of dimension " + std::to_string(choi.dim()) +
                       " does not act on states of dimension " + std::to_string(state.dim()));
  return DensityMatrix(apply_choi(choi, state, choi.dim() / state.dim()));
}

StatePair apply_channel(const HermitianMatrix& choi, const StatePair& pair) {
  return StatePair(apply_channel(choi, pair.rho()), apply_channel(choi, pair.sigma()));
}

DensityMatrix random_density(int dim, std::mt19937_64& rng) {
  if (dim < 1 || dim > kMaxDenseDim) throw InvalidInput("dimension out of range");
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianMatrix::hermitian_part(rho));
}

StatePair random_pair(int dim, std::mt19937_64& rng) {
  DensityMatrix rho = random_density(dim, rng);
  DensityMatrix sigma = random_density(dim, rng);
  return StatePair(std::move(rho), std::move(sigma));
}

DensityMatrix random_diagonal_density(int dim, std::mt19937_64& rng) {
  if (dim < 1 || dim > kMaxDenseDim) throw InvalidInput("dimension out of range");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(dim);
  double total = 0.0;
  for (auto& x : p) total += (x = expo(rng));
  for (auto& x : p) x /= total;
  return DensityMatrix::from_probabilities(p);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ASYMDIST_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
  }
  return 42;
}

}  // namespace asymdist

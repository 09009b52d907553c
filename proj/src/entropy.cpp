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

#include "asymdist/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace asymdist {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kMaxAlpha = 1e6;
// Overlap mass Tr[Pi_sigma rho] at or below this counts as orthogonal.
constexpr double kOrthogonalMass = 1e-14;

double log_sum_exp(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double hi = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - hi);
  return hi + std::log(s);
}

void check_alpha(double alpha, bool allow_large) {
  if (!std::isfinite(alpha) || alpha <= 0.0)
    throw InvalidInput("Renyi order must be positive and finite");
  if (alpha == 1.0) throw InvalidInput("Renyi order 1 is the relative entropy; use rel_entropy");
  if (!allow_large && alpha > kMaxAlpha) throw InvalidInput("Renyi order exceeds 1e6");
}

}  // namespace

ExtendedReal::ExtendedReal(double v) : v_(v) {
  if (std::isnan(v)) throw InvalidInput("extended real cannot be NaN");
  if (v == -std::numeric_limits<double>::infinity())
    throw InvalidInput("extended real cannot be -inf");
}

std::string ExtendedReal::to_string(int precision) const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(precision);
  os << v_;
  return os.str();
}

RenyiOrder::RenyiOrder(double alpha, RenyiFamily family) : alpha_(alpha), family_(family) {
  check_alpha(alpha, false);
}

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw InvalidInput("dimension mismatch: rho is " + std::to_string(rho.dim()) +
                       ", sigma is " + std::to_string(sigma.dim()));
}

RenyiCurve::RenyiCurve(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  rho_ = eig_hermitian(rho);
  sigma_ = eig_hermitian(sigma);
  overlap_ = (rho_.eigenvectors.adjoint() * sigma_.eigenvectors).cwiseAbs2();
  const int d = rho.dim();
  for (int i = 0; i < d; ++i) {
    if (rho_.eigenvalues(i) <= kSupportCutoff) continue;
    for (int j = 0; j < d; ++j)
      if (sigma_.eigenvalues(j) <= kSupportCutoff)
        mismatch_ += rho_.eigenvalues(i) * overlap_(i, j);
  }
}

ExtendedReal RenyiCurve::petz(double alpha) const {
  check_alpha(alpha, false);
  if (alpha > 1.0 && mismatch_ > kStateTol) return ExtendedReal::infinity();
  const int d = static_cast<int>(rho_.eigenvalues.size());
  std::vector<double> terms;
  double mass = 0.0;
  for (int i = 0; i < d; ++i) {
    const double r = rho_.eigenvalues(i);
    if (r <= kSupportCutoff) continue;
    for (int j = 0; j < d; ++j) {
      const double s = sigma_.eigenvalues(j);
      const double w = overlap_(i, j);
      if (s <= kSupportCutoff || w <= 0.0) continue;
      mass += r * w;
      terms.push_back(alpha * std::log(r) + (1.0 - alpha) * std::log(s) + std::log(w));
    }
  }
  if (mass <= kOrthogonalMass) return ExtendedReal::infinity();
  return ExtendedReal(log_sum_exp(terms) / ((alpha - 1.0) * kLn2));
}

ExtendedReal RenyiCurve::sandwiched(double alpha) const {
  check_alpha(alpha, true);
  if (alpha >= kMaxAlpha) return dmax();
  if (alpha > 1.0 && mismatch_ > kStateTol) return ExtendedReal::infinity();
  if (alpha < 1.0 && 1.0 - mismatch_ <= kOrthogonalMass) return ExtendedReal::infinity();
  const double s = (1.0 - alpha) / (2.0 * alpha);
  const HermitianMatrix p = spectral_map(
      sigma_, [s](double e) { return e > kSupportCutoff ? std::pow(e, s) : 0.0; });
  const CMatrix rho = rho_.reconstruct();
  const HermitianMatrix q = HermitianMatrix::hermitian_part(p.matrix() * rho * p.matrix());
  const RVector ev = eig_hermitian(q).eigenvalues;
  const double top = ev(0);
  if (!(top > 0.0)) return ExtendedReal::infinity();
  double acc = 0.0;
  for (double e : ev)
    if (e > 0.0) acc += std::pow(e / top, alpha);
  const double log_tr = alpha * std::log(top) + std::log(acc);
  return ExtendedReal(log_tr / ((alpha - 1.0) * kLn2));
}

ExtendedReal RenyiCurve::operator()(const RenyiOrder& order) const {
  return order.family() == RenyiFamily::petz ? petz(order.alpha()) : sandwiched(order.alpha());
}

ExtendedReal RenyiCurve::relative_entropy() const {
  if (mismatch_ > kStateTol) return ExtendedReal::infinity();
  const int d = static_cast<int>(rho_.eigenvalues.size());
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    const double r = rho_.eigenvalues(i);
    if (r <= kSupportCutoff) continue;
    acc += r * std::log(r);
    for (int j = 0; j < d; ++j) {
      const double s = sigma_.eigenvalues(j);
      if (s <= kSupportCutoff) continue;
      acc -= r * overlap_(i, j) * std::log(s);
    }
  }
  return ExtendedReal(std::max(acc / kLn2, 0.0));
}

ExtendedReal RenyiCurve::dmax() const {
  if (mismatch_ > kStateTol) return ExtendedReal::infinity();
  const HermitianMatrix p =
      spectral_map(sigma_, [](double e) { return e > kSupportCutoff ? 1.0 / std::sqrt(e) : 0.0; });
  const HermitianMatrix q =
      HermitianMatrix::hermitian_part(p.matrix() * rho_.reconstruct() * p.matrix());
  return ExtendedReal(std::log2(max_eigenvalue(q)));
}

ExtendedReal rel_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return RenyiCurve(rho, sigma).relative_entropy();
}

ExtendedReal petz_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  check_alpha(alpha, false);
  return RenyiCurve(rho, sigma).petz(alpha);
}

ExtendedReal sandwiched_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  check_alpha(alpha, true);
  return RenyiCurve(rho, sigma).sandwiched(alpha);
}

ExtendedReal renyi(const DensityMatrix& rho, const DensityMatrix& sigma, const RenyiOrder& order) {
  return RenyiCurve(rho, sigma)(order);
}

ExtendedReal dmax_exact(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return RenyiCurve(rho, sigma).dmax();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return std::clamp(0.5 * trace_norm(rho.hermitian() - sigma.hermitian()), 0.0, 1.0);
}

double support_mismatch(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return RenyiCurve(rho, sigma).mismatch();
}

}  // namespace asymdist

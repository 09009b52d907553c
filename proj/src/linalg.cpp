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

#include "asymdist/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace asymdist {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_square(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InvalidInput("matrix must be square and nonempty, got " + std::to_string(m.rows()) +
                       "x" + std::to_string(m.cols()));
}

}  // namespace

double symmetry_defect(const CMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = j; k < m.cols(); ++k)
      worst = std::max(worst, std::abs(m(j, k) - std::conj(m(k, j))));
  return worst;
}

HermitianMatrix::HermitianMatrix(CMatrix m) {
  require_square(m);
  if (!m.allFinite()) throw InvalidInput("matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = symmetry_defect(m);
  if (defect > kHermitianTol * scale)
    throw InvalidInput("matrix is not Hermitian: symmetry defect " + fmt(defect));
  m_ = (m + m.adjoint()) / 2.0;
}

HermitianMatrix HermitianMatrix::hermitian_part(const CMatrix& m) {
  HermitianMatrix h;
  h.m_ = (m + m.adjoint()) / 2.0;
  return h;
}

HermitianMatrix HermitianMatrix::zero(int dim) { return hermitian_part(CMatrix::Zero(dim, dim)); }

HermitianMatrix HermitianMatrix::identity(int dim) {
  return hermitian_part(CMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

double HermitianMatrix::inner(const HermitianMatrix& other) const {
  if (other.dim() != dim()) throw InvalidInput("dimension mismatch in trace inner product");
  return (m_.conjugate().cwiseProduct(other.m_)).sum().real();
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw InvalidInput("dimension mismatch in sum");
  m_ += o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw InvalidInput("dimension mismatch in difference");
  m_ -= o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

DensityMatrix::DensityMatrix(HermitianMatrix m) : h_(std::move(m)) {
  if (h_.dim() > kMaxDenseDim)
    throw InvalidInput("dimension " + std::to_string(h_.dim()) + " exceeds " +
                       std::to_string(kMaxDenseDim));
  const double tr = h_.trace();
  if (std::abs(tr - 1.0) > kStateTol)
    throw InvalidInput("trace " + fmt(tr) + " differs from 1 by more than 1e-10");
  const double lo = min_eigenvalue(h_);
  if (lo < -kStateTol)
    throw InvalidInput("not positive semidefinite: eigenvalue " + fmt(lo) + " below -1e-10");
}

DensityMatrix DensityMatrix::from_probabilities(std::span<const double> p) {
  return DensityMatrix(HermitianMatrix::diagonal(p));
}

DensityMatrix DensityMatrix::from_probabilities(std::initializer_list<double> p) {
  return from_probabilities(std::span<const double>(p.begin(), p.size()));
}

DensityMatrix DensityMatrix::pure(const CVector& ket) {
  const double n = ket.norm();
  if (!(n > 0.0)) throw InvalidInput("zero ket");
  const CVector v = ket / n;
  return DensityMatrix(HermitianMatrix::hermitian_part(v * v.adjoint()));
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  if (index < 0 || index >= dim) throw InvalidInput("basis index out of range");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return pure(v);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(HermitianMatrix::identity(dim) * (1.0 / dim));
}

MeasurementOperator::MeasurementOperator(HermitianMatrix m) : h_(std::move(m)) {
  const Spectrum s = eig_hermitian(h_);
  const double hi = s.eigenvalues(0);
  const double lo = s.eigenvalues(s.eigenvalues.size() - 1);
  if (lo < -kStateTol || hi > 1.0 + kStateTol)
    throw InvalidInput("measurement operator spectrum [" + fmt(lo) + ", " + fmt(hi) +
                       "] leaves [0, 1]");
}

MeasurementOperator MeasurementOperator::clamped(const HermitianMatrix& m) {
  return MeasurementOperator(
      spectral_map(eig_hermitian(m), [](double e) { return std::clamp(e, 0.0, 1.0); }));
}

CMatrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

Spectrum eig_hermitian(const HermitianMatrix& h) {
  const int n = h.dim();
  CMatrix a = h.matrix();
  CMatrix v = CMatrix::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);

  auto rotate = [&](int p, int q) {
    const Complex b = a(p, q);
    const double absb = std::abs(b);
    if (absb == 0.0) return;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    double t;
    const double theta = (aqq - app) / (2.0 * absb);
    if (std::abs(theta) > 1e150) {
      t = 0.5 / theta;
    } else {
      t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex ph = std::conj(b / absb);
    // V = diag(1, ph) * [[c, s], [-s, c]] restricted to (p, q).
    const Complex v00 = c, v01 = s, v10 = -s * ph, v11 = c * ph;
    for (int k = 0; k < n; ++k) {
      const Complex akp = a(k, p), akq = a(k, q);
      a(k, p) = akp * v00 + akq * v10;
      a(k, q) = akp * v01 + akq * v11;
    }
    for (int k = 0; k < n; ++k) {
      const Complex apk = a(p, k), aqk = a(q, k);
      a(p, k) = std::conj(v00) * apk + std::conj(v10) * aqk;
      a(q, k) = std::conj(v01) * apk + std::conj(v11) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    for (int k = 0; k < n; ++k) {
      const Complex vkp = v(k, p), vkq = v(k, q);
      v(k, p) = vkp * v00 + vkq * v10;
      v(k, q) = vkp * v01 + vkq * v11;
    }
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        // Once an entry is negligible against both diagonal entries it only
        // perturbs eigenvalues at round-off level.
        const double absb = std::abs(a(p, q));
        if (sweep > 3 && absb < 1e-18 * scale) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(p, q);
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });
  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

double min_eigenvalue(const HermitianMatrix& a) {
  const Spectrum s = eig_hermitian(a);
  return s.eigenvalues(s.eigenvalues.size() - 1);
}

double max_eigenvalue(const HermitianMatrix& a) { return eig_hermitian(a).eigenvalues(0); }

HermitianMatrix frac_power(const HermitianMatrix& a, double s) {
  if (!std::isfinite(s)) throw InvalidInput("exponent must be finite");
  const Spectrum sp = eig_hermitian(a);
  const double lo = sp.eigenvalues(sp.eigenvalues.size() - 1);
  if (lo < -kStateTol)
    throw InvalidInput("fractional power of a non-PSD matrix: eigenvalue " + fmt(lo));
  return spectral_map(sp, [s](double e) { return e > kSupportCutoff ? std::pow(e, s) : 0.0; });
}

HermitianMatrix support_projector(const HermitianMatrix& a) {
  return spectral_map(eig_hermitian(a), [](double e) { return e > kSupportCutoff ? 1.0 : 0.0; });
}

double trace_norm(const HermitianMatrix& a) { return eig_hermitian(a).eigenvalues.cwiseAbs().sum(); }

HermitianMatrix positive_part(const HermitianMatrix& a) {
  return spectral_map(eig_hermitian(a), [](double e) { return e > 0.0 ? e : 0.0; });
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidInput("dimension mismatch in fidelity");
  // ||sqrt(rho) sqrt(sigma)||_1 = Tr sqrt(sqrt(sigma) rho sqrt(sigma)).
  const HermitianMatrix rs = frac_power(sigma, 0.5);
  const HermitianMatrix inner =
      HermitianMatrix::hermitian_part(rs.matrix() * rho.matrix() * rs.matrix());
  double root = 0.0;
  for (double e : eig_hermitian(inner).eigenvalues) root += std::sqrt(std::max(e, 0.0));
  return std::clamp(root * root, 0.0, 1.0);
}

bool psd_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch in operator comparison");
  return min_eigenvalue(b - a) >= -tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix tensor_power(const DensityMatrix& rho, int n) {
  if (n < 1) throw InvalidInput("tensor power needs n >= 1");
  double total = 1.0;
  for (int i = 0; i < n; ++i) total *= rho.dim();
  if (total > kMaxDenseDim)
    throw InvalidInput("tensor power dimension " + fmt(total) + " exceeds dense limit " +
                       std::to_string(kMaxDenseDim));
  CMatrix out = rho.matrix();
  for (int i = 1; i < n; ++i) out = kron(out, rho.matrix());
  return DensityMatrix(HermitianMatrix::hermitian_part(out));
}

std::vector<double> tensor_power(std::span<const double> p, int n) {
  if (n < 1) throw InvalidInput("tensor power needs n >= 1");
  if (p.empty()) throw InvalidInput("empty probability vector");
  if (n * std::log2(static_cast<double>(p.size())) > 24.0 + 1e-12)
    throw InvalidInput("tensor power of length " + std::to_string(p.size()) + " to n = " +
                       std::to_string(n) + " exceeds 2^24 entries");
  std::vector<double> out(p.begin(), p.end());
  for (int i = 1; i < n; ++i) {
    std::vector<double> next;
    next.reserve(out.size() * p.size());
    for (double a : out)
      for (double b : p) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

DensityMatrix pi_state(double M) {
  if (!(M >= 1.0) || !std::isfinite(M)) throw InvalidInput("pi_state needs finite M >= 1");
  return DensityMatrix::from_probabilities({1.0 / M, 1.0 - 1.0 / M});
}

}  // namespace asymdist

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

#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace asymdist {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Hermiticity is checked relative to max(1, largest entry magnitude).
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kStateTol = 1e-10;
// Eigenvalues at or below this are outside the support.
inline constexpr double kSupportCutoff = 1e-12;
inline constexpr int kMaxDenseDim = 64;

// Thrown for malformed inputs across the library (bad shapes, states that
// violate their invariants, out-of-range parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Largest |m(j,k) - conj(m(k,j))|.
double symmetry_defect(const CMatrix& m);

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m);

  // (m + m^dagger)/2 with no validation, for internally computed operators.
  static HermitianMatrix hermitian_part(const CMatrix& m);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);
  static HermitianMatrix diagonal(std::span<const double> d);
  static HermitianMatrix diagonal(std::initializer_list<double> d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  double trace() const { return m_.trace().real(); }
  // Tr[this * other], real for Hermitian arguments.
  double inner(const HermitianMatrix& other) const;

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator-(HermitianMatrix a) { return a *= -1.0; }

 private:
  CMatrix m_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix m);
  explicit DensityMatrix(CMatrix m) : DensityMatrix(HermitianMatrix(std::move(m))) {}

  static DensityMatrix from_probabilities(std::span<const double> p);
  static DensityMatrix from_probabilities(std::initializer_list<double> p);
  // Normalizes the ket.
  static DensityMatrix pure(const CVector& ket);
  static DensityMatrix basis_state(int dim, int index);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }
  operator const HermitianMatrix&() const { return h_; }

 private:
  HermitianMatrix h_;
};

class MeasurementOperator {
 public:
  explicit MeasurementOperator(HermitianMatrix m);
  // Clips the spectrum into [0, 1]; used on solver output.
  static MeasurementOperator clamped(const HermitianMatrix& m);

  int dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }
  operator const HermitianMatrix&() const { return h_; }

 private:
  HermitianMatrix h_;
};

struct Spectrum {
  RVector eigenvalues;   // descending
  CMatrix eigenvectors;  // column k belongs to eigenvalue k
  CMatrix reconstruct() const;
};

// Cyclic complex Jacobi rotations.
Spectrum eig_hermitian(const HermitianMatrix& h);

template <class F>
HermitianMatrix spectral_map(const Spectrum& s, F&& f) {
  RVector mapped(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(s.eigenvalues(i));
  return HermitianMatrix::hermitian_part(s.eigenvectors * mapped.asDiagonal() *
                                         s.eigenvectors.adjoint());
}

double min_eigenvalue(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);

// A^s on the support of A; s <= 0 uses the pseudo-inverse convention.
HermitianMatrix frac_power(const HermitianMatrix& a, double s);
HermitianMatrix support_projector(const HermitianMatrix& a);
double trace_norm(const HermitianMatrix& a);
HermitianMatrix positive_part(const HermitianMatrix& a);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
bool psd_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);

CMatrix kron(const CMatrix& a, const CMatrix& b);
// Dense tensor power, limited to dim^n <= kMaxDenseDim.
DensityMatrix tensor_power(const DensityMatrix& rho, int n);
// Probability-vector tensor power for commuting inputs, n*log2(len) <= 24.
std::vector<double> tensor_power(std::span<const double> p, int n);

// diag(1/M, 1 - 1/M).
DensityMatrix pi_state(double M);

}  // namespace asymdist

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

#include <cmath>
#include <limits>
#include <string>

#include "asymdist/linalg.hpp"

namespace asymdist {

// A real number or +infinity; never NaN.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double v);  // NOLINT: implicit by design
  static ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_infinite() const { return !is_finite(); }
  // +inf for the infinity marker.
  double value() const { return v_; }
  // 2^{-x}, which is 0 at +inf.
  double exp2_neg() const { return is_finite() ? std::exp2(-v_) : 0.0; }
  std::string to_string(int precision = 12) const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) { return a.v_ == b.v_; }

 private:
  double v_ = 0.0;
};

enum class RenyiFamily { petz, sandwiched };

class RenyiOrder {
 public:
  RenyiOrder(double alpha, RenyiFamily family);
  double alpha() const { return alpha_; }
  RenyiFamily family() const { return family_; }
  double beta() const { return 2.0 - alpha_; }
  double gamma() const { return alpha_ / (2.0 * alpha_ - 1.0); }

 private:
  double alpha_;
  RenyiFamily family_;
};

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma);

// All divergences are in bits.
ExtendedReal rel_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
ExtendedReal petz_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);
ExtendedReal sandwiched_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);
ExtendedReal renyi(const DensityMatrix& rho, const DensityMatrix& sigma, const RenyiOrder& order);
ExtendedReal dmax_exact(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Mass of rho outside the support of sigma, Tr[(I - Pi_sigma) rho].
double support_mismatch(const DensityMatrix& rho, const DensityMatrix& sigma);

// Caches both spectra so that repeated evaluation along an alpha search is
// cheap. Same conventions as the free functions.
class RenyiCurve {
 public:
  RenyiCurve(const DensityMatrix& rho, const DensityMatrix& sigma);
  ExtendedReal petz(double alpha) const;
  ExtendedReal sandwiched(double alpha) const;
  ExtendedReal operator()(const RenyiOrder& order) const;
  ExtendedReal relative_entropy() const;
  ExtendedReal dmax() const;
  double mismatch() const { return mismatch_; }

 private:
  Spectrum rho_;
  Spectrum sigma_;
  Eigen::MatrixXd overlap_;  // |<u_i|v_j>|^2, rho eigvecs vs sigma eigvecs
  double mismatch_ = 0.0;
};

}  // namespace asymdist

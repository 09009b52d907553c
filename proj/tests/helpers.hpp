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

#include <random>

#include "asymdist/linalg.hpp"

namespace testing_support {

using namespace asymdist;

inline CMatrix gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

inline HermitianMatrix random_hermitian(int d, std::mt19937_64& rng) {
  const CMatrix g = gaussian(d, d, rng);
  return HermitianMatrix::hermitian_part(g);
}

inline DensityMatrix random_state(int d, std::mt19937_64& rng) {
  const CMatrix g = gaussian(d, d, rng);
  CMatrix r = g * g.adjoint();
  r /= r.trace().real();
  return DensityMatrix(HermitianMatrix::hermitian_part(r));
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing_support

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

#include <cstdint>
#include <optional>
#include <random>

#include "asymdist/exponents.hpp"
#include "asymdist/linalg.hpp"

namespace asymdist {

struct GridSpec {
  int angle_steps = 64;
  int eigenvalue_steps = 64;
  void validate() const;
};

struct MeasurementSearch {
  double value = 0.0;  // best Tr[L rho] found
  HermitianMatrix best;
  long evaluated = 0;
};

struct DilutionSearch {
  bool feasible = false;
  double distance = 1.0;  // best (1/2)||rt - rho||_1 found
  HermitianMatrix best;
  long feasible_points = 0;  // zero when the grid misses a thin feasible set
};

// Qubit tests L = U diag(t1, t2) U* over a grid of eigenbasis angles and t1;
// t2 is set to its largest value allowed by Tr[L sigma] <= 2^-m. The best
// grid point is then polished by a zooming local search.
MeasurementSearch brute_measurement(const StatePair& pair, double m, const GridSpec& grid = {});

// Qubit states on a spherical Bloch-ball grid, kept when rt <= 2^m sigma,
// then polished by a zooming local search. When no grid point fits, the
// search starts from sigma, which always does.
DilutionSearch brute_dilution(const StatePair& pair, double m, const GridSpec& grid = {});

// Choi operators on in (x) out, row index i * d_out + a.
HermitianMatrix identity_channel(int dim);
HermitianMatrix replacer_channel(int dim_in, const DensityMatrix& omega);
HermitianMatrix dephasing_channel(int dim);
// Stinespring dilation with a Haar isometry into out (x) env, env at least 2.
HermitianMatrix random_cptp(int dim_in, int dim_out, std::uint64_t seed);
// Largest |Tr_out J - I| entry and the PSD violation of J.
double choi_defect(const HermitianMatrix& choi, int dim_in);

DensityMatrix apply_channel(const HermitianMatrix& choi, const DensityMatrix& state);
StatePair apply_channel(const HermitianMatrix& choi, const StatePair& pair);

// Ginibre-distributed states.
DensityMatrix random_density(int dim, std::mt19937_64& rng);
StatePair random_pair(int dim, std::mt19937_64& rng);
DensityMatrix random_diagonal_density(int dim, std::mt19937_64& rng);

// ASYMDIST_SEED when set and numeric, otherwise 42.
std::uint64_t default_seed();

}  // namespace asymdist

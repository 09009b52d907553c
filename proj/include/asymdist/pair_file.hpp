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

#include <optional>
#include <string>
#include <string_view>

#include "asymdist/exponents.hpp"

namespace asymdist {

// JSON document
//   {"dimension": d,
//    "rho":   [[[re, im], ...], ...],
//    "sigma": [[[re, im], ...], ...],
//    "labels": {"rho": "...", "sigma": "..."}}
// Matrices are row-major: either d rows of d [re, im] pairs, or one flat
// list of d*d pairs. "labels" is optional.
struct StatePairFile {
  StatePair pair;
  std::optional<std::string> rho_label;
  std::optional<std::string> sigma_label;
};

// Failures name the origin, then the line (for syntax errors) or the field
// and the violated invariant.
class PairFileError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

StatePairFile parse_pair_file(std::string_view text, const std::string& origin = "<input>");
StatePairFile load_pair_file(const std::string& path);

std::string format_pair_file(const StatePairFile& file);
// Throws PairFileError when the path cannot be written.
void save_pair_file(const StatePairFile& file, const std::string& path);

}  // namespace asymdist

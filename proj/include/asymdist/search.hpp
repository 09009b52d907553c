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

#include <functional>

namespace asymdist {

struct SearchResult {
  double argmax = 0.0;
  double value = 0.0;  // -inf when every probe was excluded
};

// Maximizes f on [lo, hi]: a uniform coarse grid of `grid` points locates the
// best bracket, then golden-section search narrows it to `width`. Probes
// where f returns -inf are treated as excluded.
SearchResult maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                  int grid = 64, double width = 1e-10);

}  // namespace asymdist

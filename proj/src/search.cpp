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

#include "asymdist/search.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "asymdist/linalg.hpp"

namespace asymdist {

SearchResult maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                  int grid, double width) {
  if (!(lo < hi) || grid < 3) throw InvalidInput("search interval must be nonempty with grid >= 3");
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> xs(grid), fs(grid);
  int best = -1;
  for (int i = 0; i < grid; ++i) {
    xs[i] = lo + (hi - lo) * i / (grid - 1);
    fs[i] = f(xs[i]);
    if (std::isnan(fs[i])) fs[i] = ninf;
    if (fs[i] > ninf && (best < 0 || fs[i] > fs[best])) best = i;
  }
  if (best < 0) return {lo, ninf};
  SearchResult out{xs[best], fs[best]};

  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, grid - 1)];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
    if (fc > out.value) out = {c, fc};
    if (fd > out.value) out = {d, fd};
  }
  return out;
}

}  // namespace asymdist

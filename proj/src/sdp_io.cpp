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

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "asymdist/sdp.hpp"

namespace asymdist::sdp {

namespace {

char kind_char(BlockKind k) { return k == BlockKind::hermitian ? 'h' : 's'; }

BlockKind parse_kind(const std::string& s) {
  if (s == "h") return BlockKind::hermitian;
  if (s == "s") return BlockKind::real_symmetric;
  throw InvalidInput("problem file: unknown block kind '" + s + "'");
}

void expect(std::istream& in, const std::string& word) {
  std::string got;
  if (!(in >> got) || got != word)
    throw InvalidInput("problem file: expected '" + word + "', found '" + got + "'");
}

template <class T>
T read(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw InvalidInput(std::string("problem file: cannot read ") + what);
  return v;
}

void write_vector(std::ostream& out, const RVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << v(i);
  out << '\n';
}

RVector read_vector(std::istream& in, int n, const char* what) {
  RVector v(n);
  for (int i = 0; i < n; ++i) v(i) = read<double>(in, what);
  return v;
}

}  // namespace

// Format: a header line, the block lists, then objective/bound coordinates
// and the dense map matrix, all as whitespace-separated tokens.
void dump(const SdpProblem& p, std::ostream& out) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  out << "asymdist-sdp 1\n";
  out << "primal_blocks " << p.primal_layout().blocks().size() << '\n';
  for (const auto& b : p.primal_layout().blocks()) out << b.dim << ' ' << kind_char(b.kind) << '\n';
  out << "constraint_blocks " << p.constraint_blocks().size() << '\n';
  for (const auto& c : p.constraint_blocks())
    out << c.spec.dim << ' ' << kind_char(c.spec.kind) << ' ' << (c.equality ? "eq" : "le") << '\n';
  out << "objective " << p.primal_layout().total() << '\n';
  write_vector(out, p.primal_layout().to_coords(p.objective()));
  out << "bound " << p.constraint_layout().total() << '\n';
  write_vector(out, p.constraint_layout().to_coords(p.bound()));
  out << "phi " << p.phi().rows() << ' ' << p.phi().cols() << '\n';
  for (Eigen::Index r = 0; r < p.phi().rows(); ++r) write_vector(out, p.phi().row(r).transpose());
  out << "end\n";
  out.flags(flags);
  out.precision(prec);
}

SdpProblem load(std::istream& in) {
  expect(in, "asymdist-sdp");
  if (read<int>(in, "version") != 1) throw InvalidInput("problem file: unsupported version");
  expect(in, "primal_blocks");
  const int np = read<int>(in, "primal block count");
  std::vector<BlockSpec> primal;
  for (int i = 0; i < np; ++i) {
    const int d = read<int>(in, "block dimension");
    primal.push_back({d, parse_kind(read<std::string>(in, "block kind"))});
  }
  expect(in, "constraint_blocks");
  const int nc = read<int>(in, "constraint block count");
  std::vector<ConstraintBlock> cons;
  for (int i = 0; i < nc; ++i) {
    const int d = read<int>(in, "block dimension");
    const BlockKind k = parse_kind(read<std::string>(in, "block kind"));
    const std::string rel = read<std::string>(in, "relation");
    if (rel != "eq" && rel != "le") throw InvalidInput("problem file: relation must be eq or le");
    cons.push_back({{d, k}, rel == "eq"});
  }
  const Layout pl(primal);
  std::vector<BlockSpec> cspecs;
  for (const auto& c : cons) cspecs.push_back(c.spec);
  const Layout cl(cspecs);
  expect(in, "objective");
  if (read<int>(in, "objective length") != pl.total()) throw InvalidInput("problem file: objective length mismatch");
  const RVector a = read_vector(in, pl.total(), "objective");
  expect(in, "bound");
  if (read<int>(in, "bound length") != cl.total()) throw InvalidInput("problem file: bound length mismatch");
  const RVector b = read_vector(in, cl.total(), "bound");
  expect(in, "phi");
  const int rows = read<int>(in, "map rows");
  const int cols = read<int>(in, "map columns");
  if (rows != cl.total() || cols != pl.total()) throw InvalidInput("problem file: map shape mismatch");
  Eigen::MatrixXd phi(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) phi(r, c) = read<double>(in, "map entry");
  expect(in, "end");
  return SdpProblem(primal, cons, pl.from_coords(a), cl.from_coords(b), phi);
}

}  // namespace asymdist::sdp

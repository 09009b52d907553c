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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "asymdist/cli.hpp"
#include "asymdist/pair_file.hpp"
#include "doctest.h"

using namespace asymdist;

namespace {

const std::string kData = ASYMDIST_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Value of "key: value" in a report.
std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  return "";
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    for (std::string c; std::getline(l, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("compute on the fixtures") {
  const Run ed = run({"compute", data("diag_pair.json"), "ed", "--m", "1"});
  REQUIRE(ed.code == kExitOk);
  CHECK(std::stod(field(ed.out, "value")) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::stod(field(ed.out, "gap")) <= 1e-7);

  const Run rel = run({"compute", data("identical_pair.json"), "relent"});
  REQUIRE(rel.code == kExitOk);
  CHECK(std::stod(field(rel.out, "value")) == doctest::Approx(0.0));

  const Run dmax = run({"compute", data("diag_pair.json"), "dmax", "--eps", "0"});
  REQUIRE(dmax.code == kExitOk);
  CHECK(field(dmax.out, "value") == "0.584962500721");

  const Run bounds = run({"compute", data("diag_pair.json"), "bounds", "--m", "0.5"});
  CHECK(bounds.code == kExitOk);
  CHECK(bounds.out.find("bound_sd22") != std::string::npos);

  const Run inf = run({"compute", data("near_orthogonal_pair.json"), "ed", "--m", "1"});
  CHECK(field(inf.out, "value") == "inf");
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"compute", data("diag_pair.json"), "nonsense"}).code == kExitUsage);
  CHECK(run({"compute", data("diag_pair.json"), "ed", "--m", "-1"}).code == kExitUsage);
  CHECK(run({"compute", data("missing.json"), "ed"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);

  const Run trace = run({"compute", data("corrupted_trace.json"), "ed", "--m", "1"});
  CHECK(trace.code == kExitUsage);
  CHECK(trace.err.find("rho") != std::string::npos);
  CHECK(trace.err.find("trace") != std::string::npos);
  const Run syntax = run({"compute", data("corrupted_syntax.json"), "ed", "--m", "1"});
  CHECK(syntax.code == kExitUsage);
  CHECK(syntax.err.find("line 4") != std::string::npos);

  // A rejected file stops verify before any suite runs.
  const Run v = run({"verify", data("corrupted_trace.json")});
  CHECK(v.code == kExitUsage);
  CHECK(v.out.find("PASS") == std::string::npos);
}

TEST_CASE("solver failures exit with one") {
  const Run r = run({"compute", data("ill_conditioned_pair.json"), "dmax", "--eps", "0.1"});
  CHECK(r.code == kExitFailure);
  CHECK(r.err.find("solver") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("sweeps") {
  const Run m = run({"sweep", data("diag_pair.json"), "-q", "ed", "-q", "scd", "--over", "m",
                     "--from", "0", "--to", "2", "--points", "5"});
  REQUIRE(m.code == kExitOk);
  const auto rows = csv(m.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][0] == "m");
  CHECK(rows[0][1] == "ed");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][1]) <= std::stod(rows[i - 1][1]) + 1e-8);  // ed
    CHECK(std::stod(rows[i][4]) >= std::stod(rows[i - 1][4]) - 1e-8);  // scd
  }

  const Run a = run({"sweep", data("diag_pair.json"), "--over", "alpha", "--from", "0.2", "--to",
                     "4", "--points", "6"});
  REQUIRE(a.code == kExitOk);
  const auto arows = csv(a.out);
  REQUIRE(arows.size() == 7);
  for (std::size_t i = 2; i < arows.size(); ++i)
    for (std::size_t c = 1; c < arows[i].size(); ++c)
      CHECK(std::stod(arows[i][c]) >= std::stod(arows[i - 1][c]) - 1e-12);

  const Run b = run({"sweep", data("diag_pair.json"), "--over", "m", "--values", "0,1", "--bounds"});
  REQUIRE(b.code == kExitOk);
  CHECK(csv(b.out)[0].back() == "bound_sd22");

  CHECK(run({"sweep", data("diag_pair.json"), "--over", "m", "--points", "0"}).code == kExitUsage);
  CHECK(run({"sweep", data("diag_pair.json"), "--over", "m", "--from", "0", "--to", "1",
             "--points", "20000"})
            .code == kExitUsage);
  CHECK(run({"sweep", data("diag_pair.json"), "--over", "m", "--values", "1", "-o",
             "/nonexistent/dir/out.csv"})
            .code != kExitOk);
}

TEST_CASE("CSV values round-trip through the printed digits") {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "asymdist_sweep_roundtrip.csv";
  const Run r = run({"sweep", data("diag_pair.json"), "--over", "m", "--from", "0", "--to", "3",
                     "--points", "7", "-o", path.string()});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::filesystem::remove(path);
  const auto rows = csv(text);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (const std::string& cell : rows[i]) CHECK(format_number(std::stod(cell)) == cell);
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(0.1 + 0.2) == "0.3");
}

TEST_CASE("runs are deterministic") {
  const std::vector<std::string> args = {"sweep", data("diag_pair.json"), "--over", "m",
                                         "--from", "0", "--to", "2", "--points", "4"};
  CHECK(run(args).out == run(args).out);
  const Run v1 = run({"verify", "random:3:2", "--channels", "1"});
  const Run v2 = run({"verify", "random:3:2", "--channels", "1"});
  CHECK(v1.code == kExitOk);
  CHECK(v1.out == v2.out);
  CHECK(v1.out.find("seed: 3") != std::string::npos);
}

TEST_CASE("verify on hand-made pairs") {
  const Run orth = run({"verify", data("near_orthogonal_pair.json")});
  CHECK(orth.code == kExitOk);
  CHECK(orth.out.find("FAIL") == std::string::npos);
  const Run diag = run({"verify", data("diag_pair.json")});
  CHECK(diag.code == kExitOk);
  CHECK(diag.out.find("PASS classical_fast_path") != std::string::npos);
  CHECK(run({"verify", "random:x"}).code == kExitUsage);
}

TEST_CASE("transform") {
  const Run same = run({"transform", data("diag_pair.json"), data("diag_pair.json")});
  REQUIRE(same.code == kExitOk);
  CHECK(field(same.out, "value") == "inf");
  const Run golden = run({"transform", data("diag_pair.json"), data("golden_target.json")});
  REQUIRE(golden.code == kExitOk);
  CHECK(std::stod(field(golden.out, "value")) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::stod(field(golden.out, "choi defect")) <= 1e-7);
}

TEST_CASE("pair files") {
  const StatePairFile f = load_pair_file(data("diag_pair.json"));
  CHECK(f.pair.dim() == 2);
  const StatePairFile back = parse_pair_file(format_pair_file(f));
  CHECK((back.pair.rho().matrix() - f.pair.rho().matrix()).norm() == 0.0);
  CHECK((back.pair.sigma().matrix() - f.pair.sigma().matrix()).norm() == 0.0);
  CHECK(back.rho_label == f.rho_label);

  // Flat and nested layouts.
  const StatePairFile flat = parse_pair_file(
      R"({"dimension": 2, "rho": [[0.5, 0], [0, 0.5], [0, -0.5], [0.5, 0]],
          "sigma": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]})");
  CHECK(flat.pair.rho().matrix()(0, 1).imag() == doctest::Approx(0.5));
  CHECK_FALSE(flat.rho_label.has_value());

  auto rejects = [](const std::string& text, const std::string& needle) {
    try {
      parse_pair_file(text);
    } catch (const PairFileError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  CHECK(rejects(R"({"dimension": 2, "rho": [[1, 0], [0, 0], [0, 0], [0, 0]]})", "missing field sigma"));
  CHECK(rejects(R"({"dimension": 2, "rho": [1, 0, 0, 0], "sigma": [1, 0, 0, 0]})", "rho[0][0]"));
  CHECK(rejects(R"({"dimension": 3, "rho": [[1, 0], [0, 0], [0, 0], [0, 0]],
                    "sigma": [[1, 0], [0, 0], [0, 0], [0, 0]]})",
                "3 rows"));
  CHECK(rejects(R"({"dimension": 2, "rho": [[1.5, 0], [0, 0], [0, 0], [-0.5, 0]],
                    "sigma": [[1, 0], [0, 0], [0, 0], [0, 0]]})",
                "rho"));
  CHECK(rejects(R"({"dimension": 2, "rho": [[1, 0], [0, 1], [0, 0], [0, 0]],
                    "sigma": [[1, 0], [0, 0], [0, 0], [0, 0]]})",
                "rho"));
  CHECK_THROWS_AS(load_pair_file(data("missing.json")), PairFileError);
}

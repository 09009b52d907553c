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

#include "asymdist/pair_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace asymdist {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw PairFileError(origin + ": " + what);
}

std::string at(const std::string& field, int r, int c) {
  return field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
}

Complex entry(const json& e, const std::string& where, const std::string& origin) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    fail(origin, "field " + where + ": expected a [re, im] pair of numbers");
  const Complex z(e[0].get<double>(), e[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(origin, "field " + where + ": entry is not finite");
  return z;
}

CMatrix read_matrix(const json& doc, const std::string& field, int d, const std::string& origin) {
  if (!doc.contains(field)) fail(origin, "missing field " + field);
  const json& v = doc.at(field);
  if (!v.is_array()) fail(origin, "field " + field + ": expected a list");
  CMatrix m(d, d);
  const auto dd = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  // Only d = 1 is ambiguous: [[re, im]] is flat, [[[re, im]]] nested.
  const bool flat = v.size() == dd && (d > 1 || (v[0].is_array() && v[0].size() == 2 &&
                                                 v[0][0].is_number()));
  if (flat) {
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m(r, c) = entry(v[r * d + c], at(field, r, c), origin);
    return m;
  }
  if (v.size() != static_cast<std::size_t>(d))
    fail(origin, "field " + field + ": expected " + std::to_string(d) + " rows or " +
                     std::to_string(dd) + " flat entries, got " + std::to_string(v.size()));
  for (int r = 0; r < d; ++r) {
    const json& row = v[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
      fail(origin, "field " + field + "[" + std::to_string(r) + "]: expected a row of " +
                       std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) m(r, c) = entry(row[c], at(field, r, c), origin);
  }
  return m;
}

DensityMatrix read_state(const json& doc, const std::string& field, int d,
                         const std::string& origin) {
  CMatrix m = read_matrix(doc, field, d, origin);
  try {
    return DensityMatrix(std::move(m));
  } catch (const InvalidInput& e) {
    fail(origin, "field " + field + " is not a density matrix: " + e.what());
  }
}

std::optional<std::string> read_label(const json& doc, const char* key, const std::string& origin) {
  if (!doc.contains("labels")) return std::nullopt;
  const json& labels = doc.at("labels");
  if (!labels.is_object()) fail(origin, "field labels: expected an object");
  if (!labels.contains(key)) return std::nullopt;
  if (!labels.at(key).is_string())
    fail(origin, std::string("field labels.") + key + ": expected a string");
  return labels.at(key).get<std::string>();
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

StatePairFile parse_pair_file(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    const std::size_t pos = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n');
    fail(origin, "line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");
  if (!doc.contains("dimension")) fail(origin, "missing field dimension");
  const json& dim = doc.at("dimension");
  if (!dim.is_number_integer() || dim.get<long>() < 1 || dim.get<long>() > kMaxDenseDim)
    fail(origin, "field dimension: expected an integer in [1, " + std::to_string(kMaxDenseDim) + "]");
  const int d = dim.get<int>();
  DensityMatrix rho = read_state(doc, "rho", d, origin);
  DensityMatrix sigma = read_state(doc, "sigma", d, origin);
  return {StatePair(std::move(rho), std::move(sigma)), read_label(doc, "rho", origin),
          read_label(doc, "sigma", origin)};
}

StatePairFile load_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PairFileError(path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pair_file(buf.str(), path);
}

std::string format_pair_file(const StatePairFile& file) {
  json doc;
  doc["dimension"] = file.pair.dim();
  doc["rho"] = matrix_json(file.pair.rho().matrix());
  doc["sigma"] = matrix_json(file.pair.sigma().matrix());
  if (file.rho_label || file.sigma_label) {
    doc["labels"] = json::object();
    if (file.rho_label) doc["labels"]["rho"] = *file.rho_label;
    if (file.sigma_label) doc["labels"]["sigma"] = *file.sigma_label;
  }
  return doc.dump(2) + "\n";
}

void save_pair_file(const StatePairFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw PairFileError(path + ": cannot open for writing");
  out << format_pair_file(file);
  if (!out) throw PairFileError(path + ": write failed");
}

}  // namespace asymdist

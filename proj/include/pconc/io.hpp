// Copyright 2026 The pconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file io.hpp
 * JSON encodings of states, tomography records, witness reports and budgets.
 *
 * Complex numbers are [re, im] pairs. State files:
 *   {"type": "ket"|"density", "dimA": int, "dimB": int, "data": ...}
 * with a flat amplitude array for kets and nested rows for density matrices.
 */
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"
#include "pconc/error.hpp"
#include "pconc/measures.hpp"
#include "pconc/states.hpp"
#include "pconc/tomography.hpp"
#include "pconc/witness.hpp"

namespace pconc::io {

using json = nlohmann::json;

/// Parse failure or schema violation in an input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

using State = std::variant<BipartiteKet, DensityMatrix>;

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("expected a complex number as [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json vector_to_json(const CVector& v) {
  json a = json::array();
  for (const auto& z : v.entries()) a.push_back(complex_to_json(z));
  return a;
}

inline CVector vector_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array of [re, im] pairs");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from_json(j[i]);
  return v;
}

inline json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw FormatError("expected a nested array matrix");
  CMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols()) throw FormatError("matrix rows have unequal length");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

namespace detail {

template <typename T>
T required(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type: " + e.what());
  }
}

inline Dims dims_from(const json& j) {
  const auto da = required<long long>(j, "dimA");
  const auto db = required<long long>(j, "dimB");
  if (da <= 0 || db <= 0) throw FormatError("dimA and dimB must be positive");
  return {static_cast<std::size_t>(da), static_cast<std::size_t>(db)};
}

}  // namespace detail

inline json to_json(const BipartiteKet& k) {
  return {{"type", "ket"}, {"dimA", k.dims().dim_a}, {"dimB", k.dims().dim_b}, {"data", vector_to_json(k.amplitudes())}};
}

inline json to_json(const DensityMatrix& rho) {
  return {{"type", "density"},
          {"dimA", rho.dims().dim_a},
          {"dimB", rho.dims().dim_b},
          {"data", matrix_to_json(rho.matrix())}};
}

inline json to_json(const State& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

inline State state_from_json(const json& j) {
  const auto type = detail::required<std::string>(j, "type");
  const Dims dims = detail::dims_from(j);
  if (!j.contains("data")) throw FormatError("missing field \"data\"");
  if (type == "ket") return BipartiteKet(dims, vector_from_json(j["data"]));
  if (type == "density") return validate_density(matrix_from_json(j["data"]), dims);
  throw FormatError("unknown state type \"" + type + "\" (expected \"ket\" or \"density\")");
}

inline DensityMatrix as_density(const State& s) {
  if (const auto* k = std::get_if<BipartiteKet>(&s)) return density_from_ket(*k);
  return std::get<DensityMatrix>(s);
}

inline json to_json(const TomographyRecord& rec) {
  json settings = json::array();
  for (const auto& s : rec.settings)
    settings.push_back(
        {{"a", vector_to_json(s.arm_a)}, {"b", vector_to_json(s.arm_b)}, {"label_a", s.label_a}, {"label_b", s.label_b}});
  return {{"dimA", rec.dims.dim_a},
          {"dimB", rec.dims.dim_b},
          {"rate_hz", rec.rate_hz},
          {"integration_time_s", rec.integration_time_s},
          {"seed", rec.seed ? json(*rec.seed) : json(nullptr)},
          {"settings", std::move(settings)},
          {"counts", rec.counts}};
}

inline TomographyRecord record_from_json(const json& j) {
  TomographyRecord rec;
  rec.dims = detail::dims_from(j);
  rec.rate_hz = detail::required<double>(j, "rate_hz");
  rec.integration_time_s = detail::required<double>(j, "integration_time_s");
  if (j.contains("seed") && !j["seed"].is_null()) rec.seed = detail::required<std::uint64_t>(j, "seed");
  if (!j.contains("settings") || !j["settings"].is_array()) throw FormatError("missing array field \"settings\"");
  for (const auto& s : j["settings"]) {
    ProjectorSetting ps{vector_from_json(detail::required<json>(s, "a")), vector_from_json(detail::required<json>(s, "b")),
                        s.value("label_a", std::string{}), s.value("label_b", std::string{})};
    rec.settings.push_back(std::move(ps));
  }
  rec.counts = detail::required<std::vector<std::uint64_t>>(j, "counts");
  rec.check();
  return rec;
}

inline json to_json(const WitnessReport& r) {
  json pairing = json::array();
  for (const auto& m : r.pairing.matches()) pairing.push_back({m.a.lo, m.a.hi, m.b.lo, m.b.hi});
  json subspaces = json::array();
  for (const auto& row : r.rows)
    subspaces.push_back({{"a", {row.a.lo, row.a.hi}},
                         {"b", {row.b.lo, row.b.hi}},
                         {"concurrence", row.concurrence},
                         {"fidelity", row.fidelity},
                         {"weight", row.weight}});
  return {{"pconcurrence", r.pconcurrence},
          {"search_mode", std::string(to_string(r.mode))},
          {"pairing", std::move(pairing)},
          {"subspaces", std::move(subspaces)},
          {"fidelity_target", r.fidelity_target}};
}

inline json to_json(const Budget& b) {
  return {{"d", b.d},
          {"k", b.k},
          {"pconc_measurements", b.pconc_measurements},
          {"qst_measurements", b.qst_measurements},
          {"pconc_time_s", b.pconc_time_s},
          {"qst_time_s", b.qst_time_s}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": invalid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("write failed for " + path);
}

inline void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace pconc::io

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
 * @file figures.hpp
 * Plot-ready data for the SPDC qutrit family: the (alpha, beta) surface of the
 * P-concurrence, normalized entropy of entanglement and normalized
 * I-concurrence, and the beta = 1 path from an embedded Bell state to the
 * maximally entangled qutrit.
 */
#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "pconc/error.hpp"
#include "pconc/measures.hpp"
#include "pconc/states.hpp"
#include "pconc/witness.hpp"

namespace pconc {

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  double pconcurrence = 0.0;
  double eof_normalized = 0.0;
  double iconcurrence_normalized = 0.0;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline constexpr const char* kSweepCsvHeader = "alpha,beta,pconcurrence,eof_norm,iconcurrence_norm";

inline SweepRow evaluate_qutrit(double alpha, double beta) {
  const BipartiteKet ket = make_spdc_qutrit({alpha, beta});
  const DensityMatrix rho = density_from_ket(ket);
  SweepRow row{alpha, beta, 0.0, 0.0, 0.0};
  row.pconcurrence = pconcurrence_known(rho, SubspacePairing::identity(3)).pconcurrence;
  row.eof_normalized = normalize_measure(eof_pure(rho), MeasureName::eof, 3);
  row.iconcurrence_normalized = normalize_measure(i_concurrence(ket), MeasureName::i_concurrence, 3);
  return row;
}

inline double grid_point(std::size_t i, std::size_t grid_n) {
  return static_cast<double>(i) / static_cast<double>(grid_n);
}

/// (grid_n + 1)^2 rows ordered by (alpha, beta).
inline std::vector<SweepRow> qutrit_sweep(std::size_t grid_n) {
  if (grid_n < 2) throw DomainError("sweep: grid_n must be >= 2");
  std::vector<SweepRow> rows;
  rows.reserve((grid_n + 1) * (grid_n + 1));
  for (std::size_t i = 0; i <= grid_n; ++i)
    for (std::size_t j = 0; j <= grid_n; ++j) rows.push_back(evaluate_qutrit(grid_point(i, grid_n), grid_point(j, grid_n)));
  return rows;
}

/// alpha from 0 to 1 with beta = 1.
inline std::vector<SweepRow> qutrit_alpha_path(std::size_t grid_n) {
  if (grid_n < 2) throw DomainError("path: grid_n must be >= 2");
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i <= grid_n; ++i) rows.push_back(evaluate_qutrit(grid_point(i, grid_n), 1.0));
  return rows;
}

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows)
    os << format_double(r.alpha) << ',' << format_double(r.beta) << ',' << format_double(r.pconcurrence) << ','
       << format_double(r.eof_normalized) << ',' << format_double(r.iconcurrence_normalized) << '\n';
  return os.str();
}

inline std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) throw DomainError("sweep CSV: unexpected header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[5];
    std::size_t pos = 0;
    for (int k = 0; k < 5; ++k) {
      const std::size_t end = k < 4 ? line.find(',', pos) : line.size();
      if (end == std::string::npos) throw DomainError("sweep CSV: short row: " + line);
      const std::string field = line.substr(pos, end - pos);
      std::size_t used = 0;
      v[k] = std::stod(field, &used);
      if (used != field.size()) throw DomainError("sweep CSV: bad number '" + field + "'");
      pos = end + 1;
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4]});
  }
  return rows;
}

}  // namespace pconc

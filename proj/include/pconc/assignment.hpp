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

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "pconc/error.hpp"

namespace pconc {

/// Square cost matrix; +infinity marks a forbidden edge.
using CostMatrix = std::vector<std::vector<double>>;

/**
 * Minimum-cost perfect matching on a square cost matrix (Hungarian method with
 * row/column potentials, O(n^3)).
 *
 * Returns assignment[row] = column, or nullopt when every perfect matching uses
 * a forbidden edge.
 */
inline std::optional<std::vector<std::size_t>> solve_assignment(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  for (const auto& row : cost)
    if (row.size() != n) throw DimensionError("solve_assignment: cost matrix must be square");
  if (n == 0) return std::vector<std::size_t>{};

  // Forbidden edges get a cost larger than any matching made of allowed edges,
  // so the optimum uses one only when no allowed perfect matching exists.
  double span = 0.0;
  for (const auto& row : cost)
    for (double c : row)
      if (std::isfinite(c)) span = std::max(span, std::abs(c));
  const double big = (span + 1.0) * static_cast<double>(n + 1) * 4.0;

  auto at = [&](std::size_t i, std::size_t j) {
    const double c = cost[i][j];
    return std::isfinite(c) ? c : big;
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based: u/v are potentials, match_col[j] is the row matched to column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match_col(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match_col[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[match_col[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(cost[i][assignment[i]])) return std::nullopt;
  return assignment;
}

}  // namespace pconc

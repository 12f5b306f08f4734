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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "pconc/assignment.hpp"

using namespace pconc;

namespace {

constexpr double kForbidden = std::numeric_limits<double>::infinity();

double brute_force_min(const CostMatrix& c) {
  std::vector<std::size_t> p(c.size());
  std::iota(p.begin(), p.end(), std::size_t{0});
  double best = kForbidden;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += c[i][p[i]];
    best = std::min(best, s);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

double cost_of(const CostMatrix& c, const std::vector<std::size_t>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += c[i][a[i]];
  return s;
}

}  // namespace

TEST_CASE("solve_assignment finds the textbook optimum", "[assignment]") {
  const CostMatrix c{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  const auto a = solve_assignment(c);
  REQUIRE(a);
  CHECK(cost_of(c, *a) == 5.0);
  CHECK(*a == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("solve_assignment agrees with enumeration", "[assignment][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 10.0);
  std::bernoulli_distribution forbid(0.25);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 6;
    CostMatrix c(n, std::vector<double>(n));
    for (auto& row : c)
      for (auto& x : row) x = forbid(rng) ? kForbidden : u(rng);
    const double best = brute_force_min(c);
    const auto a = solve_assignment(c);
    if (std::isinf(best)) {
      CHECK_FALSE(a);
    } else {
      REQUIRE(a);
      CHECK(std::abs(cost_of(c, *a) - best) < 1e-9);
    }
  }
}

TEST_CASE("solve_assignment edge cases", "[assignment]") {
  CHECK(solve_assignment({})->empty());
  CHECK_FALSE(solve_assignment({{kForbidden}}));
  CHECK_THROWS_AS(solve_assignment({{1.0, 2.0}}), DimensionError);
}

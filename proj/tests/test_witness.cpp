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
#include <numeric>

#include "pconc/witness.hpp"
#include "test_support.hpp"

using namespace pconc;
using namespace pconc::testing;
using Catch::Approx;

namespace {

// Closed forms for the SPDC qutrit, obtained from the normalized two-term kets
// that survive each projection: c1 |ll> + c2 |hh> has concurrence 2 c1 c2/(c1^2 + c2^2).
double c_plus(double a) { return 2.0 * a / (1.0 + a * a); }                      // {+1,0}: 1 and alpha
double c_outer(double a, double b) { return a * b == 0.0 ? 0.0 : 2.0 * a * b / (a * a + b * b); }  // {+1,-1}
double c_minus(double b) { return 2.0 * b / (1.0 + b * b); }                     // {0,-1}: 1 and beta

DensityMatrix qutrit(double a, double b) { return density_from_ket(make_spdc_qutrit({a, b})); }

DensityMatrix permute_sides(const DensityMatrix& rho, const std::vector<std::size_t>& pa,
                            const std::vector<std::size_t>& pb) {
  return conjugate_by(rho, tensor_product(permutation_matrix(pa), permutation_matrix(pb)));
}

std::vector<std::size_t> random_permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng());
  return p;
}

}  // namespace

TEST_CASE("count_subspaces", "[witness]") {
  CHECK(count_subspaces(2) == 1);
  CHECK(count_subspaces(3) == 3);
  CHECK(count_subspaces(4) == 6);
  CHECK(count_subspaces(8) == 28);  // 36 K = 1008
  CHECK_THROWS_AS(count_subspaces(1), DomainError);
}

TEST_CASE("enumerate_pairs", "[witness]") {
  const auto p3 = enumerate_pairs(3);
  CHECK(p3 == std::vector<IndexPair>{{0, 1}, {0, 2}, {1, 2}});
  for (std::size_t d = 2; d <= 8; ++d) {
    const auto p = enumerate_pairs(d);
    CHECK(p.size() == count_subspaces(d));
    CHECK(std::is_sorted(p.begin(), p.end()));
  }
}

TEST_CASE("project_subspace", "[witness]") {
  SECTION("pure projection matches the renormalized amplitude restriction") {
    // A {+1, 0} x B {-1, 0} keeps |0,0> + 0.5 |1,-1>.
    const auto proj = project_subspace(qutrit(0.5, 0.7), {0, 1}, {0, 1});
    const double n2 = 1.0 + 0.25 + 0.49;
    CHECK(proj.weight == Approx(1.25 / n2));
    CHECK(purity(proj.state) == Approx(1.0));
    const BipartiteKet expected = BipartiteKet::normalized({2, 2}, CVector{0.5, 0.0, 0.0, 1.0});
    CHECK(fidelity_to_ket(proj.state, expected) == Approx(1.0));
    CHECK(wootters_concurrence(proj.state) == Approx(0.8).margin(1e-12));
  }
  SECTION("maximally entangled qutrit gives a Bell pair with weight 2/3 on any matched pair") {
    for (const auto& p : enumerate_pairs(3)) {
      const auto proj = project_subspace(density_from_ket(make_max_entangled(3)), p, p);
      CHECK(proj.weight == Approx(2.0 / 3.0));
      CHECK(fidelity_to_ket(proj.state, subspace_bell_state()) == Approx(1.0));
    }
  }
  SECTION("product state keeps weight 1 and concurrence 0") {
    const auto proj = project_subspace(qutrit(0.0, 0.0), {0, 1}, {1, 2});
    CHECK(proj.weight == Approx(1.0));
    CHECK(wootters_concurrence(proj.state) == 0.0);
  }
  SECTION("no support is an error, and evaluate_subspace reports concurrence 0") {
    CHECK_THROWS_AS(project_subspace(qutrit(0.0, 0.0), {0, 2}, {0, 2}), DomainError);
    const SubspaceEvaluation ev = evaluate_subspace(qutrit(0.0, 0.0), {0, 2}, {0, 2});
    CHECK(ev.concurrence == 0.0);
    CHECK(ev.weight == 0.0);
  }
  SECTION("out-of-range pairs are rejected") {
    CHECK_THROWS_AS(project_subspace(qutrit(0.5, 0.5), {1, 3}, {0, 1}), DomainError);
    CHECK_THROWS_AS(project_subspace(qutrit(0.5, 0.5), {1, 1}, {0, 1}), DomainError);
  }
  SECTION("mixed input stays a valid density matrix") {
    const DensityMatrix rho = validate_density(random_density_matrix(9), {3, 3});
    const auto proj = project_subspace(rho, {0, 2}, {1, 2});
    CHECK(std::abs(proj.state.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(hermitian_eig(proj.state.matrix()).values.back() > -1e-12);
  }
}

TEST_CASE("SubspacePairing validates the bijection", "[witness]") {
  CHECK_NOTHROW(SubspacePairing::identity(4));
  CHECK_THROWS_AS(SubspacePairing(3, {{{0, 1}, {0, 1}}, {{0, 2}, {0, 1}}, {{1, 2}, {1, 2}}}), DomainError);
  CHECK_THROWS_AS(SubspacePairing(3, {{{0, 1}, {0, 1}}}), DomainError);
  CHECK_THROWS_AS(SubspacePairing::from_permutation(3, {0, 0, 1}), DomainError);
}

TEST_CASE("pconcurrence_known on the SPDC qutrit", "[witness]") {
  const SubspacePairing id = SubspacePairing::identity(3);

  SECTION("maximally entangled qutrit") {
    const WitnessReport r = pconcurrence_known(qutrit(1.0, 1.0), id);
    CHECK(r.pconcurrence == Approx(1.0).margin(1e-9));
    for (const auto& row : r.rows) {
      CHECK(row.fidelity == Approx(1.0));
      CHECK(row.weight == Approx(2.0 / 3.0));
    }
  }
  SECTION("alpha = beta = 0.5: rows (0.8, 1.0, 0.8), P = 0.64") {
    const WitnessReport r = pconcurrence_known(qutrit(0.5, 0.5), id);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].concurrence == Approx(0.8).margin(1e-12));
    CHECK(r.rows[1].concurrence == Approx(1.0).margin(1e-12));
    CHECK(r.rows[2].concurrence == Approx(0.8).margin(1e-12));
    CHECK(r.pconcurrence == Approx(0.64).margin(1e-9));
    CHECK(r.mode == SearchMode::known);
  }
  SECTION("embedded Bell pair (alpha = 1, beta = 0) is not qutrit-entangled") {
    CHECK(pconcurrence_known(qutrit(1.0, 0.0), id).pconcurrence == 0.0);
  }
  SECTION("closed forms across a grid") {
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) {
        const double a = i / 10.0, b = j / 10.0;
        const WitnessReport r = pconcurrence_known(qutrit(a, b), id);
        CHECK(r.rows[0].concurrence == Approx(c_plus(a)).margin(1e-10));
        CHECK(r.rows[1].concurrence == Approx(c_outer(a, b)).margin(1e-10));
        CHECK(r.rows[2].concurrence == Approx(c_minus(b)).margin(1e-10));
        CHECK(r.pconcurrence == Approx(c_plus(a) * c_outer(a, b) * c_minus(b)).margin(1e-10));
      }
  }
  SECTION("wrong pairing dimension or non-square state") {
    CHECK_THROWS_AS(pconcurrence_known(qutrit(0.5, 0.5), SubspacePairing::identity(4)), DomainError);
    CHECK_THROWS_AS(pconcurrence_known(density_from_ket(random_ket({2, 3})), SubspacePairing::identity(2)),
                    DimensionError);
  }
}

TEST_CASE("product of reported subspace concurrences", "[witness]") {
  const double product = 0.92 * 0.93 * 0.93;
  CHECK(product == Approx(0.795708).margin(1e-6));
  CHECK(std::abs(product - 0.80) <= 0.01);
}

TEST_CASE("dimension witness on the SPDC qutrit family", "[witness][property]") {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double a = i / 20.0, b = j / 20.0;
      const double p = pconcurrence_known(qutrit(a, b), SubspacePairing::identity(3)).pconcurrence;
      if (a * b == 0.0)
        CHECK(p <= 1e-12);
      else
        CHECK(p > 0.0);
    }
}

TEST_CASE("P-concurrence bounds", "[witness][property]") {
  for (int t = 0; t < 30; ++t) {
    const DensityMatrix rho = t % 2 ? density_from_ket(random_ket({3, 3}))
                                    : validate_density(random_density_matrix(9), {3, 3});
    const WitnessReport r = pconcurrence_known(rho, SubspacePairing::identity(3));
    double smallest = 1.0;
    for (const auto& row : r.rows) smallest = std::min(smallest, row.concurrence);
    CHECK(r.pconcurrence >= 0.0);
    CHECK(r.pconcurrence <= smallest + 1e-15);
    CHECK(smallest <= 1.0);
  }
}

TEST_CASE("maximally entangled qudits have P = 1", "[witness]") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const WitnessReport r = pconcurrence_known(density_from_ket(make_max_entangled(d)), SubspacePairing::identity(d));
    for (const auto& row : r.rows) CHECK(row.concurrence == Approx(1.0).margin(1e-9));
    CHECK(r.pconcurrence == Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("pconcurrence_search", "[witness]") {
  SECTION("identity pairing is optimal for the SPDC ordering") {
    for (double a : {0.2, 0.5, 0.9, 1.0})
      for (double b : {0.3, 0.7, 1.0}) {
        const DensityMatrix rho = qutrit(a, b);
        const WitnessReport s = pconcurrence_search(rho, SearchRequest::brute_force);
        const WitnessReport k = pconcurrence_known(rho, SubspacePairing::identity(3));
        CHECK(s.pconcurrence == Approx(k.pconcurrence).margin(1e-12));
        CHECK(s.mode == SearchMode::brute_force);
      }
  }
  SECTION("a relabelled side B is found by the search but not by the identity pairing") {
    const DensityMatrix rho = permute_sides(density_from_ket(make_max_entangled(3)), {0, 1, 2}, {1, 2, 0});
    CHECK(pconcurrence_search(rho).pconcurrence == Approx(1.0).margin(1e-9));
    CHECK(pconcurrence_search(rho, SearchRequest::assignment).pconcurrence == Approx(1.0).margin(1e-9));
    CHECK(pconcurrence_known(rho, SubspacePairing::identity(3)).pconcurrence < 0.5);
  }
  SECTION("maximally mixed state") {
    const DensityMatrix mixed = validate_density(CMatrix::identity(9) * (1.0 / 9.0), {3, 3});
    CHECK(pconcurrence_search(mixed).pconcurrence == 0.0);
    CHECK(pconcurrence_search(mixed, SearchRequest::assignment).pconcurrence == 0.0);
  }
  SECTION("automatic mode switches to assignment above K = 8") {
    CHECK(pconcurrence_search(density_from_ket(make_max_entangled(4))).mode == SearchMode::brute_force);
    const WitnessReport r5 = pconcurrence_search(density_from_ket(make_max_entangled(5)));
    CHECK(r5.mode == SearchMode::assignment);
    CHECK(r5.pconcurrence == Approx(1.0).margin(1e-9));
    CHECK(r5.pairing == SubspacePairing::identity(5));
  }
}

TEST_CASE("assignment search equals brute force on random pure states", "[witness][property]") {
  for (std::size_t d : {3, 4})
    for (int t = 0; t < 50; ++t) {
      const DensityMatrix rho = density_from_ket(random_ket({d, d}));
      const WitnessReport bf = pconcurrence_search(rho, SearchRequest::brute_force);
      const WitnessReport as = pconcurrence_search(rho, SearchRequest::assignment);
      CHECK(std::abs(bf.pconcurrence - as.pconcurrence) < 1e-9);
    }
}

TEST_CASE("search dominates every fixed pairing", "[witness][property]") {
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho = density_from_ket(random_ket({3, 3}));
    const double best = pconcurrence_search(rho).pconcurrence;
    std::vector<std::size_t> perm{0, 1, 2};
    do {
      const double fixed = pconcurrence_known(rho, SubspacePairing::from_permutation(3, perm)).pconcurrence;
      CHECK(best >= fixed - 1e-9);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("search is invariant under local basis permutations", "[witness][property]") {
  for (std::size_t d : {3, 4})
    for (int t = 0; t < 10; ++t) {
      const DensityMatrix rho = density_from_ket(random_ket({d, d}));
      const DensityMatrix moved = permute_sides(rho, random_permutation(d), random_permutation(d));
      CHECK(std::abs(pconcurrence_search(moved).pconcurrence - pconcurrence_search(rho).pconcurrence) < 1e-8);
    }
}

TEST_CASE("report product matches its rows", "[witness]") {
  const WitnessReport r = pconcurrence_search(density_from_ket(random_ket({4, 4})));
  double p = 1.0;
  for (const auto& row : r.rows) p *= row.concurrence;
  CHECK(std::abs(p - r.pconcurrence) < 1e-9);
}

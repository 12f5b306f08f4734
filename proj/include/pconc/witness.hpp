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
 * @file witness.hpp
 * The P-concurrence: the product of two-qubit concurrences over the
 * K = d(d-1)/2 qubit subspaces {lo,hi}_A (x) {lo,hi}_B of a d x d state.
 *
 * A "pairing" matches every side-A index pair with exactly one side-B index
 * pair. With a known (correlation-preserving) pairing the measure is a plain
 * product; otherwise it is maximized over all K! pairings. The product is
 * separable over the matching, so maximizing sum log C over bijections is a
 * linear assignment problem; brute-force enumeration is kept as the oracle for
 * small K.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pconc/assignment.hpp"
#include "pconc/error.hpp"
#include "pconc/measures.hpp"
#include "pconc/qmath.hpp"
#include "pconc/states.hpp"

namespace pconc {

/// Two distinct basis indices of one side, lo < hi.
struct IndexPair {
  std::size_t lo = 0;
  std::size_t hi = 1;

  void check(std::size_t d) const {
    if (!(lo < hi && hi < d))
      throw DomainError("index pair {" + std::to_string(lo) + "," + std::to_string(hi) +
                        "} is not a strictly ordered pair below d=" + std::to_string(d));
  }
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

struct SubspaceMatch {
  IndexPair a;
  IndexPair b;
  friend bool operator==(const SubspaceMatch&, const SubspaceMatch&) = default;
};

inline std::size_t count_subspaces(std::size_t d) {
  if (d < 2) throw DomainError("count_subspaces: d must be >= 2, got " + std::to_string(d));
  return d * (d - 1) / 2;
}

/// All index pairs lo < hi, lexicographic.
inline std::vector<IndexPair> enumerate_pairs(std::size_t d) {
  std::vector<IndexPair> out;
  out.reserve(count_subspaces(d));
  for (std::size_t lo = 0; lo < d; ++lo)
    for (std::size_t hi = lo + 1; hi < d; ++hi) out.push_back({lo, hi});
  return out;
}

/// A bijection between the K side-A pairs and the K side-B pairs.
class SubspacePairing {
 public:
  SubspacePairing() = default;

  /// Validates that the matches form a bijection for dimension d.
  SubspacePairing(std::size_t d, std::vector<SubspaceMatch> matches) : d_(d), matches_(std::move(matches)) {
    const std::size_t k = count_subspaces(d);
    if (matches_.size() != k)
      throw DomainError("pairing has " + std::to_string(matches_.size()) + " entries, expected K=" + std::to_string(k));
    std::vector<IndexPair> as, bs;
    for (const auto& m : matches_) {
      m.a.check(d);
      m.b.check(d);
      as.push_back(m.a);
      bs.push_back(m.b);
    }
    std::sort(as.begin(), as.end());
    std::sort(bs.begin(), bs.end());
    const auto all = enumerate_pairs(d);
    if (as != all || bs != all) throw DomainError("pairing is not a bijection between side-A and side-B pairs");
  }

  /// Matches A-pair i with B-pair i (the SPDC basis ordering).
  static SubspacePairing identity(std::size_t d) {
    std::vector<SubspaceMatch> m;
    for (const auto& p : enumerate_pairs(d)) m.push_back({p, p});
    return SubspacePairing(d, std::move(m));
  }

  /// A-pair i (lexicographic) matched to B-pair perm[i].
  static SubspacePairing from_permutation(std::size_t d, const std::vector<std::size_t>& perm) {
    const auto pairs = enumerate_pairs(d);
    if (perm.size() != pairs.size()) throw DomainError("pairing permutation has the wrong length");
    std::vector<SubspaceMatch> m;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (perm[i] >= pairs.size()) throw DomainError("pairing permutation index out of range");
      m.push_back({pairs[i], pairs[perm[i]]});
    }
    return SubspacePairing(d, std::move(m));
  }

  std::size_t dim() const { return d_; }
  const std::vector<SubspaceMatch>& matches() const { return matches_; }
  friend bool operator==(const SubspacePairing&, const SubspacePairing&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<SubspaceMatch> matches_;
};

enum class SearchMode { known, brute_force, assignment };
enum class SearchRequest { brute_force, assignment, automatic };

inline std::string_view to_string(SearchMode m) {
  switch (m) {
    case SearchMode::known: return "known";
    case SearchMode::brute_force: return "brute_force";
    case SearchMode::assignment: return "assignment";
  }
  return "unknown";
}

/// Concurrence and fidelity of one qubit subspace; weight is Tr(B rho B†).
struct SubspaceEvaluation {
  double concurrence = 0.0;
  double fidelity = 0.0;
  double weight = 0.0;
};

struct SubspaceRow {
  IndexPair a;
  IndexPair b;
  double concurrence = 0.0;
  double fidelity = 0.0;
  double weight = 0.0;
};

struct WitnessReport {
  std::vector<SubspaceRow> rows;
  double pconcurrence = 0.0;
  SubspacePairing pairing;
  SearchMode mode = SearchMode::known;
  /// Target of the fidelity column.
  std::string fidelity_target = "subspace Bell state (|00>+|11>)/sqrt(2), lo->0 hi->1";
};

inline constexpr double kMinSubspaceWeight = 1e-12;

struct SubspaceProjection {
  DensityMatrix state;
  double weight;
};

/// rho_k = B rho B† / Tr(B rho B†) with B = P_a (x) P_b selecting two basis rows per side.
inline SubspaceProjection project_subspace(const DensityMatrix& rho, IndexPair a, IndexPair b) {
  const Dims dims = rho.dims();
  a.check(dims.dim_a);
  b.check(dims.dim_b);
  const std::size_t ia[2] = {a.lo, a.hi};
  const std::size_t ib[2] = {b.lo, b.hi};
  const CMatrix& m = rho.matrix();
  CMatrix raw(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      const std::size_t row = ia[r / 2] * dims.dim_b + ib[r % 2];
      const std::size_t col = ia[c / 2] * dims.dim_b + ib[c % 2];
      raw(r, c) = m(row, col);
    }
  const double weight = raw.trace().real();
  if (!(weight >= kMinSubspaceWeight)) {
    std::ostringstream os;
    os << "project_subspace: state has no support on {" << a.lo << "," << a.hi << "}_A x {" << b.lo << "," << b.hi
       << "}_B (weight " << weight << ")";
    throw DomainError(os.str());
  }
  raw *= 1.0 / weight;
  return {DensityMatrix::trusted({2, 2}, std::move(raw)), weight};
}

/// (|00> + |11>)/sqrt(2) in subspace coordinates.
inline BipartiteKet subspace_bell_state() {
  const double c = 1.0 / std::sqrt(2.0);
  return BipartiteKet({2, 2}, CVector{c, 0.0, 0.0, c});
}

/// Concurrence and fidelity of one projected subspace; zero support counts as concurrence 0.
inline SubspaceEvaluation evaluate_subspace(const DensityMatrix& rho, IndexPair a, IndexPair b) {
  a.check(rho.dims().dim_a);
  b.check(rho.dims().dim_b);
  SubspaceEvaluation ev;
  try {
    const SubspaceProjection p = project_subspace(rho, a, b);
    ev.weight = p.weight;
    ev.concurrence = wootters_concurrence(p.state);
    ev.fidelity = fidelity_to_ket(p.state, subspace_bell_state());
  } catch (const DomainError&) {
    ev = {};
  }
  return ev;
}

namespace detail {

inline std::size_t square_dim(Dims dims) {
  if (dims.dim_a != dims.dim_b)
    throw DimensionError("P-concurrence needs dimA == dimB, got " + std::to_string(dims.dim_a) + " and " +
                         std::to_string(dims.dim_b));
  if (dims.dim_a < 2) throw DimensionError("P-concurrence needs d >= 2");
  return dims.dim_a;
}

inline WitnessReport assemble(std::vector<SubspaceRow> rows, SubspacePairing pairing, SearchMode mode) {
  WitnessReport r;
  r.pconcurrence = 1.0;
  for (const auto& row : rows) r.pconcurrence *= row.concurrence;
  r.rows = std::move(rows);
  r.pairing = std::move(pairing);
  r.mode = mode;
  return r;
}

}  // namespace detail

/**
 * P-concurrence for a fixed pairing, with subspace values supplied by `eval`
 * (callable as eval(IndexPair a, IndexPair b) -> SubspaceEvaluation).
 */
template <typename Evaluator>
WitnessReport pconcurrence_known_with(Evaluator&& eval, const SubspacePairing& pairing) {
  std::vector<SubspaceRow> rows;
  for (const auto& m : pairing.matches()) {
    const SubspaceEvaluation ev = eval(m.a, m.b);
    rows.push_back({m.a, m.b, ev.concurrence, ev.fidelity, ev.weight});
  }
  return detail::assemble(std::move(rows), pairing, SearchMode::known);
}

inline WitnessReport pconcurrence_known(const DensityMatrix& rho, const SubspacePairing& pairing) {
  const std::size_t d = detail::square_dim(rho.dims());
  if (pairing.dim() != d)
    throw DomainError("pairing is for d=" + std::to_string(pairing.dim()) + " but the state has d=" + std::to_string(d));
  return pconcurrence_known_with([&](IndexPair a, IndexPair b) { return evaluate_subspace(rho, a, b); }, pairing);
}

/// Brute force is used for K <= 8 when the mode is automatic.
inline constexpr std::size_t kBruteForceMaxK = 8;

/// Permutation maximizing prod_i m[i][perm[i]] by enumerating all K! bijections.
inline std::vector<std::size_t> best_permutation_brute_force(const std::vector<std::vector<double>>& m) {
  const std::size_t k = m.size();
  std::vector<std::size_t> perm(k), best(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  best = perm;
  double best_value = -1.0;
  do {
    double v = 1.0;
    for (std::size_t i = 0; i < k; ++i) v *= m[i][perm[i]];
    if (v > best_value) {
      best_value = v;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Permutation maximizing sum_i log m[i][perm[i]]; zero entries are forbidden edges.
/// Falls back to the identity when no zero-free bijection exists (the product is then 0 for every bijection).
inline std::vector<std::size_t> best_permutation_assignment(const std::vector<std::vector<double>>& m) {
  const std::size_t k = m.size();
  CostMatrix cost(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      cost[i][j] = m[i][j] > 0.0 ? -std::log(m[i][j]) : std::numeric_limits<double>::infinity();
  if (auto a = solve_assignment(cost)) return *a;
  std::vector<std::size_t> id(k);
  std::iota(id.begin(), id.end(), std::size_t{0});
  return id;
}

/// Max over all K! pairings, subspace values supplied by `eval`.
template <typename Evaluator>
WitnessReport pconcurrence_search_with(Evaluator&& eval, std::size_t d, SearchRequest request) {
  const auto pairs = enumerate_pairs(d);
  const std::size_t k = pairs.size();
  std::vector<std::vector<SubspaceEvaluation>> grid(k, std::vector<SubspaceEvaluation>(k));
  std::vector<std::vector<double>> conc(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      grid[i][j] = eval(pairs[i], pairs[j]);
      conc[i][j] = grid[i][j].concurrence;
    }

  SearchMode mode = SearchMode::assignment;
  if (request == SearchRequest::brute_force || (request == SearchRequest::automatic && k <= kBruteForceMaxK))
    mode = SearchMode::brute_force;
  const std::vector<std::size_t> perm =
      mode == SearchMode::brute_force ? best_permutation_brute_force(conc) : best_permutation_assignment(conc);

  std::vector<SubspaceRow> rows;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& ev = grid[i][perm[i]];
    rows.push_back({pairs[i], pairs[perm[i]], ev.concurrence, ev.fidelity, ev.weight});
  }
  return detail::assemble(std::move(rows), SubspacePairing::from_permutation(d, perm), mode);
}

inline WitnessReport pconcurrence_search(const DensityMatrix& rho, SearchRequest request = SearchRequest::automatic) {
  const std::size_t d = detail::square_dim(rho.dims());
  return pconcurrence_search_with([&](IndexPair a, IndexPair b) { return evaluate_subspace(rho, a, b); }, d, request);
}

}  // namespace pconc

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
 * @file tomography.hpp
 * Simulated two-photon state tomography.
 *
 * Each setting projects photon A onto one ket and photon B onto another; the
 * coincidence count is Poisson with mean rate * time * Tr(rho |a><a| (x) |b><b|).
 * Reconstruction is either linear inversion (least squares + PSD projection)
 * or the multiplicative R rho R maximum-likelihood iteration.
 *
 * The qudit measurement set is "pairwise overcomplete": the d basis kets plus
 * (|lo> + e^{i theta}|hi>)/sqrt(2), theta in {0, pi/2, pi, 3pi/2}, for every
 * pair lo < hi. It restricts to the 6-ket qubit set on every two-level
 * subspace, so qubit sub-tomographies are literal subsets of the full record.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pconc/error.hpp"
#include "pconc/qmath.hpp"
#include "pconc/states.hpp"
#include "pconc/witness.hpp"

namespace pconc {

/// One photon's projector ket and its human-readable label.
struct ArmKet {
  CVector ket;
  std::string label;
};

struct ProjectorSetting {
  CVector arm_a;
  CVector arm_b;
  std::string label_a;
  std::string label_b;

  void check() const {
    for (const CVector* k : {&arm_a, &arm_b}) {
      const double n = k->norm();
      if (!(std::abs(n * n - 1.0) <= kNormTol)) throw InvalidStateError("projector setting ket is not normalized");
    }
  }
};

struct TomographyRecord {
  Dims dims;
  std::vector<ProjectorSetting> settings;
  std::vector<std::uint64_t> counts;
  double rate_hz = 1.0;
  double integration_time_s = 1.0;
  std::optional<std::uint64_t> seed;

  void check() const {
    if (counts.size() != settings.size())
      throw DimensionError("tomography record has " + std::to_string(settings.size()) + " settings but " +
                           std::to_string(counts.size()) + " counts");
    if (!(rate_hz > 0.0) || !(integration_time_s > 0.0))
      throw DomainError("tomography record needs rate_hz > 0 and integration_time_s > 0");
    for (const auto& s : settings) {
      if (s.arm_a.dim() != dims.dim_a || s.arm_b.dim() != dims.dim_b)
        throw DimensionError("projector setting dimensions do not match the record");
      s.check();
    }
  }

  /// Observed count / (rate * time), the per-setting estimate of the Born probability.
  std::vector<double> frequencies() const {
    std::vector<double> f(counts.size());
    const double scale = rate_hz * integration_time_s;
    for (std::size_t j = 0; j < counts.size(); ++j) f[j] = static_cast<double>(counts[j]) / scale;
    return f;
  }
};

namespace detail {

// e^{i t pi/2} without rounding in the zero components.
inline cplx quarter_phase(int t) {
  switch (t & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline const char* quarter_phase_label(int t) {
  static const char* names[] = {"0", "pi/2", "pi", "3pi/2"};
  return names[t & 3];
}

}  // namespace detail

/// The d basis kets, then for each pair lo < hi the four phase superpositions.
inline std::vector<ArmKet> pairwise_overcomplete_kets(std::size_t d) {
  if (d < 2) throw DomainError("pairwise_overcomplete_kets: d must be >= 2");
  std::vector<ArmKet> out;
  out.reserve(d + 2 * d * (d - 1));
  for (std::size_t i = 0; i < d; ++i) {
    CVector k(d);
    k[i] = 1.0;
    out.push_back({std::move(k), "|" + std::to_string(i) + ">"});
  }
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto& p : enumerate_pairs(d))
    for (int t = 0; t < 4; ++t) {
      CVector k(d);
      k[p.lo] = h;
      k[p.hi] = h * detail::quarter_phase(t);
      out.push_back({std::move(k), std::string("theta=") + detail::quarter_phase_label(t) + " on {" +
                                       std::to_string(p.lo) + "," + std::to_string(p.hi) + "}"});
    }
  return out;
}

/// |0>, |1>, (|0> + e^{i theta}|1>)/sqrt(2) for theta in {0, pi/2, pi, 3pi/2}.
inline std::vector<ArmKet> qubit_setting_kets() { return pairwise_overcomplete_kets(2); }

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

/**
 * Complete set of d+1 mutually unbiased bases for prime d: the computational
 * basis, then for b = 0..d-1 the kets |e^b_j> = sum_k w^{b k^2 + j k}|k>/sqrt(d),
 * w = e^{2 pi i/d}. For d = 2 the quadratic phase is replaced by i^{b k}.
 */
inline std::vector<ArmKet> mub_kets(std::size_t d) {
  if (!is_prime(d)) throw DomainError("mub_kets: d must be prime, got " + std::to_string(d));
  std::vector<ArmKet> out;
  for (std::size_t j = 0; j < d; ++j) {
    CVector k(d);
    k[j] = 1.0;
    out.push_back({std::move(k), "mub0:" + std::to_string(j)});
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t j = 0; j < d; ++j) {
      CVector k(d);
      for (std::size_t x = 0; x < d; ++x) {
        cplx phase;
        if (d == 2) {
          phase = detail::quarter_phase(static_cast<int>(b * x)) * (((j * x) % 2) ? -1.0 : 1.0);
        } else {
          const std::size_t e = (b * x * x + j * x) % d;
          const double ang = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(d);
          phase = {std::cos(ang), std::sin(ang)};
        }
        k[x] = amp * phase;
      }
      out.push_back({std::move(k), "mub" + std::to_string(b + 1) + ":" + std::to_string(j)});
    }
  return out;
}

/// Every (a, b) combination, side A outer.
inline std::vector<ProjectorSetting> joint_settings(const std::vector<ArmKet>& arm_a, const std::vector<ArmKet>& arm_b) {
  std::vector<ProjectorSetting> out;
  out.reserve(arm_a.size() * arm_b.size());
  for (const auto& a : arm_a)
    for (const auto& b : arm_b) out.push_back({a.ket, b.ket, a.label, b.label});
  return out;
}

inline constexpr double kProbabilityTol = 1e-12;

namespace detail {

inline double quadratic_form(const CMatrix& m, const CVector& psi) { return inner(psi, m * psi).real(); }

}  // namespace detail

/// Tr(rho (|a><a| (x) |b><b|))
inline double born_probability(const DensityMatrix& rho, const ProjectorSetting& s) {
  if (s.arm_a.dim() != rho.dims().dim_a || s.arm_b.dim() != rho.dims().dim_b)
    throw DimensionError("born_probability: setting dimensions do not match the state");
  const double p = detail::quadratic_form(rho.matrix(), kron(s.arm_a, s.arm_b));
  if (p < -kProbabilityTol || p > 1.0 + kProbabilityTol)
    throw InvalidStateError("born_probability: value " + std::to_string(p) + " outside [0,1]");
  return std::clamp(p, 0.0, 1.0);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Poisson draw that depends only on (seed, index).
inline std::uint64_t poisson_draw(std::uint64_t seed, std::uint64_t index, double mean) {
  if (!(mean > 0.0)) return 0;
  std::mt19937_64 engine(splitmix64(seed ^ splitmix64(index)));
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine);
}

}  // namespace detail

inline TomographyRecord simulate_counts(const DensityMatrix& rho, std::vector<ProjectorSetting> settings, double rate_hz,
                                        double integration_time_s, std::uint64_t seed) {
  if (!(rate_hz > 0.0) || !(integration_time_s > 0.0))
    throw DomainError("simulate_counts: rate_hz and integration_time_s must be > 0");
  TomographyRecord rec{rho.dims(), std::move(settings), {}, rate_hz, integration_time_s, seed};
  rec.counts.resize(rec.settings.size());
  const double scale = rate_hz * integration_time_s;
  for (std::size_t j = 0; j < rec.settings.size(); ++j)
    rec.counts[j] = detail::poisson_draw(seed, j, scale * born_probability(rho, rec.settings[j]));
  rec.check();
  return rec;
}

/// Record whose counts equal the expected means exactly (rounded); for round-trip checks.
inline TomographyRecord expected_counts(const DensityMatrix& rho, std::vector<ProjectorSetting> settings, double rate_hz,
                                        double integration_time_s) {
  TomographyRecord rec{rho.dims(), std::move(settings), {}, rate_hz, integration_time_s, std::nullopt};
  rec.counts.resize(rec.settings.size());
  for (std::size_t j = 0; j < rec.settings.size(); ++j)
    rec.counts[j] =
        static_cast<std::uint64_t>(std::llround(rate_hz * integration_time_s * born_probability(rho, rec.settings[j])));
  return rec;
}

namespace detail {

/// Joint projector kets |a> (x) |b>, one per setting.
inline std::vector<CVector> joint_kets(const TomographyRecord& rec) {
  std::vector<CVector> out;
  out.reserve(rec.settings.size());
  for (const auto& s : rec.settings) out.push_back(kron(s.arm_a, s.arm_b));
  return out;
}

/**
 * Rows <psi_j| G_k |psi_j> of the linear map from the coordinates of rho in the
 * orthonormal Hermitian basis {E_ii, (E_ij+E_ji)/sqrt2, i(E_ij-E_ji)/sqrt2}
 * to Born probabilities.
 */
inline std::vector<std::vector<double>> design_matrix(const std::vector<CVector>& kets, std::size_t n) {
  const double r2 = std::sqrt(2.0);
  std::vector<std::vector<double>> a(kets.size(), std::vector<double>(n * n));
  for (std::size_t j = 0; j < kets.size(); ++j) {
    const CVector& psi = kets[j];
    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i) a[j][col++] = std::norm(psi[i]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        const cplx z = std::conj(psi[i]) * psi[k];
        a[j][col++] = r2 * z.real();
        a[j][col++] = -r2 * z.imag();
      }
  }
  return a;
}

inline CMatrix from_hermitian_coordinates(const std::vector<double>& x, std::size_t n) {
  const double r2 = 1.0 / std::sqrt(2.0);
  CMatrix m(n, n);
  std::size_t col = 0;
  for (std::size_t i = 0; i < n; ++i) m(i, i) = x[col++];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      const double s = x[col++];
      const double t = x[col++];
      // s (E_ik + E_ki)/sqrt2 + t i (E_ik - E_ki)/sqrt2
      m(i, k) = cplx(s * r2, t * r2);
      m(k, i) = cplx(s * r2, -t * r2);
    }
  return m;
}

struct NormalSystem {
  EigenSystem eig;  // of A^T A
  std::size_t rank = 0;
  std::size_t params = 0;
};

inline NormalSystem normal_system(const std::vector<std::vector<double>>& a, std::size_t params) {
  CMatrix ata(params, params);
  for (std::size_t k = 0; k < params; ++k)
    for (std::size_t l = k; l < params; ++l) {
      double s = 0.0;
      for (const auto& row : a) s += row[k] * row[l];
      ata(k, l) = s;
      ata(l, k) = s;
    }
  NormalSystem ns{hermitian_eig(ata), 0, params};
  const double top = ns.eig.values.empty() ? 0.0 : ns.eig.values.front();
  for (double v : ns.eig.values)
    if (v > 1e-10 * top) ++ns.rank;
  return ns;
}

/// Clip negative eigenvalues to 0 and renormalize the trace.
inline CMatrix project_to_density(const CMatrix& h) {
  const EigenSystem es = hermitian_eig(h);
  double tr = 0.0;
  for (double v : es.values) tr += std::max(v, 0.0);
  if (!(tr > 0.0)) throw InvalidStateError("reconstruction has no positive part; cannot form a density matrix");
  return apply_spectral(es, [tr](double v) { return std::max(v, 0.0) / tr; });
}

}  // namespace detail

/// Number of independent Hermitian parameters the record's settings determine.
inline std::size_t design_rank(const TomographyRecord& rec) {
  const std::size_t n = rec.dims.total();
  return detail::normal_system(detail::design_matrix(detail::joint_kets(rec), n), n * n).rank;
}

/// Least-squares linear inversion followed by projection onto density matrices.
inline DensityMatrix reconstruct_linear(const TomographyRecord& rec) {
  rec.check();
  const std::size_t n = rec.dims.total();
  const std::size_t params = n * n;
  const auto a = detail::design_matrix(detail::joint_kets(rec), n);
  const detail::NormalSystem ns = detail::normal_system(a, params);
  if (ns.rank < params)
    throw DomainError("reconstruct_linear: settings determine only " + std::to_string(ns.rank) + " of " +
                      std::to_string(params) + " parameters (rank deficiency " + std::to_string(params - ns.rank) +
                      ")");

  const std::vector<double> f = rec.frequencies();
  std::vector<double> atf(params, 0.0);
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = 0; k < params; ++k) atf[k] += a[j][k] * f[j];

  // x = V diag(1/lambda) V^T A^T f; the normal matrix is real, so V^T = V† up to phase-free real parts.
  const CMatrix& v = ns.eig.vectors;
  std::vector<cplx> proj(params, 0.0);
  for (std::size_t k = 0; k < params; ++k) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < params; ++i) s += std::conj(v(i, k)) * atf[i];
    proj[k] = s / ns.eig.values[k];
  }
  std::vector<double> x(params, 0.0);
  for (std::size_t i = 0; i < params; ++i) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < params; ++k) s += v(i, k) * proj[k];
    x[i] = s.real();
  }
  return DensityMatrix::trusted(rec.dims, detail::project_to_density(detail::from_hermitian_coordinates(x, n)));
}

struct MleResult {
  DensityMatrix state;
  std::size_t iterations = 0;
  bool converged = false;
  /// Log-likelihood sum_j f_j log p_j of the start point and of every accepted iterate.
  std::vector<double> log_likelihood;
};

inline constexpr double kProbabilityFloor = 1e-15;

/**
 * Maximum-likelihood reconstruction by the fixed point rho <- N[R rho R],
 * R = sum_j (f_j / p_j) |psi_j><psi_j| / sum_j f_j, starting from I/n.
 *
 * When a full step would lower the likelihood the step is diluted,
 * R_eps = (I + eps R)/(1 + eps) with eps = 1, 1/2, 1/4, ..., which increases the
 * likelihood for small enough eps. Iteration stops when the gain drops below
 * `tol` (converged) or after `max_iter` steps (best iterate, converged = false).
 */
inline MleResult reconstruct_mle(const TomographyRecord& rec, double tol = 1e-10, std::size_t max_iter = 10000) {
  rec.check();
  const std::size_t n = rec.dims.total();
  const std::vector<CVector> kets = detail::joint_kets(rec);
  const std::vector<double> f = rec.frequencies();
  double f_total = 0.0;
  for (double x : f) f_total += x;
  if (!(f_total > 0.0)) throw DomainError("reconstruct_mle: record has no counts");

  auto probabilities = [&](const CMatrix& rho) {
    std::vector<double> p(kets.size());
    for (std::size_t j = 0; j < kets.size(); ++j)
      p[j] = std::max(detail::quadratic_form(rho, kets[j]), kProbabilityFloor);
    return p;
  };
  auto log_likelihood = [&](const std::vector<double>& p) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (f[j] > 0.0) s += f[j] * std::log(p[j]);
    return s;
  };
  auto step = [&](const CMatrix& rho, const CMatrix& r) {
    CMatrix next = r * rho * r.adjoint();
    const double tr = next.trace().real();
    next *= 1.0 / tr;
    return hermitian_part(next, 1e-6);
  };

  CMatrix rho = CMatrix::identity(n) * (1.0 / static_cast<double>(n));
  std::vector<double> p = probabilities(rho);
  double ll = log_likelihood(p);
  MleResult out{DensityMatrix::trusted(rec.dims, rho), 0, false, {ll}};

  const CMatrix eye = CMatrix::identity(n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    CMatrix r(n, n);
    for (std::size_t j = 0; j < kets.size(); ++j) {
      if (f[j] <= 0.0) continue;
      const double w = f[j] / (p[j] * f_total);
      const CVector& psi = kets[j];
      for (std::size_t a = 0; a < n; ++a) {
        const cplx pa = psi[a] * w;
        for (std::size_t b = 0; b < n; ++b) r(a, b) += pa * std::conj(psi[b]);
      }
    }

    CMatrix candidate = step(rho, r);
    std::vector<double> pc = probabilities(candidate);
    double llc = log_likelihood(pc);
    for (double eps = 1.0; llc < ll && eps > 1e-12; eps *= 0.5) {
      const CMatrix diluted = (eye + r * eps) * (1.0 / (1.0 + eps));
      candidate = step(rho, diluted);
      pc = probabilities(candidate);
      llc = log_likelihood(pc);
    }
    out.iterations = it + 1;
    if (llc < ll) {  // no ascent direction left at working precision
      out.converged = true;
      break;
    }
    const double gain = llc - ll;
    rho = std::move(candidate);
    p = std::move(pc);
    ll = llc;
    out.log_likelihood.push_back(ll);
    if (gain < tol) {
      out.converged = true;
      break;
    }
  }
  out.state = DensityMatrix::trusted(rec.dims, std::move(rho));
  return out;
}

inline constexpr double kSupportTol = 1e-12;

/**
 * Settings whose arm-A ket lies in span{a.lo, a.hi} and arm-B ket in
 * span{b.lo, b.hi}, re-expressed in qubit coordinates (lo -> 0, hi -> 1).
 * Counts, rate and time are carried over unchanged.
 */
inline TomographyRecord extract_sub_tomography(const TomographyRecord& rec, IndexPair a, IndexPair b) {
  rec.check();
  a.check(rec.dims.dim_a);
  b.check(rec.dims.dim_b);
  auto restrict = [](const CVector& k, IndexPair pr) -> std::optional<CVector> {
    for (std::size_t i = 0; i < k.dim(); ++i)
      if (i != pr.lo && i != pr.hi && std::abs(k[i]) > kSupportTol) return std::nullopt;
    return CVector{k[pr.lo], k[pr.hi]};
  };
  TomographyRecord out{{2, 2}, {}, {}, rec.rate_hz, rec.integration_time_s, rec.seed};
  for (std::size_t j = 0; j < rec.settings.size(); ++j) {
    const auto& s = rec.settings[j];
    auto ka = restrict(s.arm_a, a);
    auto kb = restrict(s.arm_b, b);
    if (!ka || !kb) continue;
    out.settings.push_back({std::move(*ka), std::move(*kb), s.label_a, s.label_b});
    out.counts.push_back(rec.counts[j]);
  }
  const std::size_t rank = out.settings.size() < 16 ? out.settings.size() : design_rank(out);
  if (rank < 16)
    throw DomainError("extract_sub_tomography: only " + std::to_string(rank) +
                      " independent settings on the subspace, 16 are needed");
  return out;
}

/// Estimated Tr(B rho B†): summed frequencies of the four basis-basis settings of a sub-record.
inline double sub_tomography_weight(const TomographyRecord& sub) {
  auto is_basis = [](const CVector& k) {
    return (std::abs(k[0]) == 1.0 && k[1] == cplx(0.0)) || (std::abs(k[1]) == 1.0 && k[0] == cplx(0.0));
  };
  const std::vector<double> f = sub.frequencies();
  double w = 0.0;
  for (std::size_t j = 0; j < sub.settings.size(); ++j)
    if (is_basis(sub.settings[j].arm_a) && is_basis(sub.settings[j].arm_b)) w += f[j];
  return w;
}

/// Reconstruction method for the record-driven witness pipeline.
enum class ReconstructionMethod { linear, mle };

/**
 * Per-subspace evaluation straight from a tomography record: extract the 36
 * sub-settings, reconstruct the qubit pair and measure it. A subspace with no
 * counts has concurrence 0.
 */
inline SubspaceEvaluation evaluate_subspace_from_record(const TomographyRecord& rec, IndexPair a, IndexPair b,
                                                        ReconstructionMethod method = ReconstructionMethod::mle) {
  const TomographyRecord sub = extract_sub_tomography(rec, a, b);
  SubspaceEvaluation ev;
  ev.weight = sub_tomography_weight(sub);
  std::uint64_t total = 0;
  for (auto c : sub.counts) total += c;
  if (total == 0) return {0.0, 0.0, ev.weight};
  const DensityMatrix rho2 =
      method == ReconstructionMethod::mle ? reconstruct_mle(sub).state : reconstruct_linear(sub);
  ev.concurrence = wootters_concurrence(rho2);
  ev.fidelity = fidelity_to_ket(rho2, subspace_bell_state());
  return ev;
}

inline WitnessReport pconcurrence_known(const TomographyRecord& rec, const SubspacePairing& pairing,
                                        ReconstructionMethod method = ReconstructionMethod::mle) {
  if (rec.dims.dim_a != rec.dims.dim_b || pairing.dim() != rec.dims.dim_a)
    throw DimensionError("pconcurrence_known: record and pairing dimensions do not match");
  return pconcurrence_known_with(
      [&](IndexPair a, IndexPair b) { return evaluate_subspace_from_record(rec, a, b, method); }, pairing);
}

inline WitnessReport pconcurrence_search(const TomographyRecord& rec, SearchRequest request = SearchRequest::automatic,
                                         ReconstructionMethod method = ReconstructionMethod::mle) {
  if (rec.dims.dim_a != rec.dims.dim_b) throw DimensionError("pconcurrence_search: record must have dimA == dimB");
  return pconcurrence_search_with(
      [&](IndexPair a, IndexPair b) { return evaluate_subspace_from_record(rec, a, b, method); }, rec.dims.dim_a,
      request);
}

struct Budget {
  std::size_t d = 0;
  std::size_t k = 0;
  std::uint64_t pconc_measurements = 0;
  std::uint64_t qst_measurements = 0;
  double pconc_time_s = 0.0;
  double qst_time_s = 0.0;
};

/// 36 K qubit-pair settings versus (d + 2d(d-1))^2 full pairwise-overcomplete settings.
inline Budget budget(std::size_t d, double integration_time_s = 10.0) {
  if (d < 2) throw DomainError("budget: d must be >= 2, got " + std::to_string(d));
  if (!(integration_time_s > 0.0)) throw DomainError("budget: integration time must be > 0");
  Budget b;
  b.d = d;
  b.k = count_subspaces(d);
  b.pconc_measurements = 36 * static_cast<std::uint64_t>(b.k);
  const std::uint64_t per_arm = 2 * static_cast<std::uint64_t>(d) * d - d;
  b.qst_measurements = per_arm * per_arm;
  b.pconc_time_s = static_cast<double>(b.pconc_measurements) * integration_time_s;
  b.qst_time_s = static_cast<double>(b.qst_measurements) * integration_time_s;
  return b;
}

}  // namespace pconc

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
 * @file states.hpp
 * Bipartite kets and density matrices, plus the SPDC-type state families.
 *
 * Basis convention for OAM states: side A is ordered (+l, ..., 0, ..., -l) and
 * side B (-l, ..., 0, ..., +l). The anticorrelated SPDC pair |l,-l> then sits at
 * matched indices (i, i), so the correlation-preserving subspace pairing is the
 * identity matching.
 */
#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pconc/error.hpp"
#include "pconc/qmath.hpp"

namespace pconc {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kMinEigenTol = 1e-9;

/// Normalized pure state on C^dimA (x) C^dimB, amplitude index a*dimB + b.
class BipartiteKet {
 public:
  BipartiteKet(Dims dims, CVector amplitudes, std::vector<int> labels_a = {}, std::vector<int> labels_b = {})
      : dims_(dims), amps_(std::move(amplitudes)), labels_a_(std::move(labels_a)), labels_b_(std::move(labels_b)) {
    if (dims_.dim_a == 0 || dims_.dim_b == 0) throw DimensionError("ket: dimensions must be positive");
    if (amps_.dim() != dims_.total())
      throw DimensionError("ket: expected " + std::to_string(dims_.total()) + " amplitudes, got " +
                           std::to_string(amps_.dim()));
    if ((!labels_a_.empty() && labels_a_.size() != dims_.dim_a) ||
        (!labels_b_.empty() && labels_b_.size() != dims_.dim_b))
      throw DimensionError("ket: basis label count does not match dimension");
    const double n = amps_.norm();
    if (!(std::abs(n * n - 1.0) <= kNormTol))
      throw InvalidStateError("ket: squared norm is " + std::to_string(n * n) + ", expected 1");
  }

  /// Normalizes arbitrary nonzero amplitudes.
  static BipartiteKet normalized(Dims dims, CVector amplitudes, std::vector<int> labels_a = {},
                                 std::vector<int> labels_b = {}) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidStateError("ket: amplitudes have zero or non-finite norm");
    for (auto& z : amplitudes.entries()) z /= n;
    return BipartiteKet(dims, std::move(amplitudes), std::move(labels_a), std::move(labels_b));
  }

  Dims dims() const { return dims_; }
  const CVector& amplitudes() const { return amps_; }
  cplx amplitude(std::size_t a, std::size_t b) const { return amps_[a * dims_.dim_b + b]; }
  const std::vector<int>& labels_a() const { return labels_a_; }
  const std::vector<int>& labels_b() const { return labels_b_; }

 private:
  Dims dims_;
  CVector amps_;
  std::vector<int> labels_a_;
  std::vector<int> labels_b_;
};

/// Hermitian, PSD, unit-trace operator on a bipartite space.
class DensityMatrix {
 public:
  Dims dims() const { return dims_; }
  const CMatrix& matrix() const { return m_; }
  std::size_t size() const { return m_.rows(); }

  /// Assumes the invariants hold; only for values produced by this library's own constructions.
  static DensityMatrix trusted(Dims dims, CMatrix m) { return DensityMatrix(dims, std::move(m)); }

 private:
  DensityMatrix(Dims dims, CMatrix m) : dims_(dims), m_(std::move(m)) {}

  Dims dims_;
  CMatrix m_;
};

struct SpdcParams {
  double alpha = 0.0;
  double beta = 0.0;
};

/// OAM values for a d-dimensional side A: (+l_max, ..., -l_max) for odd d.
/// Even d has no l = 0 and uses (d/2, ..., 1, -1, ..., -d/2).
inline std::vector<int> oam_labels_a(std::size_t d) {
  std::vector<int> out;
  const int half = static_cast<int>(d / 2);
  for (int l = half; l >= -half; --l) {
    if (l == 0 && d % 2 == 0) continue;
    out.push_back(l);
  }
  return out;
}

inline std::vector<int> oam_labels_b(std::size_t d) {
  std::vector<int> out = oam_labels_a(d);
  for (int& l : out) l = -l;
  return out;
}

/// N(|0,0> + alpha|1,-1> + beta|-1,1>), N = 1/sqrt(1 + alpha^2 + beta^2).
inline BipartiteKet make_spdc_qutrit(SpdcParams p) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(p.alpha) || !in_unit(p.beta)) {
    std::ostringstream os;
    os << "make_spdc_qutrit: alpha and beta must lie in [0,1], got alpha=" << p.alpha << ", beta=" << p.beta;
    throw DomainError(os.str());
  }
  const double norm = 1.0 / std::sqrt(1.0 + p.alpha * p.alpha + p.beta * p.beta);
  // A: (+1, 0, -1), B: (-1, 0, +1). |1,-1> -> (0,0), |0,0> -> (1,1), |-1,1> -> (2,2).
  CVector amps(9);
  amps[0 * 3 + 0] = norm * p.alpha;
  amps[1 * 3 + 1] = norm;
  amps[2 * 3 + 2] = norm * p.beta;
  return BipartiteKet({3, 3}, std::move(amps), oam_labels_a(3), oam_labels_b(3));
}

/// sum_i |i,i> / sqrt(d)
inline BipartiteKet make_max_entangled(std::size_t d) {
  if (d < 2) throw DomainError("make_max_entangled: d must be >= 2, got " + std::to_string(d));
  CVector amps(d * d);
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) amps[i * d + i] = c;
  return BipartiteKet({d, d}, std::move(amps));
}

/// sum_l c_l |l,-l>, c_l proportional to exp(-l^2 / (2 decay^2)).
inline BipartiteKet make_spdc_qudit(std::size_t d, double decay) {
  if (d < 2) throw DomainError("make_spdc_qudit: d must be >= 2, got " + std::to_string(d));
  if (!(decay > 0.0)) throw DomainError("make_spdc_qudit: decay must be > 0");
  const std::vector<int> labels = oam_labels_a(d);
  CVector amps(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const double l = labels[i];
    amps[i * d + i] = std::exp(-(l * l) / (2.0 * decay * decay));
  }
  return BipartiteKet::normalized({d, d}, std::move(amps), labels, oam_labels_b(d));
}

/// |psi><psi|
inline DensityMatrix density_from_ket(const BipartiteKet& k) {
  return DensityMatrix::trusted(k.dims(), CMatrix::outer(k.amplitudes(), k.amplitudes()));
}

/// Checks Hermiticity, unit trace and positivity, then symmetrizes and renormalizes.
inline DensityMatrix validate_density(const CMatrix& m, Dims dims) {
  if (!m.is_square() || m.rows() != dims.total())
    throw DimensionError("density matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected " + std::to_string(dims.total()) + "x" + std::to_string(dims.total()));
  if (!m.all_finite()) throw InvalidStateError("density matrix has non-finite entries");
  const double defect = m.hermiticity_defect();
  if (!(defect <= kHermitianTol))
    throw InvalidStateError("density matrix is not Hermitian: max |rho - rho^dagger| = " + std::to_string(defect));
  CMatrix h = hermitian_part(m);
  const double tr = h.trace().real();
  if (!(std::abs(tr - 1.0) <= kTraceTol))
    throw InvalidStateError("density matrix trace is " + std::to_string(tr) + ", expected 1");
  h *= 1.0 / tr;
  const EigenSystem es = hermitian_eig(h);
  if (es.values.back() < -kMinEigenTol)
    throw InvalidStateError("density matrix is not positive semidefinite: min eigenvalue = " +
                            std::to_string(es.values.back()));
  return DensityMatrix::trusted(dims, std::move(h));
}

/// Reduced state of one side.
inline CMatrix reduced_state(const DensityMatrix& rho, Side keep) { return partial_trace(rho.matrix(), rho.dims(), keep); }

}  // namespace pconc

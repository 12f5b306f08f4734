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
 * @file measures.hpp
 * Entanglement measures: Wootters concurrence (two qubits, mixed or pure),
 * I-concurrence and entropy of entanglement (pure states, any dimension),
 * purity and fidelities, and normalization to the d-dimensional maximum.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

#include "pconc/error.hpp"
#include "pconc/qmath.hpp"
#include "pconc/states.hpp"

namespace pconc {

enum class MeasureName { concurrence, i_concurrence, eof, pconcurrence };

inline std::string_view to_string(MeasureName m) {
  switch (m) {
    case MeasureName::concurrence: return "concurrence";
    case MeasureName::i_concurrence: return "i_concurrence";
    case MeasureName::eof: return "eof";
    case MeasureName::pconcurrence: return "pconcurrence";
  }
  return "unknown";
}

struct MeasureValue {
  double raw = 0.0;
  double normalized = 0.0;
  MeasureName name = MeasureName::concurrence;
};

inline constexpr double kPureGate = 1e-6;
inline constexpr double kEntropyCutoff = 1e-12;

/// Tr(rho^2)
inline double purity(const DensityMatrix& rho) {
  const CMatrix& m = rho.matrix();
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);  // Tr(rho rho†) = sum |rho_ij|^2
  return s;
}

namespace detail {

inline CMatrix spin_flip_yy() {
  // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
  CMatrix y(4, 4);
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

inline void require_pure(const DensityMatrix& rho, const char* what) {
  const double p = purity(rho);
  if (p < 1.0 - kPureGate) {
    std::ostringstream os;
    os << what << ": defined here for pure states only (purity " << p
       << " < 1 - 1e-6); mixed-state convex-roof extensions are not implemented";
    throw DomainError(os.str());
  }
}

}  // namespace detail

/**
 * Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state.
 *
 * The l_i are the square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho),
 * rho~ = (Y(x)Y) rho* (Y(x)Y). They are evaluated as the singular values of
 * sqrt(rho) (Y(x)Y) sqrt(rho)*, whose Gram matrix is exactly that product; this
 * keeps the rank-deficient directions at rounding level instead of at the
 * square root of rounding level.
 */
inline double wootters_concurrence(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2})
    throw DimensionError("wootters_concurrence: needs a 2x2 bipartite state, got " + std::to_string(rho.dims().dim_a) +
                         "x" + std::to_string(rho.dims().dim_b));
  const CMatrix root = sqrt_psd(rho.matrix());
  const CMatrix x = root * detail::spin_flip_yy() * root.conjugate();
  const std::vector<double> l = singular_values(x);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

/// sqrt(2 (1 - Tr rho_X^2)) for a pure density matrix, X the chosen side.
inline double i_concurrence(const DensityMatrix& rho, Side side = Side::A) {
  detail::require_pure(rho, "i_concurrence");
  const CMatrix r = reduced_state(rho, side);
  double p = 0.0;
  for (const auto& z : r.entries()) p += std::norm(z);
  return std::sqrt(2.0 * std::max(0.0, 1.0 - p));
}

/**
 * I-concurrence of a ket. Uses the identity
 *   1 - Tr rho_A^2 = 2 sum_{i<j, k<l} |psi_ik psi_jl - psi_il psi_jk|^2
 * (for a normalized ket), which vanishes exactly on product states.
 */
inline double i_concurrence(const BipartiteKet& k) {
  const std::size_t da = k.dims().dim_a, db = k.dims().dim_b;
  double minors = 0.0;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = i + 1; j < da; ++j)
      for (std::size_t p = 0; p < db; ++p)
        for (std::size_t q = p + 1; q < db; ++q)
          minors += std::norm(k.amplitude(i, p) * k.amplitude(j, q) - k.amplitude(i, q) * k.amplitude(j, p));
  return 2.0 * std::sqrt(minors);
}

/// von Neumann entropy (bits) of a Hermitian PSD matrix; eigenvalues <= 1e-12 contribute 0.
inline double entropy_bits(const CMatrix& m) {
  const EigenSystem es = hermitian_eig(m);
  double s = 0.0;
  for (double x : es.values)
    if (x > kEntropyCutoff) s -= x * std::log2(x);
  return std::max(s, 0.0);
}

/// Entropy of entanglement -Tr rho_A log2 rho_A of a pure state.
inline double eof_pure(const DensityMatrix& rho, Side side = Side::A) {
  detail::require_pure(rho, "eof_pure");
  return entropy_bits(reduced_state(rho, side));
}

inline double eof_pure(const BipartiteKet& k, Side side = Side::A) { return eof_pure(density_from_ket(k), side); }

/// Pure-state maximum of a measure in d dimensions.
inline double measure_maximum(MeasureName name, std::size_t d) {
  if (d < 2) throw DomainError("normalization dimension must be >= 2, got " + std::to_string(d));
  const double dd = static_cast<double>(d);
  switch (name) {
    case MeasureName::eof: return std::log2(dd);
    case MeasureName::i_concurrence: return std::sqrt(2.0 * (dd - 1.0) / dd);
    case MeasureName::concurrence:
    case MeasureName::pconcurrence: return 1.0;
  }
  return 1.0;
}

/// raw / (d-dimensional maximum); overshoot within 1e-9 is clamped, beyond that is an error.
inline double normalize_measure(double raw, MeasureName name, std::size_t d) {
  const double v = raw / measure_maximum(name, d);
  if (v > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "normalize_measure: " << to_string(name) << " value " << raw << " exceeds the d=" << d << " maximum";
    throw DomainError(os.str());
  }
  return std::clamp(v, 0.0, 1.0);
}

inline MeasureValue make_measure(double raw, MeasureName name, std::size_t d) {
  return {raw, normalize_measure(raw, name, d), name};
}

/// <t|rho|t>
inline double fidelity_to_ket(const DensityMatrix& rho, const BipartiteKet& target) {
  if (rho.dims() != target.dims()) throw DimensionError("fidelity_to_ket: dimensions differ");
  const CVector& t = target.amplitudes();
  const double f = inner(t, rho.matrix() * t).real();
  return std::clamp(f, 0.0, 1.0);
}

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, computed as the squared trace norm of sqrt(rho) sqrt(sigma).
inline double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw DimensionError("uhlmann_fidelity: dimensions differ");
  const std::vector<double> s = singular_values(sqrt_psd(rho.matrix()) * sqrt_psd(sigma.matrix()));
  double tr = 0.0;
  for (double x : s) tr += x;
  return std::clamp(tr * tr, 0.0, 1.0);
}

}  // namespace pconc

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
 * @file qmath.hpp
 * Dense complex linear algebra for the small matrices that show up in
 * bipartite qudit work (at most 64x64): Kronecker products, partial traces,
 * a cyclic Jacobi eigensolver for Hermitian matrices, and the PSD square root.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pconc/error.hpp"

namespace pconc {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;

/// Column vector of complex amplitudes.
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : data_(dim) {}
  CVector(std::initializer_list<cplx> values) : data_(values) {}
  explicit CVector(std::vector<cplx> values) : data_(std::move(values)) {}

  std::size_t dim() const { return data_.size(); }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  std::span<const cplx> entries() const { return data_; }
  std::span<cplx> entries() { return data_; }

  double norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  CVector conjugate() const {
    CVector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = std::conj(data_[i]);
    return out;
  }

  friend bool operator==(const CVector&, const CVector&) = default;

 private:
  std::vector<cplx> data_;
};

/// <u|v>, conjugate-linear in the first argument.
inline cplx inner(const CVector& u, const CVector& v) {
  if (u.dim() != v.dim()) throw DimensionError("inner: vector dimensions differ");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

/// Kronecker product of two column vectors, index (i * b.dim() + k).
inline CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
  return out;
}

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Builds from nested rows; every row must have the same length.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static CMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  /// |u><v|
  static CMatrix outer(const CVector& u, const CVector& v) {
    CMatrix m(u.dim(), v.dim());
    for (std::size_t i = 0; i < u.dim(); ++i)
      for (std::size_t j = 0; j < v.dim(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> entries() const { return data_; }
  std::span<cplx> entries() { return data_; }

  CVector column(std::size_t j) const {
    CVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  CMatrix adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  CMatrix conjugate() const {
    CMatrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
  }

  cplx trace() const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// Largest |m(i,j) - conj(m(j,i))|.
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
  }

  CMatrix& operator+=(const CMatrix& o) {
    check_same_shape(o, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    check_same_shape(o, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend CVector operator*(const CMatrix& a, const CVector& v) {
    if (a.cols_ != v.dim()) throw DimensionError("matrix-vector product: dimensions differ");
    CVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void check_same_shape(const CMatrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError(std::string(what) + ": shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).frobenius_norm(); }

/// Kronecker product; entry (i*b.rows()+k, j*b.cols()+l) = a(i,j) * b(k,l).
inline CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// Dimensions of the two factors of a bipartite space; joint index is a*dim_b + b.
struct Dims {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;

  std::size_t total() const { return dim_a * dim_b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Side { A, B };

/// Reduces a bipartite operator to the side that is kept.
inline CMatrix partial_trace(const CMatrix& m, Dims dims, Side keep) {
  if (!m.is_square() || m.rows() != dims.total())
    throw DimensionError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected square of size " + std::to_string(dims.total()));
  const std::size_t da = dims.dim_a;
  const std::size_t db = dims.dim_b;
  if (keep == Side::A) {
    CMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < db; ++k) s += m(i * db + k, j * db + k);
        out(i, j) = s;
      }
    return out;
  }
  CMatrix out(db, db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t l = 0; l < db; ++l) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < da; ++i) s += m(i * db + k, i * db + l);
      out(k, l) = s;
    }
  return out;
}

/// (m + m†)/2 after checking the Hermiticity gate.
inline CMatrix hermitian_part(const CMatrix& m, double tol = kHermitianTol) {
  if (!m.is_square()) throw DimensionError("expected a square matrix");
  const double defect = m.hermiticity_defect();
  if (!(defect <= tol))
    throw InvalidStateError("matrix is not Hermitian: max |m - m^dagger| = " + std::to_string(defect));
  CMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return out;
}

struct EigenSystem {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column j pairs with values[j]
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
 *
 * Each rotation first removes the phase of the pivot a(p,q) and then applies a
 * real Givens rotation, so the unitary acting on the (p,q) plane is
 *   U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]],   a(p,q) = |a(p,q)| e^{i phi}.
 * Sweeps stop when the off-diagonal Frobenius norm drops below 1e-12 ||m||_F
 * (100 sweeps at most).
 */
inline EigenSystem hermitian_eig(const CMatrix& m) {
  CMatrix a = hermitian_part(m);
  const std::size_t n = a.rows();
  CMatrix v = CMatrix::identity(n);

  const double scale = a.frobenius_norm();
  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    if (off_norm() < 1e-12 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= std::numeric_limits<double>::min() || r < 1e-300) continue;
        const cplx phase = std::conj(apq) / r;  // e^{-i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const cplx u00 = c, u01 = s, u10 = -s * phase, u11 = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * u00 + akq * u10;
          a(k, q) = akp * u01 + akq * u11;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * u00 + vkq * u10;
          v(k, q) = vkp * u01 + vkq * u11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
          a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

/// V diag(f(lambda)) V†
template <typename F>
CMatrix apply_spectral(const EigenSystem& es, F&& f) {
  const std::size_t n = es.values.size();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(es.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = es.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(es.vectors(j, k));
    }
  }
  return out;
}

inline constexpr double kPsdTol = 1e-10;

/// Eigenvalues at or below this fraction of the spectral radius are rounding noise.
inline double spectral_noise_floor(const EigenSystem& es) {
  double radius = 0.0;
  for (double x : es.values) radius = std::max(radius, std::abs(x));
  return 64.0 * std::numeric_limits<double>::epsilon() * radius;
}

/// Principal square root of a Hermitian PSD matrix.
inline CMatrix sqrt_psd(const CMatrix& m) {
  const EigenSystem es = hermitian_eig(m);
  if (!es.values.empty() && es.values.back() < -kPsdTol)
    throw InvalidStateError("sqrt_psd: matrix is not positive semidefinite, min eigenvalue = " +
                            std::to_string(es.values.back()));
  const double floor = spectral_noise_floor(es);
  return apply_spectral(es, [floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
}

/// Singular values (descending) via the Hermitian embedding [[0, m], [m†, 0]].
inline std::vector<double> singular_values(const CMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  CMatrix h(r + c, r + c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      h(i, r + j) = m(i, j);
      h(r + j, i) = std::conj(m(i, j));
    }
  const EigenSystem es = hermitian_eig(h);
  std::vector<double> out(es.values.begin(), es.values.begin() + static_cast<std::ptrdiff_t>(std::min(r, c)));
  for (double& x : out) x = std::max(x, 0.0);
  return out;
}

}  // namespace pconc

// Copyright 2026 The cavmems Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex linear algebra for the small (dim <= 16) operators used by
// the cavity model. Storage is row-major; tensor products are a-index major,
// i.e. index(a_i, b_j) = a_i * dim(b) + b_j.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cavmems {

using Complex = std::complex<double>;

/// Raised when operands have incompatible dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a solver receives a matrix outside its domain (e.g. a
/// non-Hermitian matrix passed to the Hermitian eigensolver).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kHermitianTolerance = 1e-10;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Dense square complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw DimensionError("ComplexMatrix: dimension must be positive");
  }

  ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
      : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) throw DimensionError("ComplexMatrix: dimension must be positive");
    if (data_.size() != dim * dim) {
      throw DimensionError("ComplexMatrix: expected " + std::to_string(dim * dim) +
                           " entries, got " + std::to_string(data_.size()));
    }
    if (!std::all_of(data_.begin(), data_.end(), [](Complex z) { return is_finite(z); })) {
      throw DomainError("ComplexMatrix: non-finite entry");
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  /// |u><v|
  static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) throw DimensionError("outer: length mismatch");
    ComplexMatrix m(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Complex z) { return is_finite(z); });
  }

  Complex trace() const noexcept {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_dim(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_dim(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_dim(const ComplexMatrix& o, const char* what) const {
    if (o.dim_ != dim_) throw DimensionError(std::string(what) + ": dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("matmul: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

inline ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix r = a;
  for (auto& z : r.entries()) z = std::conj(z);
  return r;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

/// Kronecker product; the row/column index of `a` is the major one.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix r(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return r;
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

inline double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (auto z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (auto z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

/// max_ij |a_ij - conj(a_ji)|
inline double hermiticity_error(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

/// Tr(a b) without forming the product.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_of_product: dimension mismatch");
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

/// Reduced matrix over the subsystems listed in `keep` (0-based, any order;
/// the result keeps them in ascending subsystem order).
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                                   std::vector<std::size_t> keep) {
  if (dims.empty()) throw DimensionError("partial_trace: no subsystem dimensions");
  std::size_t total = 1;
  for (auto d : dims) {
    if (d == 0) throw DimensionError("partial_trace: zero subsystem dimension");
    total *= d;
  }
  if (total != rho.dim()) {
    throw DimensionError("partial_trace: product of dims (" + std::to_string(total) +
                         ") != matrix dimension (" + std::to_string(rho.dim()) + ")");
  }
  if (keep.empty()) throw DimensionError("partial_trace: empty keep set");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.back() >= dims.size()) throw DimensionError("partial_trace: keep index out of range");

  const std::size_t ns = dims.size();
  std::vector<bool> kept(ns, false);
  for (auto k : keep) kept[k] = true;

  std::size_t dim_keep = 1;
  std::size_t dim_trace = 1;
  for (std::size_t s = 0; s < ns; ++s) (kept[s] ? dim_keep : dim_trace) *= dims[s];

  // Compose a full index from (kept multi-index, traced multi-index).
  std::vector<std::size_t> strides(ns);
  {
    std::size_t stride = 1;
    for (std::size_t s = ns; s-- > 0;) {
      strides[s] = stride;
      stride *= dims[s];
    }
  }
  auto compose = [&](std::size_t ik, std::size_t it) {
    std::size_t full = 0;
    for (std::size_t s = ns; s-- > 0;) {
      if (kept[s]) {
        full += (ik % dims[s]) * strides[s];
        ik /= dims[s];
      } else {
        full += (it % dims[s]) * strides[s];
        it /= dims[s];
      }
    }
    return full;
  };

  ComplexMatrix red(dim_keep);
  for (std::size_t i = 0; i < dim_keep; ++i)
    for (std::size_t j = 0; j < dim_keep; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < dim_trace; ++t) acc += rho(compose(i, t), compose(j, t));
      red(i, j) = acc;
    }
  return red;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::initializer_list<std::size_t> dims,
                                   std::initializer_list<std::size_t> keep) {
  const std::vector<std::size_t> d(dims);
  return partial_trace(rho, std::span<const std::size_t>(d), std::vector<std::size_t>(keep));
}

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi diagonalisation of a Hermitian matrix.
inline HermitianEigen herm_eig(const ComplexMatrix& h) {
  const double herr = hermiticity_error(h);
  if (!(herr <= kHermitianTolerance)) {
    throw DomainError("herm_eig: matrix is not Hermitian (max |h - h^dagger| = " +
                      std::to_string(herr) + ")");
  }
  const std::size_t n = h.dim();
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return s;
  };
  const double scale2 = std::max(std::norm(frobenius_norm(a)), std::numeric_limits<double>::min());

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm2() <= 1e-34 * scale2) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) plane; A <- G^dagger A G.
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// Eigenvalues of a general complex matrix: Householder reduction to upper
/// Hessenberg form followed by single-shift complex QR with deflation.
inline std::vector<Complex> eigvals_general(const ComplexMatrix& m) {
  if (!m.all_finite()) throw DomainError("eigvals_general: non-finite entry");
  const std::size_t n = m.dim();
  ComplexMatrix h = m;

  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(h(i, k));
    const double sub_norm2 = xnorm2 - std::norm(h(k + 1, k));
    if (sub_norm2 == 0.0) continue;
    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = h(k + 1, k);
    const Complex unit = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -unit * xnorm;
    std::vector<Complex> v(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    // h <- (I - 2 v v^dagger / |v|^2) h (I - 2 v v^dagger / |v|^2)
    for (std::size_t j = 0; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      dot *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * dot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      dot *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const double norm = std::max(frobenius_norm(h), std::numeric_limits<double>::min());
  std::vector<Complex> eig(n);
  std::size_t hi = n - 1;
  int iter = 0;
  const int max_iter = 60 * static_cast<int>(n);
  struct Rot {
    Complex c, s;
  };
  std::vector<Rot> rots(n);

  while (true) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      const double tol = eps * (scale > 0.0 ? scale : norm);
      if (std::abs(h(lo, lo - 1)) <= tol) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > max_iter) throw std::runtime_error("eigvals_general: QR iteration did not converge");

    Complex mu;
    if (iter % 11 == 10) {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
      const Complex half = 0.5 * (a - d);
      const Complex disc = std::sqrt(half * half + b * c);
      const Complex mid = 0.5 * (a + d);
      const Complex mu1 = mid + disc;
      const Complex mu2 = mid - disc;
      mu = std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
    }

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    for (std::size_t k = lo; k < hi; ++k) {
      const Complex x = h(k, k);
      const Complex y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      Rot g{1.0, 0.0};
      if (r > 0.0) g = {x / r, y / r};
      rots[k] = g;
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex hk = h(k, j);
        const Complex hk1 = h(k + 1, j);
        h(k, j) = std::conj(g.c) * hk + std::conj(g.s) * hk1;
        h(k + 1, j) = -g.s * hk + g.c * hk1;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Rot g = rots[k];
      const std::size_t last = std::min(hi, k + 2);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex hk = h(i, k);
        const Complex hk1 = h(i, k + 1);
        h(i, k) = hk * g.c + hk1 * g.s;
        h(i, k + 1) = -hk * std::conj(g.s) + hk1 * std::conj(g.c);
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

inline std::vector<Complex> eigvals_general_4x4(const ComplexMatrix& m) {
  if (m.dim() != 4) {
    throw DimensionError("eigvals_general_4x4: expected a 4x4 matrix, got dim " +
                         std::to_string(m.dim()));
  }
  return eigvals_general(m);
}

namespace pauli {

inline ComplexMatrix identity() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
inline ComplexMatrix y() {
  return ComplexMatrix(2, {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0});
}
inline ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

}  // namespace pauli

}  // namespace cavmems

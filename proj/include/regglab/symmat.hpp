#pragma once

// Dense real symmetric matrices sized for a few hundred rows: cyclic Jacobi
// eigenvalues, log-scale determinants and inverses.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "regglab/errors.hpp"

namespace regglab {

class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n = 0) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  static SymmetricMatrix identity(int n, double scale = 1.0) {
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, scale);
    return m;
  }

  int n() const noexcept { return n_; }

  double operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  // Writes both (i, j) and (j, i).
  void set(int i, int j, double v) noexcept {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }

  const std::vector<double>& data() const noexcept { return a_; }

  double frobenius_norm() const {
    double s = 0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  double max_norm() const {
    double s = 0;
    for (double x : a_) s = std::max(s, std::abs(x));
    return s;
  }

  double trace() const {
    double t = 0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  SymmetricMatrix scaled(double c) const {
    SymmetricMatrix out = *this;
    for (double& x : out.a_) x *= c;
    return out;
  }

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  int n_;
  std::vector<double> a_;
};

/// Plain row-major square matrix; used for products and eigenvector bases.
struct DenseMatrix {
  int n = 0;
  std::vector<double> a;

  explicit DenseMatrix(int size = 0) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

inline DenseMatrix multiply(const SymmetricMatrix& x, const SymmetricMatrix& y) {
  if (x.n() != y.n()) fail(ErrorCode::SizeMismatch, "matrix product dimensions differ");
  const int n = x.n();
  DenseMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += xik * y(k, j);
    }
  return out;
}

inline double max_abs_diff_from_identity(const DenseMatrix& m) {
  double e = 0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) e = std::max(e, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
  return e;
}

inline double max_abs_diff(const SymmetricMatrix& x, const SymmetricMatrix& y) {
  if (x.n() != y.n()) fail(ErrorCode::SizeMismatch, "matrix dimensions differ");
  double e = 0;
  for (std::size_t i = 0; i < x.data().size(); ++i) e = std::max(e, std::abs(x.data()[i] - y.data()[i]));
  return e;
}

struct Spectrum {
  std::vector<double> values;  // descending
  double basis_residual = 0;   // max |Mv - lambda v| over computed pairs
  int sweeps = 0;
};

struct EigenDecomposition {
  Spectrum spectrum;
  DenseMatrix vectors;  // column i pairs with spectrum.values[i]
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// tol * ||M||_F. Throws NoConvergence after max_sweeps.
inline EigenDecomposition eigen_decompose(const SymmetricMatrix& m, double tol = 1e-12, int max_sweeps = 100) {
  if (!(tol > 0)) fail(ErrorCode::InvalidArgument, "eigenvalue tolerance must be positive");
  const int n = m.n();
  DenseMatrix a(n);
  DenseMatrix v(n);
  for (int i = 0; i < n; ++i) {
    v(i, i) = 1.0;
    for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
  }
  const double target = tol * m.frobenius_norm();
  auto off_norm = [&] {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (sweep == max_sweeps) {
      fail(ErrorCode::NoConvergence, "Jacobi exceeded " + std::to_string(max_sweeps) + " sweeps");
    }
    ++sweep;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.vectors = DenseMatrix(n);
  out.spectrum.sweeps = sweep;
  out.spectrum.values.resize(n);
  for (int c = 0; c < n; ++c) {
    out.spectrum.values[c] = a(order[c], order[c]);
    for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  double residual = 0;
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      double mv = 0;
      for (int k = 0; k < n; ++k) mv += m(r, k) * out.vectors(k, c);
      residual = std::max(residual, std::abs(mv - out.spectrum.values[c] * out.vectors(r, c)));
    }
  }
  out.spectrum.basis_residual = residual;
  return out;
}

inline Spectrum eigenvalues(const SymmetricMatrix& m, double tol = 1e-12) { return eigen_decompose(m, tol).spectrum; }

struct LogDeterminant {
  int sign = 0;  // -1, 0 or +1
  double log_abs = -INFINITY;
};

namespace detail {

inline LogDeterminant lu_log_determinant(const SymmetricMatrix& m, double scale) {
  const int n = m.n();
  DenseMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
  LogDeterminant out{1, 0.0};
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= 1e-13 * scale) return {0, -INFINITY};
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      out.sign = -out.sign;
    }
    const double piv = a(k, k);
    if (piv < 0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(piv));
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / piv;
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return out;
}

}  // namespace detail

/// Sign and log|det| from an LDL^T factorization with symmetric diagonal
/// pivoting. A pivot below 1e-13 of the largest entry means singular (sign 0).
/// Indefinite matrices whose remaining diagonal vanishes fall back to LU.
inline LogDeterminant determinant(const SymmetricMatrix& m) {
  const int n = m.n();
  if (n == 0) return {1, 0.0};
  const double scale = m.max_norm();
  if (scale == 0.0) return {0, -INFINITY};
  DenseMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;

  LogDeterminant out{1, 0.0};
  for (int k = 0; k < n; ++k) {
    auto best = std::max_element(live.begin() + k, live.end(),
                                 [&](int x, int y) { return std::abs(a(x, x)) < std::abs(a(y, y)); });
    std::iter_swap(live.begin() + k, best);
    const int p = live[k];
    const double piv = a(p, p);
    if (std::abs(piv) <= 1e-13 * scale) {
      double rest = 0;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j) rest = std::max(rest, std::abs(a(live[i], live[j])));
      if (rest <= 1e-13 * scale) return {0, -INFINITY};
      return detail::lu_log_determinant(m, scale);
    }
    if (piv < 0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(piv));
    for (int ii = k + 1; ii < n; ++ii) {
      const int i = live[ii];
      const double f = a(i, p) / piv;
      if (f == 0.0) continue;
      for (int jj = k + 1; jj < n; ++jj) {
        const int j = live[jj];
        a(i, j) -= f * a(p, j);
      }
    }
  }
  return out;
}

/// Gauss-Jordan with partial pivoting; the result is symmetrized.
inline SymmetricMatrix inverse(const SymmetricMatrix& m) {
  if (determinant(m).sign == 0) fail(ErrorCode::Singular, "matrix is singular");
  const int n = m.n();
  const int w = 2 * n;
  std::vector<double> aug(static_cast<std::size_t>(n) * w, 0.0);
  auto at = [&](int i, int j) -> double& { return aug[static_cast<std::size_t>(i) * w + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = m(i, j);
    at(i, n + i) = 1.0;
  }
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
    if (at(p, k) == 0.0) fail(ErrorCode::Singular, "zero pivot during inversion");
    if (p != k)
      for (int j = 0; j < w; ++j) std::swap(at(k, j), at(p, j));
    const double inv = 1.0 / at(k, k);
    for (int j = 0; j < w; ++j) at(k, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = at(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < w; ++j) at(i, j) -= f * at(k, j);
    }
  }
  SymmetricMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.set(i, j, 0.5 * (at(i, n + j) + at(j, n + i)));
  return out;
}

/// Lower-triangular L with M = L L^T; throws Singular unless M is positive definite.
inline DenseMatrix cholesky(const SymmetricMatrix& m) {
  const int n = m.n();
  DenseMatrix l(n);
  for (int j = 0; j < n; ++j) {
    double s = m(j, j);
    for (int k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
    if (!(s > 0)) fail(ErrorCode::Singular, "matrix is not positive definite");
    l(j, j) = std::sqrt(s);
    for (int i = j + 1; i < n; ++i) {
      double t = m(i, j);
      for (int k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
      l(i, j) = t / l(j, j);
    }
  }
  return l;
}

}  // namespace regglab

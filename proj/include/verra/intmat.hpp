/*
 * Copyright 2026 The verra authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "verra/rational.hpp"

namespace verra::lattice {

using algebra::BigInt;
using algebra::Rational;

class ZMat {
 public:
  ZMat() = default;
  ZMat(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("ZMat: bad shape");
  }

  static ZMat identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static ZMat from_rows(const std::vector<std::vector<long>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    ZMat m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
        throw std::invalid_argument("ZMat: ragged rows");
      for (int j = 0; j < c; ++j)
        m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  BigInt& at(int i, int j) {
    check(i, j);
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                 static_cast<std::size_t>(j)];
  }
  const BigInt& at(int i, int j) const {
    check(i, j);
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                 static_cast<std::size_t>(j)];
  }

  ZMat transposed() const {
    ZMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  std::vector<BigInt> row(int i) const {
    std::vector<BigInt> r(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r[static_cast<std::size_t>(j)] = at(i, j);
    return r;
  }

  friend ZMat operator*(const ZMat& a, const ZMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("ZMat: shape mismatch");
    ZMat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const BigInt& aik = a.at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  }

  friend bool operator==(const ZMat& a, const ZMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const ZMat& a, const ZMat& b) { return !(a == b); }

  std::string str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      s += i ? "\n[" : "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += " ";
        s += at(i, j).get_str();
      }
      s += "]";
    }
    return s;
  }

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw std::out_of_range("ZMat: index out of range");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

inline std::vector<BigInt> mat_vec(const ZMat& a, const std::vector<BigInt>& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw std::invalid_argument("mat_vec: shape mismatch");
  std::vector<BigInt> y(static_cast<std::size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      y[static_cast<std::size_t>(i)] += a.at(i, j) * x[static_cast<std::size_t>(j)];
  return y;
}

namespace detail {

inline BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// determinant (fraction-free)

inline BigInt bareiss_det(const ZMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: not square");
  const int n = m.rows();
  if (n == 0) return 1;
  ZMat a = m;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        BigInt v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = v / prev;  // exact by Bareiss
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

// U * A * V = D with U, V unimodular, D diagonal, d1 | d2 | ..., all di >= 0.
// Vinv is maintained alongside V so callers get saturations for free.
struct SmithResult {
  ZMat U, D, V, Vinv;
  int rank = 0;
  std::vector<BigInt> elementary_divisors;  // the nonzero di, in chain order
};

inline SmithResult smith_normal_form(const ZMat& a) {
  const int m = a.rows(), n = a.cols();
  SmithResult r;
  r.D = a;
  r.U = ZMat::identity(m);
  r.V = ZMat::identity(n);
  r.Vinv = ZMat::identity(n);
  ZMat& D = r.D;

  auto row_axpy = [&](int i, int j, const BigInt& c) {  // Ri += c * Rj
    for (int k = 0; k < n; ++k) D.at(i, k) += c * D.at(j, k);
    for (int k = 0; k < m; ++k) r.U.at(i, k) += c * r.U.at(j, k);
  };
  auto col_axpy = [&](int i, int j, const BigInt& c) {  // Ci += c * Cj
    for (int k = 0; k < m; ++k) D.at(k, i) += c * D.at(k, j);
    for (int k = 0; k < n; ++k) r.V.at(k, i) += c * r.V.at(k, j);
    for (int k = 0; k < n; ++k) r.Vinv.at(j, k) -= c * r.Vinv.at(i, k);
  };
  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < n; ++k) std::swap(D.at(i, k), D.at(j, k));
    for (int k = 0; k < m; ++k) std::swap(r.U.at(i, k), r.U.at(j, k));
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < m; ++k) std::swap(D.at(k, i), D.at(k, j));
    for (int k = 0; k < n; ++k) std::swap(r.V.at(k, i), r.V.at(k, j));
    for (int k = 0; k < n; ++k) std::swap(r.Vinv.at(i, k), r.Vinv.at(j, k));
  };
  auto row_negate = [&](int i) {
    for (int k = 0; k < n; ++k) D.at(i, k) = -D.at(i, k);
    for (int k = 0; k < m; ++k) r.U.at(i, k) = -r.U.at(i, k);
  };

  const int steps = std::min(m, n);
  for (int t = 0; t < steps; ++t) {
    // pivot: smallest nonzero magnitude in the trailing block
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        if (D.at(i, j) == 0) continue;
        if (pi < 0 || abs(D.at(i, j)) < abs(D.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < m; ++i) {
        if (D.at(i, t) == 0) continue;
        const BigInt q = detail::fdiv(D.at(i, t), D.at(t, t));
        row_axpy(i, t, -q);
        if (D.at(i, t) != 0) {  // remainder became the smaller pivot
          row_swap(t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (D.at(t, j) == 0) continue;
        const BigInt q = detail::fdiv(D.at(t, j), D.at(t, t));
        col_axpy(j, t, -q);
        if (D.at(t, j) != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
      if (!dirty) {
        // divisibility of the trailing block by the pivot
        for (int i = t + 1; i < m && !dirty; ++i)
          for (int j = t + 1; j < n && !dirty; ++j)
            if (D.at(i, j) % D.at(t, t) != 0) {
              row_axpy(t, i, 1);
              dirty = true;
            }
      }
    }
    if (D.at(t, t) < 0) row_negate(t);
  }

  for (int t = 0; t < steps; ++t)
    if (D.at(t, t) != 0) {
      ++r.rank;
      r.elementary_divisors.push_back(D.at(t, t));
    }
  return r;
}

// Basis of {x : A x = 0}, one generator per returned row; the span is
// saturated because the generators are columns of a unimodular matrix.
inline ZMat kernel_basis(const ZMat& a) {
  SmithResult s = smith_normal_form(a);
  const int n = a.cols();
  ZMat k(n - s.rank, n);
  for (int c = s.rank; c < n; ++c)
    for (int i = 0; i < n; ++i) k.at(c - s.rank, i) = s.V.at(i, c);
  return k;
}

// Rows of `a` span a sublattice; returns a basis (as rows) of its saturation,
// plus the index of the original span inside it via SmithResult divisors.
inline ZMat row_saturation(const ZMat& a) {
  SmithResult s = smith_normal_form(a);
  ZMat b(s.rank, a.cols());
  for (int i = 0; i < s.rank; ++i)
    for (int j = 0; j < a.cols(); ++j) b.at(i, j) = s.Vinv.at(i, j);
  return b;
}

// ---------------------------------------------------------------------------
// Hermite form (canonical row echelon over Z)

// Pivots positive, entries above each pivot reduced into [0, pivot); zero rows
// dropped. Two row spans are equal iff their forms are identical.
inline ZMat hermite_form(const ZMat& a) {
  const int m = a.rows(), n = a.cols();
  ZMat h = a;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    // reduce the column below r with gcd steps
    while (true) {
      int p = -1;
      for (int i = r; i < m; ++i)
        if (h.at(i, c) != 0 && (p < 0 || abs(h.at(i, c)) < abs(h.at(p, c))))
          p = i;
      if (p < 0) break;
      for (int j = 0; j < n; ++j) std::swap(h.at(r, j), h.at(p, j));
      bool clean = true;
      for (int i = r + 1; i < m; ++i) {
        if (h.at(i, c) == 0) continue;
        const BigInt q = detail::fdiv(h.at(i, c), h.at(r, c));
        for (int j = 0; j < n; ++j) h.at(i, j) -= q * h.at(r, j);
        if (h.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0)
      for (int j = 0; j < n; ++j) h.at(r, j) = -h.at(r, j);
    for (int i = 0; i < r; ++i) {
      const BigInt q = detail::fdiv(h.at(i, c), h.at(r, c));
      if (q == 0) continue;
      for (int j = 0; j < n; ++j) h.at(i, j) -= q * h.at(r, j);
    }
    ++r;
  }
  ZMat out(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = h.at(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// exact rational linear algebra

using QMat = std::vector<std::vector<Rational>>;

inline QMat qmat_from(const ZMat& a) {
  QMat q(static_cast<std::size_t>(a.rows()),
         std::vector<Rational>(static_cast<std::size_t>(a.cols())));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Rational(a.at(i, j));
  return q;
}

// One solution of A x = b, free coordinates pinned to zero; nullopt when
// inconsistent.
inline std::optional<std::vector<Rational>> solve_rational(
    QMat a, std::vector<Rational> b) {
  const int m = static_cast<int>(a.size());
  const int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  if (static_cast<int>(b.size()) != m)
    throw std::invalid_argument("solve_rational: shape mismatch");
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(p)]);
    std::swap(b[static_cast<std::size_t>(r)], b[static_cast<std::size_t>(p)]);
    const Rational inv = Rational(1) / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int j = c; j < n; ++j)
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * inv;
    b[static_cast<std::size_t>(r)] = b[static_cast<std::size_t>(r)] * inv;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const Rational f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      for (int j = c; j < n; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
            f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] - f * b[static_cast<std::size_t>(r)];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (!b[static_cast<std::size_t>(i)].is_zero()) return std::nullopt;
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (int i = 0; i < r; ++i)
    x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
        b[static_cast<std::size_t>(i)];
  return x;
}

inline std::optional<QMat> rational_inverse(const QMat& a) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("rational_inverse: not square");
  // [A | I] -> [I | A^-1]
  QMat w(static_cast<std::size_t>(n), std::vector<Rational>(2 * static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    w[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = Rational(1);
  }
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return std::nullopt;
    std::swap(w[static_cast<std::size_t>(c)], w[static_cast<std::size_t>(p)]);
    const Rational inv = Rational(1) / w[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    for (auto& v : w[static_cast<std::size_t>(c)]) v = v * inv;
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      const Rational f = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      for (int j = 0; j < 2 * n; ++j)
        w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
            f * w[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
    }
  }
  QMat out(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          w[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
  return out;
}

}  // namespace verra::lattice

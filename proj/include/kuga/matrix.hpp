#pragma once
// Dense exact matrices over Int/Rat: arithmetic, Gaussian elimination,
// Smith normal form with unimodular transforms, kernel lattice bases and
// lattice saturation.  Everything here is exact; no floating point.

#include "kuga/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kuga {

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;  // row-major

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {
    if (r < 0 || c < 0) throw std::invalid_argument("negative matrix dimension");
  }
  Mat(int r, int c, std::vector<T> entries) : rows(r), cols(c), a(std::move(entries)) {
    if (a.size() != static_cast<size_t>(r) * c)
      throw std::invalid_argument("matrix entry count mismatch");
  }

  T& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
  Mat<T> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

template <class T>
Mat<T> mat_add(const Mat<T>& x, const Mat<T>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum shape mismatch");
  Mat<T> z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

template <class T>
Mat<T> mat_sub(const Mat<T>& x, const Mat<T>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix diff shape mismatch");
  Mat<T> z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

template <class T>
Mat<T> mat_neg(const Mat<T>& x) {
  Mat<T> z = x;
  for (auto& v : z.a) v = -v;
  return z;
}

template <class T>
Mat<T> mat_scale(const Mat<T>& x, const T& s) {
  Mat<T> z = x;
  for (auto& v : z.a) v *= s;
  return z;
}

template <class T>
Mat<T> mat_transpose(const Mat<T>& x) {
  Mat<T> z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& x, const std::vector<T>& v) {
  if (x.cols != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<T> r(x.rows, T(0));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r[i] += x.at(i, j) * v[j];
  return r;
}

inline QMat to_rat(const IMat& m) {
  QMat q(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) q.a[i] = Rat(m.a[i]);
  return q;
}

inline QVec to_rat(const IVec& v) {
  QVec q(v.size());
  for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
  return q;
}

// Exact determinant by rational Gaussian elimination.
inline Rat det(const QMat& m0) {
  if (m0.rows != m0.cols) throw std::invalid_argument("determinant of non-square matrix");
  QMat m = m0;
  int n = m.rows;
  Rat d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) { p = r; break; }
    if (p < 0) return Rat(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Rat inv = Rat(1) / m.at(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (m.at(r, c) == 0) continue;
      Rat f = m.at(r, c) * inv;
      for (int j = c; j < n; ++j) m.at(r, j) -= f * m.at(c, j);
    }
  }
  return d;
}

inline Int det(const IMat& m) {
  Rat d = det(to_rat(m));
  return num(d);  // exact: determinant of an integer matrix is an integer
}

// Row echelon rank over the rationals.
inline int rank(const QMat& m0) {
  QMat m = m0;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (int i = r + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

inline int rank(const IMat& m) { return rank(to_rat(m)); }

// One exact solution of A x = b, free variables set to zero; nullopt if
// the system is inconsistent.
inline std::optional<QVec> solve(const QMat& a0, const QVec& b0) {
  if (a0.rows != static_cast<int>(b0.size())) throw std::invalid_argument("solve shape mismatch");
  QMat m(a0.rows, a0.cols + 1);
  for (int i = 0; i < a0.rows; ++i) {
    for (int j = 0; j < a0.cols; ++j) m.at(i, j) = a0.at(i, j);
    m.at(i, a0.cols) = b0[i];
  }
  int n = a0.cols;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j <= n; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (int j = c; j <= n; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j <= n; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < m.rows; ++i)
    if (m.at(i, n) != 0) return std::nullopt;
  QVec x(n, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = m.at(i, n);
  return x;
}

// Rational kernel basis (columns x with A x = 0), one vector per free column.
inline std::vector<QVec> kernel_basis(const QMat& a0) {
  QMat m = a0;
  int n = m.cols;
  std::vector<int> pivot_of_col(n, -1);
  int r = 0;
  for (int c = 0; c < n && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (int j = c; j < n; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivot_of_col[c] = r;
    ++r;
  }
  std::vector<QVec> basis;
  for (int c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    QVec v(n, Rat(0));
    v[c] = Rat(1);
    for (int cc = 0; cc < n; ++cc)
      if (pivot_of_col[cc] >= 0) v[cc] = -m.at(pivot_of_col[cc], c);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Int vec_content(const IVec& v) {
  Int g = 0;
  for (const auto& x : v) g = int_gcd(g, x);
  return g;
}

// Primitive representative of a nonzero integer vector (same direction).
inline IVec primitive(IVec v) {
  Int g = vec_content(v);
  if (g == 0) throw std::invalid_argument("primitive() of zero vector");
  if (g != 1)
    for (auto& x : v) x /= g;
  return v;
}

inline bool is_zero_vec(const IVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Smith normal form: U * A * V = D with U, V unimodular, D diagonal with
// d1 | d2 | ... | dr.  Uinv is maintained alongside U.
struct SmithForm {
  IMat d, u, uinv, v;
};

inline SmithForm smith_form(const IMat& a0) {
  IMat d = a0;
  int m = d.rows, n = d.cols;
  IMat u = IMat::identity(m), uinv = IMat::identity(m), v = IMat::identity(n);

  auto row_swap = [&](int i, int j) {
    for (int c = 0; c < n; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < m; ++c) std::swap(u.at(i, c), u.at(j, c));
    for (int r = 0; r < m; ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
  };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < m; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (int r = 0; r < n; ++r) std::swap(v.at(r, i), v.at(r, j));
  };
  auto row_addmul = [&](int dst, int src, const Int& k) {  // row_dst += k * row_src
    for (int c = 0; c < n; ++c) d.at(dst, c) += k * d.at(src, c);
    for (int c = 0; c < m; ++c) u.at(dst, c) += k * u.at(src, c);
    for (int r = 0; r < m; ++r) uinv.at(r, src) -= k * uinv.at(r, dst);
  };
  auto col_addmul = [&](int dst, int src, const Int& k) {  // col_dst += k * col_src
    for (int r = 0; r < m; ++r) d.at(r, dst) += k * d.at(r, src);
    for (int r = 0; r < n; ++r) v.at(r, dst) += k * v.at(r, src);
  };
  auto row_negate = [&](int i) {
    for (int c = 0; c < n; ++c) d.at(i, c) = -d.at(i, c);
    for (int c = 0; c < m; ++c) u.at(i, c) = -u.at(i, c);
    for (int r = 0; r < m; ++r) uinv.at(r, i) = -uinv.at(r, i);
  };

  int t = 0;
  while (t < m && t < n) {
    // locate a nonzero pivot with minimal absolute value
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        if (d.at(i, j) == 0) continue;
        Int av = abs(d.at(i, j));
        if (pi < 0 || av < best) { pi = i; pj = j; best = av; }
      }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < m; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);
        row_addmul(i, t, -q);
        if (d.at(i, t) != 0) {  // nonzero remainder: smaller pivot found
          row_swap(t, i);
          again = true;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        col_addmul(j, t, -q);
        if (d.at(t, j) != 0) {
          col_swap(t, j);
          again = true;
        }
      }
    }
    if (d.at(t, t) < 0) row_negate(t);
    ++t;
  }
  // enforce the divisibility chain d_i | d_{i+1}
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i + 1 < t; ++i) {
      if (d.at(i + 1, i + 1) % d.at(i, i) == 0) continue;
      // fold entry (i+1, i+1) into column i, re-reduce the 2x2 block
      col_addmul(i, i + 1, Int(1));
      int s = i;
      while (s + 1 < m && s + 1 < n) {
        bool again = true;
        while (again) {
          again = false;
          for (int r = s + 1; r < m; ++r) {
            if (d.at(r, s) == 0) continue;
            Int q = d.at(r, s) / d.at(s, s);
            row_addmul(r, s, -q);
            if (d.at(r, s) != 0) { row_swap(s, r); again = true; }
          }
          for (int c = s + 1; c < n; ++c) {
            if (d.at(s, c) == 0) continue;
            Int q = d.at(s, c) / d.at(s, s);
            col_addmul(c, s, -q);
            if (d.at(s, c) != 0) { col_swap(s, c); again = true; }
          }
        }
        if (d.at(s, s) < 0) row_negate(s);
        ++s;
        bool rest_zero = true;
        for (int r = s; r < m && rest_zero; ++r)
          for (int c = s; c < n && rest_zero; ++c)
            if (d.at(r, c) != 0) rest_zero = false;
        if (rest_zero) break;
        int pi = -1, pj = -1;
        Int best = 0;
        for (int r = s; r < m; ++r)
          for (int c = s; c < n; ++c) {
            if (d.at(r, c) == 0) continue;
            Int av = abs(d.at(r, c));
            if (pi < 0 || av < best) { pi = r; pj = c; best = av; }
          }
        row_swap(s, pi);
        col_swap(s, pj);
      }
      changed = true;
    }
  }
  return {d, u, uinv, v};
}

// Basis of the integer kernel lattice {x : A x = 0} (saturated by construction):
// the columns of V corresponding to zero diagonal entries of the Smith form.
inline std::vector<IVec> kernel_lattice(const IMat& a) {
  SmithForm s = smith_form(a);
  int r = 0;
  int t = std::min(a.rows, a.cols);
  while (r < t && s.d.at(r, r) != 0) ++r;
  std::vector<IVec> basis;
  for (int j = r; j < a.cols; ++j) {
    IVec col(a.cols);
    for (int i = 0; i < a.cols; ++i) col[i] = s.v.at(i, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

// Basis of the saturation of the column lattice of A inside the ambient
// lattice: the first rank(A) columns of Uinv from U A V = D.
inline std::vector<IVec> saturation_basis(const IMat& a) {
  SmithForm s = smith_form(a);
  int r = 0;
  int t = std::min(a.rows, a.cols);
  while (r < t && s.d.at(r, r) != 0) ++r;
  std::vector<IVec> basis;
  for (int j = 0; j < r; ++j) {
    IVec col(a.rows);
    for (int i = 0; i < a.rows; ++i) col[i] = s.uinv.at(i, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

// Invariant factors (nonzero diagonal of the Smith form).
inline std::vector<Int> invariant_factors(const IMat& a) {
  SmithForm s = smith_form(a);
  std::vector<Int> f;
  int t = std::min(a.rows, a.cols);
  for (int i = 0; i < t && s.d.at(i, i) != 0; ++i) f.push_back(s.d.at(i, i));
  return f;
}

}  // namespace kuga

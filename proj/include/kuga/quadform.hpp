#pragma once
// Integer quadratic forms: exact PSD decision, rank and saturated radical,
// and the minimum of x^t Q x over nonzero integer vectors via Fincke-Pohst
// enumeration in exact arithmetic.

#include "kuga/matrix.hpp"
#include "kuga/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace kuga {

struct QuadForm {
  IMat m;

  QuadForm() = default;
  explicit QuadForm(IMat mat) : m(std::move(mat)) {
    if (m.rows != m.cols) throw std::invalid_argument("quadratic form must be square");
    for (int i = 0; i < m.rows; ++i)
      for (int j = i + 1; j < m.cols; ++j)
        if (m.at(i, j) != m.at(j, i)) throw std::invalid_argument("quadratic form must be symmetric");
  }

  int dim() const { return m.rows; }

  Int eval(const IVec& x) const {
    if (static_cast<int>(x.size()) != dim()) throw std::invalid_argument("eval dimension mismatch");
    Int s = 0;
    for (int i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim(); ++j) s += x[i] * m.at(i, j) * x[j];
    }
    return s;
  }

  bool operator==(const QuadForm& o) const { return m == o.m; }
};

inline QuadForm diag_form(const IVec& d) {
  IMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return QuadForm(m);
}

// rank-1 form xi xi^t
inline QuadForm rank1_form(const IVec& xi) {
  int n = static_cast<int>(xi.size());
  IMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = xi[i] * xi[j];
  return QuadForm(m);
}

// Exact PSD test: eliminate positive diagonal pivots; a PSD matrix whose
// diagonal has gone nonpositive must be identically zero on the active block.
inline bool is_psd(const QMat& sym) {
  if (sym.rows != sym.cols) throw std::invalid_argument("is_psd of non-square matrix");
  int n = sym.rows;
  QMat s = sym;
  std::vector<bool> active(n, true);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (s.at(i, i) < 0) return false;
      if (s.at(i, i) > 0 && p < 0) p = i;
    }
    if (p < 0) {
      for (int i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (int j = 0; j < n; ++j)
          if (active[j] && s.at(i, j) != 0) return false;
      }
      return true;
    }
    Rat inv = Rat(1) / s.at(p, p);
    for (int i = 0; i < n; ++i) {
      if (!active[i] || i == p) continue;
      for (int j = 0; j < n; ++j) {
        if (!active[j] || j == p) continue;
        s.at(i, j) -= s.at(i, p) * inv * s.at(p, j);
      }
    }
    active[p] = false;
  }
  return true;
}

inline bool is_psd(const QuadForm& q) { return is_psd(to_rat(q.m)); }

struct RankRadical {
  int rank = 0;
  std::vector<IVec> radical_basis;  // saturated, each vector sign-normalized
};

inline IVec sign_normalize(IVec v) {
  for (const auto& x : v) {
    if (x > 0) return v;
    if (x < 0) {
      for (auto& y : v) y = -y;
      return v;
    }
  }
  return v;
}

inline RankRadical rank_and_radical(const QuadForm& q) {
  RankRadical out;
  out.rank = rank(q.m);
  for (auto& v : kernel_lattice(q.m)) out.radical_basis.push_back(sign_normalize(std::move(v)));
  std::sort(out.radical_basis.begin(), out.radical_basis.end());
  return out;
}

struct QuadMin {
  Int value;
  IVec witness;
};

namespace detail {

// q = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 for positive definite q.
struct UduDecomposition {
  QVec d;
  QMat u;
};

inline UduDecomposition udu_decompose(const QuadForm& q) {
  int n = q.dim();
  QMat s = to_rat(q.m);
  UduDecomposition out;
  out.d.assign(n, Rat(0));
  out.u = QMat::identity(n);
  for (int i = 0; i < n; ++i) {
    if (s.at(i, i) <= 0) throw std::logic_error("udu_decompose expects positive definite input");
    out.d[i] = s.at(i, i);
    for (int j = i + 1; j < n; ++j) out.u.at(i, j) = s.at(i, j) / s.at(i, i);
    for (int j = i + 1; j < n; ++j)
      for (int k = i + 1; k < n; ++k)
        s.at(j, k) -= s.at(i, j) * s.at(i, k) / s.at(i, i);
  }
  return out;
}

// Depth-first Fincke-Pohst over levels n-1 .. 0; collects every nonzero x
// with q(x) <= bound.
inline void fp_enumerate(const UduDecomposition& dec, int level, IVec& x,
                         const Rat& used, const Rat& bound, std::vector<IVec>& hits) {
  int n = static_cast<int>(dec.d.size());
  if (level < 0) {
    for (const auto& xi : x)
      if (xi != 0) { hits.push_back(x); break; }
    return;
  }
  // shift S = sum_{j > level} u_{level,j} x_j
  Rat s(0);
  for (int j = level + 1; j < n; ++j)
    if (x[j] != 0) s += dec.u.at(level, j) * Rat(x[j]);
  Rat rem = bound - used;
  if (rem < 0) return;
  // integers t with d_level (t + s)^2 <= rem form an interval around -s
  Int t0 = rat_floor(-s + Rat(1, 2));  // nearest integer to -s
  auto term = [&](const Int& t) { return dec.d[level] * (Rat(t) + s) * (Rat(t) + s); };
  if (term(t0) > rem) return;
  for (Int t = t0; term(t) <= rem; ++t) {
    x[level] = t;
    fp_enumerate(dec, level - 1, x, used + term(t), bound, hits);
  }
  for (Int t = t0 - 1; term(t) <= rem; --t) {
    x[level] = t;
    fp_enumerate(dec, level - 1, x, used + term(t), bound, hits);
  }
  x[level] = 0;
}

}  // namespace detail

// Minimum of x^t q x over nonzero integer x.  PSD with nonzero radical gives
// (0, radical vector); positive definite forms are enumerated exactly with
// the smallest diagonal entry as the initial radius.  The witness is the
// lexicographically greatest sign-normalized minimizer.
inline QuadMin quad_min(const QuadForm& q) {
  if (q.dim() == 0) throw std::invalid_argument("quad_min of empty form");
  if (!is_psd(q)) throw std::invalid_argument("quad_min requires a PSD form");
  RankRadical rr = rank_and_radical(q);
  if (!rr.radical_basis.empty()) return {Int(0), rr.radical_basis.front()};

  detail::UduDecomposition dec = detail::udu_decompose(q);
  Int diag_min = q.m.at(0, 0);
  for (int i = 1; i < q.dim(); ++i) diag_min = std::min(diag_min, q.m.at(i, i));

  std::vector<IVec> hits;
  IVec x(q.dim(), Int(0));
  detail::fp_enumerate(dec, q.dim() - 1, x, Rat(0), Rat(diag_min), hits);
  if (hits.empty()) throw std::logic_error("Fincke-Pohst radius excluded its own witness");

  Int best = q.eval(hits.front());
  for (const auto& h : hits) best = std::min(best, q.eval(h));
  IVec witness;
  for (const auto& h : hits) {
    if (q.eval(h) != best) continue;
    IVec c = sign_normalize(h);
    if (witness.empty() || c > witness) witness = std::move(c);
  }
  return {best, witness};
}

}  // namespace kuga

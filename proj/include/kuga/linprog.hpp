#pragma once
// Exact rational linear programming: dense two-phase simplex with Bland's
// rule.  Small dense problems only; every cone membership, face and
// feasibility certificate in the tree routes through here.

#include "kuga/matrix.hpp"
#include "kuga/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace kuga {

enum class Rel { LE, EQ, GE };

struct LinConstraint {
  QVec a;
  Rel rel = Rel::EQ;
  Rat rhs;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  QVec x;        // original variables, valid when status == Optimal
  Rat objective; // min value of c.x
};

namespace detail {

struct Tableau {
  int m = 0, n = 0;                    // constraint rows, columns (excl. rhs)
  std::vector<QVec> a;                 // m rows of n entries
  QVec b;                              // rhs, kept >= 0
  std::vector<int> basis;              // basis[i] = column basic in row i

  void pivot(int r, int c) {
    Rat inv = Rat(1) / a[r][c];
    for (int j = 0; j < n; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    basis[r] = c;
  }

  // Bland's rule simplex on the current basis for cost vector c (length n,
  // entries for non-candidate columns ignored via the allowed mask).
  // Returns false when unbounded.
  bool optimize(const QVec& cost, const std::vector<bool>& allowed, Rat& value, QVec& reduced) {
    while (true) {
      // reduced costs r_j = c_j - c_B . B^{-1} A_j
      for (int j = 0; j < n; ++j) {
        Rat r = cost[j];
        for (int i = 0; i < m; ++i)
          if (cost[basis[i]] != 0) r -= cost[basis[i]] * a[i][j];
        reduced[j] = r;
      }
      int enter = -1;
      for (int j = 0; j < n; ++j)
        if (allowed[j] && reduced[j] < 0) { enter = j; break; }
      if (enter < 0) break;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Rat ratio = b[i] / a[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave]))
          { leave = i; best = ratio; }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    value = 0;
    for (int i = 0; i < m; ++i) value += cost[basis[i]] * b[i];
    return true;
  }
};

}  // namespace detail

// Minimize c.x subject to the constraints; nonneg[i] marks x_i >= 0, other
// variables are free (internally split).  Pass maximize=true to maximize.
inline LPSolution lp_solve(int nvars, const std::vector<LinConstraint>& cons,
                           const QVec& c, const std::vector<bool>& nonneg,
                           bool maximize = false) {
  if (static_cast<int>(c.size()) != nvars || static_cast<int>(nonneg.size()) != nvars)
    throw std::invalid_argument("lp_solve: vector length mismatch");
  for (const auto& con : cons)
    if (static_cast<int>(con.a.size()) != nvars)
      throw std::invalid_argument("lp_solve: constraint length mismatch");

  // column layout: per variable one column (nonneg) or a split pair (free),
  // then one slack per inequality, then one artificial per row
  std::vector<int> col_of(nvars), neg_col_of(nvars, -1);
  int ncols = 0;
  for (int i = 0; i < nvars; ++i) {
    col_of[i] = ncols++;
    if (!nonneg[i]) neg_col_of[i] = ncols++;
  }
  int slack_base = ncols;
  for (const auto& con : cons)
    if (con.rel != Rel::EQ) ++ncols;
  int art_base = ncols;
  int m = static_cast<int>(cons.size());
  ncols += m;

  detail::Tableau t;
  t.m = m;
  t.n = ncols;
  t.a.assign(m, QVec(ncols, Rat(0)));
  t.b.assign(m, Rat(0));
  t.basis.assign(m, -1);

  int slack_idx = slack_base;
  for (int i = 0; i < m; ++i) {
    const auto& con = cons[i];
    bool flip = con.rhs < 0;
    Rat sgn = flip ? Rat(-1) : Rat(1);
    for (int v = 0; v < nvars; ++v) {
      t.a[i][col_of[v]] = sgn * con.a[v];
      if (neg_col_of[v] >= 0) t.a[i][neg_col_of[v]] = -sgn * con.a[v];
    }
    t.b[i] = sgn * con.rhs;
    if (con.rel != Rel::EQ) {
      // LE gets +slack, GE gets -slack (before the sign flip)
      Rat s = (con.rel == Rel::LE) ? Rat(1) : Rat(-1);
      t.a[i][slack_idx++] = sgn * s;
    }
    t.a[i][art_base + i] = 1;
    t.basis[i] = art_base + i;
  }

  QVec reduced(ncols, Rat(0));
  std::vector<bool> allowed(ncols, true);

  // phase 1: minimize the artificial total
  QVec phase1(ncols, Rat(0));
  for (int i = 0; i < m; ++i) phase1[art_base + i] = 1;
  Rat value;
  if (!t.optimize(phase1, allowed, value, reduced))
    throw std::logic_error("phase-1 objective unbounded");
  if (value != 0) return {LPStatus::Infeasible, {}, Rat(0)};

  // drive leftover artificials out of the basis; drop redundant rows
  for (int i = 0; i < t.m;) {
    if (t.basis[i] < art_base) { ++i; continue; }
    int j = 0;
    while (j < art_base && t.a[i][j] == 0) ++j;
    if (j < art_base) {
      t.pivot(i, j);
      ++i;
    } else {
      t.a.erase(t.a.begin() + i);
      t.b.erase(t.b.begin() + i);
      t.basis.erase(t.basis.begin() + i);
      --t.m;
    }
  }
  for (int i = 0; i < m; ++i) allowed[art_base + i] = false;

  // phase 2
  QVec cost(ncols, Rat(0));
  for (int v = 0; v < nvars; ++v) {
    Rat cv = maximize ? -c[v] : c[v];
    cost[col_of[v]] = cv;
    if (neg_col_of[v] >= 0) cost[neg_col_of[v]] = -cv;
  }
  if (!t.optimize(cost, allowed, value, reduced))
    return {LPStatus::Unbounded, {}, Rat(0)};

  QVec x(nvars, Rat(0));
  for (int i = 0; i < t.m; ++i) {
    int bcol = t.basis[i];
    for (int v = 0; v < nvars; ++v) {
      if (bcol == col_of[v]) x[v] += t.b[i];
      if (bcol == neg_col_of[v]) x[v] -= t.b[i];
    }
  }
  Rat obj = maximize ? -value : value;
  return {LPStatus::Optimal, std::move(x), obj};
}

inline bool lp_feasible(int nvars, const std::vector<LinConstraint>& cons,
                        const std::vector<bool>& nonneg) {
  QVec zero(nvars, Rat(0));
  return lp_solve(nvars, cons, zero, nonneg).status == LPStatus::Optimal;
}

// Feasibility with every variable nonnegative.
inline bool lp_feasible_nonneg(int nvars, const std::vector<LinConstraint>& cons) {
  return lp_feasible(nvars, cons, std::vector<bool>(nvars, true));
}

// Feasibility with every variable free.
inline bool lp_feasible_free(int nvars, const std::vector<LinConstraint>& cons) {
  return lp_feasible(nvars, cons, std::vector<bool>(nvars, false));
}

}  // namespace kuga

#pragma once
// Perfect cone decomposition at small rank and its lift to the mixed cone
// C-tilde.  Over a rank-1 base the lift is the fiberwise paving by integer
// boxes (staircase and cube fans); over a rank-2 base it is the quotient of
// the star of the corner ray in the rank-3 perfect cone fan.  Cones whose
// generators touch the window boundary are discarded as artifacts of the
// truncation.

#include "kuga/cones.hpp"
#include "kuga/linprog.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

namespace kuga {

namespace detail {

// b -> h^t b h on flattened symmetric coordinates
inline Cone transform_form_cone(const Cone& c, const IMat& h, int gdd) {
  std::vector<IVec> imaged;
  for (const auto& g : c.gens()) {
    QuadForm b = sym_unflatten(g, gdd);
    QuadForm hb(mat_mul(mat_transpose(h), mat_mul(b.m, h)));
    imaged.push_back(sym_flatten(hb));
  }
  return Cone(c.ambient_rank, imaged);
}

inline Int max_abs_entry(const Cone& c) {
  Int m = 0;
  for (const auto& g : c.gens())
    for (const auto& x : g)
      if (abs(x) > m) m = abs(x);
  return m;
}

}  // namespace detail

// Base fan: g''=1 is the single ray (1); g''=2 starts from the principal
// cone on x1^2, x2^2, (x1+x2)^2 and adds GL_2(Z)-translates until the
// window of forms (all generator entries strictly below `window`) is
// covered.
inline Fan perfect_cone_fan(int gdd, int window = 2) {
  if (gdd < 1) throw std::invalid_argument("perfect_cone_fan: rank must be positive");
  if (gdd > 2) throw std::domain_error("perfect_cone_fan: rank > 2 not supported");
  if (window < 2) throw std::invalid_argument("perfect_cone_fan: window must be >= 2");
  Fan f;
  f.ambient_rank = sym_flat_dim(gdd);
  if (gdd == 1) {
    f.cones.push_back(Cone(1, {IVec{Int(1)}}));
    return f;
  }
  Cone principal(3, {IVec{Int(1), Int(0), Int(0)}, IVec{Int(0), Int(0), Int(1)},
                     IVec{Int(1), Int(1), Int(1)}});
  std::vector<IMat> words;
  {
    IMat s(2, 2), t(2, 2), tinv(2, 2), d(2, 2);
    s.at(0, 1) = -1; s.at(1, 0) = 1;
    t.at(0, 0) = 1; t.at(0, 1) = 1; t.at(1, 1) = 1;
    tinv.at(0, 0) = 1; tinv.at(0, 1) = -1; tinv.at(1, 1) = 1;
    d.at(0, 0) = 1; d.at(1, 1) = -1;
    words = {s, t, tinv, d};
  }
  Int cap = Int(2) * window + 2;    // explore past the window so adjacency
                                    // through boundary cones is not cut off
  std::set<Cone> visited{principal};
  std::queue<Cone> work;
  work.push(principal);
  while (!work.empty()) {
    Cone cur = work.front();
    work.pop();
    for (const auto& h : words) {
      Cone img = detail::transform_form_cone(cur, h, 2);
      if (detail::max_abs_entry(img) > cap) continue;
      if (visited.insert(img).second) work.push(img);
    }
  }
  for (const auto& c : visited)
    if (detail::max_abs_entry(c) < window) f.cones.push_back(c);
  f.canonicalize();
  return f;
}

namespace detail {

// One integer slab cell of the fiber over a base cone: the covector range
// [lo_i, hi_i] attained by each ray direction xi_i over the cell.
struct FiberCell {
  std::vector<Int> lo, hi;
};

// Cells of the arrangement {c_i <= xi_i . mu <= c_i + 1}: keep the choices
// of integer offsets whose cell is full-dimensional (positive margin).
inline std::vector<FiberCell> fiber_cells(const std::vector<IVec>& xis, int gdd, int window) {
  int k = static_cast<int>(xis.size());
  std::vector<FiberCell> cells;
  std::vector<Int> c(k, Int(-window));
  while (true) {
    // max-margin feasibility: xi_i.mu in [c_i + t, c_i + 1 - t], t > 0
    std::vector<LinConstraint> cons;
    for (int i = 0; i < k; ++i) {
      QVec row = to_rat(xis[i]);
      QVec lorow = row, hirow = row;
      lorow.push_back(Rat(-1));
      cons.push_back({lorow, Rel::GE, Rat(c[i])});
      hirow.push_back(Rat(1));
      cons.push_back({hirow, Rel::LE, Rat(c[i]) + 1});
    }
    QVec obj(gdd + 1, Rat(0));
    obj[gdd] = Rat(1);
    std::vector<bool> nonneg(gdd + 1, false);
    nonneg[gdd] = true;
    LPSolution sol = lp_solve(gdd + 1, cons, obj, nonneg, /*maximize=*/true);
    if (sol.status == LPStatus::Optimal && sol.objective > 0) {
      // exact covector range over the cell, per ray
      FiberCell cell;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        std::vector<LinConstraint> box;
        for (int j = 0; j < k; ++j) {
          QVec row = to_rat(xis[j]);
          box.push_back({row, Rel::GE, Rat(c[j])});
          box.push_back({row, Rel::LE, Rat(c[j]) + 1});
        }
        QVec cobj = to_rat(xis[i]);
        std::vector<bool> free_all(gdd, false);
        LPSolution mn = lp_solve(gdd, box, cobj, free_all, /*maximize=*/false);
        LPSolution mx = lp_solve(gdd, box, cobj, free_all, /*maximize=*/true);
        if (mn.status != LPStatus::Optimal || mx.status != LPStatus::Optimal ||
            !is_integer(mn.objective) || !is_integer(mx.objective)) {
          ok = false;
          break;
        }
        cell.lo.push_back(num(mn.objective));
        cell.hi.push_back(num(mx.objective));
      }
      if (ok) cells.push_back(std::move(cell));
    }
    int i = 0;
    while (i < k && c[i] == Int(window - 1)) c[i++] = -window;
    if (i == k) break;
    ++c[i];
  }
  return cells;
}

}  // namespace detail

namespace detail {

// Rank-1 forms on the "consecutive run" vectors e_i + .. + e_j span the
// principal perfect cone (the minimal vectors of the A_r form); its
// GL_r(Z)-translates make up the full perfect cone fan in ranks <= 3.
inline Cone principal_run_cone(int r) {
  std::vector<IVec> gens;
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      IVec zeta(r, Int(0));
      for (int t = i; t <= j; ++t) zeta[t] = 1;
      gens.push_back(sym_flatten(rank1_form(zeta)));
    }
  return Cone(sym_flat_dim(r), gens);
}

inline std::set<Cone> bfs_form_translates(const Cone& start, const std::vector<IMat>& words,
                                          int gdd, const Int& cap) {
  std::set<Cone> visited{start};
  std::queue<Cone> work;
  work.push(start);
  while (!work.empty()) {
    Cone cur = work.front();
    work.pop();
    for (const auto& h : words) {
      Cone img = transform_form_cone(cur, h, gdd);
      if (max_abs_entry(img) > cap) continue;
      if (visited.insert(img).second) work.push(img);
    }
  }
  return visited;
}

inline std::vector<IMat> gl_word_generators(int r) {
  std::vector<IMat> words;
  for (int i = 0; i + 1 < r; ++i) {   // adjacent transpositions
    IMat p = IMat::identity(r);
    p.at(i, i) = 0; p.at(i + 1, i + 1) = 0;
    p.at(i, i + 1) = 1; p.at(i + 1, i) = 1;
    words.push_back(p);
  }
  IMat flip = IMat::identity(r);      // one sign flip
  flip.at(0, 0) = -1;
  words.push_back(flip);
  IMat sp = IMat::identity(r), sm = IMat::identity(r);
  sp.at(0, 1) = 1;                    // shears; conjugates by the
  sm.at(0, 1) = -1;                   // transpositions give the rest
  words.push_back(sp);
  words.push_back(sm);
  return words;
}

}  // namespace detail

// Lifted fan over the perfect cone fan.
//
// For a rank-1 base the fiber paving by integer boxes is exact: maximal
// cones are spanned by (1; c_1..c_n) over the corners of each unit box, the
// classical staircase (n=1) and cube (n=2) fans.
//
// For a rank-2 base with one covector slot, the fan is the star of the
// corner ray rho = (e_3 e_3^t) in the rank-3 perfect cone fan, quotiented
// by rho: a lifted point (b; l) is the corner-entry-free part of a rank-3
// form, and the quotient of the star is a fan by construction.  Base cones
// sigma x {0} arise as faces in both cases.
inline Fan lifted_fan(int gdd, int n, int window) {
  if (gdd < 1) throw std::invalid_argument("lifted_fan: rank must be positive");
  if (gdd > 2) throw std::domain_error("lifted_fan: rank > 2 not supported");
  if (n < 1) throw std::invalid_argument("lifted_fan: need at least one covector slot");
  if (window < 2) throw std::invalid_argument("lifted_fan: window must be >= 2");
  int flat = lifted_flat_dim(gdd, n);
  std::set<Cone> out;
  if (gdd == 1) {
    Fan base = perfect_cone_fan(gdd, window);
    for (const auto& sigma : base.cones) {
      std::vector<IVec> xis{IVec{Int(1)}};
      auto cells = detail::fiber_cells(xis, 1, window);
      std::vector<size_t> pick(n, 0);
      if (cells.empty()) continue;
      while (true) {
        std::vector<IVec> gens;
        std::vector<int> bit(n, 0);
        while (true) {
          IVec v = sigma.gens()[0];
          for (int j = 0; j < n; ++j)
            v.push_back(bit[j] ? cells[pick[j]].hi[0] : cells[pick[j]].lo[0]);
          gens.push_back(std::move(v));
          int j = 0;
          while (j < n && bit[j] == 1) bit[j++] = 0;
          if (j == n) break;
          bit[j] = 1;
        }
        bool inside = true;
        for (const auto& g : gens)
          for (const auto& x : g)
            if (abs(x) >= window) { inside = false; break; }
        if (inside) out.insert(Cone(flat, gens));
        size_t j = 0;
        while (j < static_cast<size_t>(n) && pick[j] + 1 == cells.size()) pick[j++] = 0;
        if (j == static_cast<size_t>(n)) break;
        ++pick[j];
      }
    }
  } else {
    if (n != 1)
      throw std::domain_error("lifted_fan: rank-2 base supports a single covector slot");
    Cone principal3 = detail::principal_run_cone(3);
    // a kept cone's full entries are at most (window-1)^2 (the corner entry
    // of a lifted generator is c^2); the slack keeps the walk connected
    // through boundary translates
    Int cap = Int(window - 1) * (window - 1) + 2;
    auto translates = detail::bfs_form_translates(principal3, detail::gl_word_generators(3), 3, cap);
    IVec corner(3, Int(0));
    corner[2] = 1;
    IVec rho = sym_flatten(rank1_form(corner));
    // rank-3 flat order (B11,B12,B13,B22,B23,B33) -> (b11,b12,b22,l1,l2)
    const int keep[5] = {0, 1, 3, 2, 4};
    for (const auto& sigma : translates) {
      const auto& gens3 = sigma.gens();
      if (std::find(gens3.begin(), gens3.end(), rho) == gens3.end()) continue;
      std::vector<IVec> proj;
      bool inside = true;
      for (const auto& g : gens3) {
        if (g == rho) continue;
        IVec v(5);
        for (int t = 0; t < 5; ++t) {
          v[t] = g[keep[t]];
          if (abs(v[t]) >= window) inside = false;
        }
        proj.push_back(std::move(v));
      }
      if (inside) out.insert(Cone(flat, proj));
    }
  }
  if (out.empty()) throw std::runtime_error("lifted_fan: window produced no interior cones");
  Fan f;
  f.ambient_rank = flat;
  f.cones.assign(out.begin(), out.end());
  f.base_projection = lifted_projection_matrix(gdd, n);
  return f;
}

struct BaseConeReport {
  bool ok = true;
  std::vector<Cone> missing;
};

// Condition (iv): every base cone, lifted with zero covector part, must be a
// cone of the lifted fan (a stored cone or a face of one).
inline BaseConeReport base_cone_inclusion(const Fan& tilde, const Fan& base, int gdd, int n) {
  BaseConeReport rep;
  for (const auto& sigma : base.cones) {
    std::vector<IVec> gens;
    for (const auto& g : sigma.gens()) {
      IVec v = g;
      v.resize(lifted_flat_dim(gdd, n), Int(0));
      gens.push_back(std::move(v));
    }
    Cone lifted(lifted_flat_dim(gdd, n), gens);
    if (!tilde.has_cone(lifted)) {
      rep.ok = false;
      rep.missing.push_back(sigma);
    }
  }
  return rep;
}

}  // namespace kuga

#pragma once
// Toric singularity checks and smooth refinement for low-dimensional cones.
// Canonicity is decided through the Q-Gorenstein covector m (m.v = 1 on all
// primitive ray generators): the cone is canonical iff the bounded slab
// {v in cone : m.v < 1} contains no nonzero lattice point.  Refinement uses
// Hirzebruch-Jung continued fractions in dimension 2 and repeated stellar
// subdivision at a minimal box point in dimension 3.

#include "kuga/cones.hpp"
#include "kuga/matrix.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kuga {

enum class ToricVerdict { Smooth, Canonical, NotCanonical, NotQGorenstein };

inline const char* to_string(ToricVerdict v) {
  switch (v) {
    case ToricVerdict::Smooth: return "smooth";
    case ToricVerdict::Canonical: return "canonical";
    case ToricVerdict::NotCanonical: return "not_canonical";
    case ToricVerdict::NotQGorenstein: return "not_qgorenstein";
  }
  return "?";
}

struct ToricReport {
  ToricVerdict verdict = ToricVerdict::Smooth;
  std::optional<QVec> m;               // supporting covector, when it exists
  std::optional<IVec> violating_point; // nonzero lattice point with m.v < 1
};

// smooth iff simplicial and the generators extend to a lattice basis
// (all Smith invariant factors 1; for full-rank cones, |det| = 1)
inline bool is_smooth_cone(const Cone& c) {
  if (!c.is_simplicial()) return false;
  if (c.dim() == 0) return true;
  IMat g = c.gen_matrix();
  if (g.rows == g.cols) return abs(det(g)) == 1;
  for (const auto& f : invariant_factors(g))
    if (f != 1) return false;
  return true;
}

namespace detail {

inline bool fits_i64(const Int& x) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  return x >= lo && x <= hi;
}

// Exact membership data for a simplicial cone, reduced to a full-rank row
// subset: t = adj(M) v_rows / det, plus a span check against all rows.
struct SimplicialMembership {
  IMat gens;        // ambient x k
  std::vector<int> rows;
  IMat adj;         // k x k adjugate of the selected row square
  Int dval;         // determinant of the row square, > 0 after orientation
  bool i64 = false; // all data fits comfortably in int64
  std::vector<long long> adj64, gens64;
  long long dval64 = 0;

  static std::optional<SimplicialMembership> build(const Cone& c) {
    if (!c.is_simplicial()) return std::nullopt;
    SimplicialMembership sm;
    sm.gens = c.gen_matrix();
    int k = sm.gens.cols;
    // greedy full-rank row subset
    QMat acc(0, k);
    for (int r = 0; r < sm.gens.rows && static_cast<int>(sm.rows.size()) < k; ++r) {
      QMat trial(acc.rows + 1, k);
      for (int i = 0; i < acc.rows; ++i)
        for (int j = 0; j < k; ++j) trial.at(i, j) = acc.at(i, j);
      for (int j = 0; j < k; ++j) trial.at(acc.rows, j) = Rat(sm.gens.at(r, j));
      if (rank(trial) == trial.rows) {
        acc = trial;
        sm.rows.push_back(r);
      }
    }
    if (static_cast<int>(sm.rows.size()) != k) return std::nullopt;
    IMat sq(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sq.at(i, j) = sm.gens.at(sm.rows[i], j);
    // adjugate via cofactors (k <= 3 in practice, exact for any k via minors)
    sm.dval = det(sq);
    sm.adj = IMat(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        IMat minor(k - 1, k - 1);
        for (int r = 0, rr = 0; r < k; ++r) {
          if (r == j) continue;
          for (int cc = 0, c2 = 0; cc < k; ++cc) {
            if (cc == i) continue;
            minor.at(rr, c2++) = sq.at(r, cc);
          }
          ++rr;
        }
        Int cof = (k == 1) ? Int(1) : det(minor);
        if ((i + j) % 2 == 1) cof = -cof;
        sm.adj.at(i, j) = cof;
      }
    if (sm.dval < 0) {
      sm.dval = -sm.dval;
      for (auto& x : sm.adj.a) x = -x;
    }
    const Int lim = Int(1) << 40;
    bool small = abs(sm.dval) < lim;
    for (const auto& x : sm.adj.a) small = small && abs(x) < lim;
    for (const auto& x : sm.gens.a) small = small && abs(x) < lim;
    if (small) {
      sm.i64 = true;
      sm.dval64 = sm.dval.convert_to<long long>();
      for (const auto& x : sm.adj.a) sm.adj64.push_back(x.convert_to<long long>());
      for (const auto& x : sm.gens.a) sm.gens64.push_back(x.convert_to<long long>());
    }
    return sm;
  }

  // v in cone, exactly; v given with entries already in range
  bool contains(const IVec& v) const {
    int k = static_cast<int>(rows.size());
    int ambient = gens.rows;
    if (i64) {
      long long t[8];
      for (int i = 0; i < k; ++i) {
        long long s = 0;
        for (int j = 0; j < k; ++j) s += adj64[static_cast<size_t>(i) * k + j] * v[rows[j]].convert_to<long long>();
        if (s < 0) return false;
        t[i] = s;
      }
      // span check: gens * t == det * v on every coordinate
      for (int r = 0; r < ambient; ++r) {
        long long s = 0;
        for (int j = 0; j < k; ++j) s += gens64[static_cast<size_t>(r) * k + j] * t[j];
        if (s != dval64 * v[r].convert_to<long long>()) return false;
      }
      return true;
    }
    std::vector<Int> t(k);
    for (int i = 0; i < k; ++i) {
      Int s = 0;
      for (int j = 0; j < k; ++j) s += adj.at(i, j) * v[rows[j]];
      if (s < 0) return false;
      t[i] = s;
    }
    for (int r = 0; r < ambient; ++r) {
      Int s = 0;
      for (int j = 0; j < k; ++j) s += gens.at(r, j) * t[j];
      if (s != dval * v[r]) return false;
    }
    return true;
  }
};

}  // namespace detail

inline ToricReport toric_is_canonical(const Cone& c) {
  ToricReport rep;
  if (is_smooth_cone(c)) {
    rep.verdict = ToricVerdict::Smooth;
    return rep;
  }
  const auto& gens = c.gens();
  int ambient = c.ambient_rank;
  // supporting covector: m . g = 1 for every generator
  QMat a(static_cast<int>(gens.size()), ambient);
  QVec ones(gens.size(), Rat(1));
  for (size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < ambient; ++j) a.at(static_cast<int>(i), j) = Rat(gens[i][j]);
  auto m = solve(a, ones);
  if (!m) {
    rep.verdict = ToricVerdict::NotQGorenstein;
    return rep;
  }
  rep.m = *m;
  // slab points satisfy v = sum t_i g_i with t >= 0 and sum t_i = m.v < 1,
  // so v lies in conv(0, g_1, .., g_k): scan its integer bounding box
  IVec lo(ambient, Int(0)), hi(ambient, Int(0));
  for (const auto& g : gens)
    for (int j = 0; j < ambient; ++j) {
      lo[j] = std::min(lo[j], g[j]);
      hi[j] = std::max(hi[j], g[j]);
    }
  // common-denominator form of m for an integer slab test
  Int md = 1;
  for (const auto& x : *m) md = int_lcm(md, den(x));
  std::vector<Int> mn;
  for (const auto& x : *m) mn.push_back(num(x) * (md / den(x)));
  auto membership = detail::SimplicialMembership::build(c);
  IVec v = lo;
  while (true) {
    if (!is_zero_vec(v)) {
      Int mv = 0;
      for (int j = 0; j < ambient; ++j) mv += mn[j] * v[j];
      if (mv < md) {
        bool inside = membership ? membership->contains(v) : c.contains(v);
        if (inside) {
          rep.verdict = ToricVerdict::NotCanonical;
          rep.violating_point = v;
          return rep;
        }
      }
    }
    int j = ambient - 1;
    while (j >= 0 && v[j] == hi[j]) v[j--] = lo[j];
    if (j < 0) break;
    ++v[j];
  }
  rep.verdict = ToricVerdict::Canonical;
  return rep;
}

// ---------------------------------------------------------------------------
// refinement

namespace detail {

// facets of a cone (codimension-1 faces), as generator subsets
inline std::vector<std::vector<IVec>> cone_facets(const Cone& c) {
  std::vector<std::vector<IVec>> out;
  const auto& gens = c.gens();
  int k = static_cast<int>(gens.size());
  if (c.is_simplicial()) {
    for (int drop = 0; drop < k; ++drop) {
      std::vector<IVec> f;
      for (int i = 0; i < k; ++i)
        if (i != drop) f.push_back(gens[i]);
      out.push_back(std::move(f));
    }
    return out;
  }
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<IVec> f;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) f.push_back(gens[i]);
    Cone fc(c.ambient_rank, f);
    if (fc.dim() != c.dim() - 1) continue;
    if (static_cast<int>(fc.gens().size()) != static_cast<int>(f.size())) continue;
    if (!c.subset_spans_face(f)) continue;
    out.push_back(fc.gens());
  }
  // dedupe (different masks can span the same facet)
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// minimal nonzero box point of a non-smooth simplicial cone: the lattice
// point sum t_i g_i, t_i in [0,1), minimizing sum t_i (ties: lexicographically
// least point).  Exists whenever the cone is simplicial and not smooth.
inline std::optional<IVec> minimal_box_point(const Cone& c) {
  if (!c.is_simplicial() || c.dim() == 0) return std::nullopt;
  auto sm = SimplicialMembership::build(c);
  if (!sm) return std::nullopt;
  int ambient = c.ambient_rank;
  IVec lo(ambient, Int(0)), hi(ambient, Int(0));
  for (const auto& g : c.gens())
    for (int j = 0; j < ambient; ++j) {
      lo[j] = std::min(lo[j], g[j]);
      hi[j] = std::max(hi[j], g[j]);
    }
  std::optional<IVec> best;
  Rat best_sum;
  int k = static_cast<int>(c.gens().size());
  IVec v = lo;
  while (true) {
    if (!is_zero_vec(v) && sm->contains(v)) {
      // generator coordinates; box point iff all t_i < 1
      std::vector<Int> t(k);
      bool in_box = true;
      Int tsum = 0;
      for (int i = 0; i < k && in_box; ++i) {
        Int s = 0;
        for (int j = 0; j < k; ++j) s += sm->adj.at(i, j) * v[sm->rows[j]];
        if (s >= sm->dval) in_box = false;
        t[i] = s;
        tsum += s;
      }
      if (in_box) {
        Rat total = Rat(tsum) / Rat(sm->dval);
        if (!best || total < best_sum || (total == best_sum && v < *best)) {
          best = v;
          best_sum = total;
        }
      }
    }
    int j = ambient - 1;
    while (j >= 0 && v[j] == hi[j]) v[j--] = lo[j];
    if (j < 0) break;
    ++v[j];
  }
  return best;
}

}  // namespace detail

// Stellar subdivision of the whole fan at the primitive point p: every
// stored cone containing p is replaced by the cones spanned by p together
// with its facets not containing p.  Shared faces split consistently, so
// validity is preserved.
inline Fan stellar_subdivide(const Fan& f, const IVec& point) {
  IVec p = primitive(point);
  Fan out;
  out.ambient_rank = f.ambient_rank;
  out.base_projection = f.base_projection;
  for (const auto& c : f.cones) {
    if (!c.contains(p)) {
      out.cones.push_back(c);
      continue;
    }
    bool replaced = false;
    for (const auto& facet : detail::cone_facets(c)) {
      Cone fc(f.ambient_rank, facet);
      if (fc.contains(p)) continue;
      std::vector<IVec> gens = facet;
      gens.push_back(p);
      Cone piece(f.ambient_rank, gens);
      if (piece.dim() == c.dim()) {
        out.cones.push_back(std::move(piece));
        replaced = true;
      }
    }
    if (!replaced) out.cones.push_back(c);  // p spans an existing ray of every facet chain
  }
  std::sort(out.cones.begin(), out.cones.end());
  out.cones.erase(std::unique(out.cones.begin(), out.cones.end()), out.cones.end());
  return out;
}

namespace detail {

// Hirzebruch-Jung chain between the two rays of a 2-dimensional cone,
// computed in a saturated coordinate plane, listed from u to w exclusive.
inline std::vector<IVec> hj_intermediate_rays(const Cone& c) {
  IMat g = c.gen_matrix();          // ambient x 2
  SmithForm sf = smith_form(g);
  // coordinates in the saturation: y = U v has zeros past the rank
  auto coords2 = [&](const IVec& v) {
    IVec y = mat_vec(sf.u, v);
    return std::pair<Int, Int>(y[0], y[1]);
  };
  auto lift = [&](Int a, Int b) {
    IVec y(g.rows, Int(0));
    y[0] = a;
    y[1] = b;
    return mat_vec(sf.uinv, y);
  };
  auto [u0, u1] = coords2(c.gens()[0]);
  auto [w0, w1] = coords2(c.gens()[1]);
  auto det2 = [](Int a, Int b, Int cc, Int d) { return a * d - b * cc; };
  bool swapped = false;
  if (det2(u0, u1, w0, w1) < 0) {
    std::swap(u0, w0);
    std::swap(u1, w1);
    swapped = true;
  }
  std::vector<IVec> chain;
  Int cu0 = u0, cu1 = u1;
  while (det2(cu0, cu1, w0, w1) > 1) {
    // x0 with det(cur, x0) = 1, then shift by cur into the cone
    Int gg, s, t;
    // extended gcd on (cu0, cu1): s*cu0 + t*cu1 = g (= 1, cur primitive)
    {
      Int a = cu0, b = cu1, x0 = 1, y0 = 0, x1 = 0, y1 = 1;
      while (b != 0) {
        Int q = a / b;
        Int r = a - q * b;
        a = b; b = r;
        Int nx = x0 - q * x1, ny = y0 - q * y1;
        x0 = x1; y0 = y1; x1 = nx; y1 = ny;
      }
      gg = a; s = x0; t = y0;
      if (gg < 0) { gg = -gg; s = -s; t = -t; }
    }
    if (gg != 1) throw std::runtime_error("hj: generator not primitive in saturation");
    // det(cur, x) = cu0*x1 - cu1*x0 = 1 at x = (-t, s)
    Int x0c = -t, x1c = s;
    Int dxw = det2(x0c, x1c, w0, w1);
    Int dcw = det2(cu0, cu1, w0, w1);
    // shift x by multiples of cur: det(x + k cur, w) = dxw + k dcw
    Int k = rat_floor(Rat(-dxw) / Rat(dcw));
    while (dxw + k * dcw < 0) ++k;
    while (dxw + (k - 1) * dcw >= 0) --k;
    Int nx0 = x0c + k * cu0, nx1 = x1c + k * cu1;
    Int dnw = det2(nx0, nx1, w0, w1);
    if (dnw == 0) break;  // landed on w itself
    chain.push_back(primitive(lift(nx0, nx1)));
    cu0 = nx0;
    cu1 = nx1;
  }
  // report the chain as running from gens()[0] towards gens()[1]
  if (swapped) std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace detail

// Smooth refinement.  Every output cone is smooth and contained in an input
// cone; shared faces are subdivided consistently.  The deterministic choice
// of subdivision points (lexicographically least candidate) makes the result
// equivariant under lattice translations of the fan.
inline Fan refine_to_smooth(const Fan& f) {
  for (const auto& c : f.cones)
    if (c.dim() > 3) throw std::domain_error("refine_to_smooth: cones of dimension > 3 not supported");
  Fan cur = f;
  cur.canonicalize();
  for (int round = 0; round < 100000; ++round) {
    // 2-dimensional non-smooth cones: Hirzebruch-Jung, handled per cone
    bool changed = false;
    for (size_t i = 0; i < cur.cones.size(); ++i) {
      const Cone& c = cur.cones[i];
      if (c.dim() != 2 || is_smooth_cone(c)) continue;
      auto chain = detail::hj_intermediate_rays(c);
      if (chain.empty()) throw std::runtime_error("refine_to_smooth: hj produced no rays");
      std::vector<IVec> rays;
      rays.push_back(c.gens()[0]);
      for (const auto& r : chain) rays.push_back(r);
      rays.push_back(c.gens()[1]);
      std::vector<Cone> pieces;
      for (size_t j = 0; j + 1 < rays.size(); ++j)
        pieces.push_back(Cone(c.ambient_rank, {rays[j], rays[j + 1]}));
      cur.cones.erase(cur.cones.begin() + static_cast<long>(i));
      for (auto& p : pieces) cur.cones.push_back(std::move(p));
      std::sort(cur.cones.begin(), cur.cones.end());
      changed = true;
      break;
    }
    if (changed) continue;
    // 3-dimensional: collect one candidate point per offending cone, pick
    // the least, subdivide fan-wide
    std::optional<IVec> pick;
    for (const auto& c : cur.cones) {
      if (c.dim() <= 2) continue;
      std::optional<IVec> cand;
      if (!c.is_simplicial())
        cand = c.gens().front();  // diagonal split through the least ray
      else if (!is_smooth_cone(c))
        cand = detail::minimal_box_point(c);
      if (cand && (!pick || *cand < *pick)) pick = cand;
    }
    if (!pick) break;
    cur = stellar_subdivide(cur, *pick);
  }
  for (const auto& c : cur.cones)
    if (!is_smooth_cone(c)) throw std::runtime_error("refine_to_smooth: refinement did not terminate smooth");
  return cur;
}

}  // namespace kuga

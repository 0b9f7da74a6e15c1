#pragma once
// Rational polyhedral cones and fans in the lattice of lifted quadratic
// forms: points (b; l_1..l_n) with b a symmetric g'' x g'' form and each l_j
// a covector, flattened to integer vectors.  Includes the cone/fan
// predicates used by the boundary-fan checkers: membership, faces, fan
// validity, equidimensionality in codimension one, interior-ray detection,
// the group action, and the ray-permutation certificate.

#include "kuga/linprog.hpp"
#include "kuga/matrix.hpp"
#include "kuga/quadform.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kuga {

// ---------------------------------------------------------------------------
// lifted points and flattening

struct LiftedPoint {
  QuadForm b;                // g'' x g'' symmetric
  std::vector<IVec> ells;    // n covectors of length g''

  int gdd() const { return b.dim(); }
  int n() const { return static_cast<int>(ells.size()); }
};

inline int sym_flat_dim(int gdd) { return gdd * (gdd + 1) / 2; }
inline int lifted_flat_dim(int gdd, int n) { return sym_flat_dim(gdd) + n * gdd; }

// upper triangle, row by row: b11, b12, .., b1g, b22, .., bgg
inline IVec sym_flatten(const QuadForm& b) {
  IVec v;
  v.reserve(sym_flat_dim(b.dim()));
  for (int i = 0; i < b.dim(); ++i)
    for (int j = i; j < b.dim(); ++j) v.push_back(b.m.at(i, j));
  return v;
}

inline QuadForm sym_unflatten(const IVec& v, int gdd) {
  if (static_cast<int>(v.size()) != sym_flat_dim(gdd))
    throw std::invalid_argument("sym_unflatten: length mismatch");
  IMat m(gdd, gdd);
  int k = 0;
  for (int i = 0; i < gdd; ++i)
    for (int j = i; j < gdd; ++j) {
      m.at(i, j) = v[k];
      m.at(j, i) = v[k];
      ++k;
    }
  return QuadForm(m);
}

inline IVec flatten(const LiftedPoint& p) {
  IVec v = sym_flatten(p.b);
  for (const auto& l : p.ells)
    for (const auto& x : l) v.push_back(x);
  return v;
}

inline LiftedPoint unflatten(const IVec& v, int gdd, int n) {
  if (static_cast<int>(v.size()) != lifted_flat_dim(gdd, n))
    throw std::invalid_argument("unflatten: length mismatch");
  LiftedPoint p;
  int s = sym_flat_dim(gdd);
  p.b = sym_unflatten(IVec(v.begin(), v.begin() + s), gdd);
  for (int j = 0; j < n; ++j)
    p.ells.emplace_back(v.begin() + s + j * gdd, v.begin() + s + (j + 1) * gdd);
  return p;
}

// projection (b; l) -> b as a flat matrix, for fan base projections
inline IMat lifted_projection_matrix(int gdd, int n) {
  int s = sym_flat_dim(gdd);
  IMat p(s, lifted_flat_dim(gdd, n));
  for (int i = 0; i < s; ++i) p.at(i, i) = 1;
  return p;
}

// ---------------------------------------------------------------------------
// the cones C and C-tilde

// C: positive semidefinite forms (rational input keeps the radical rational).
inline bool in_cone_C(const QuadForm& b) { return is_psd(b); }

// C-tilde: b PSD and every covector vanishing on the radical of b.
inline bool in_cone_C_tilde(const LiftedPoint& p) {
  if (!is_psd(p.b)) return false;
  RankRadical rr = rank_and_radical(p.b);
  for (const auto& l : p.ells)
    for (const auto& r : rr.radical_basis) {
      Int s = 0;
      for (size_t i = 0; i < l.size(); ++i) s += l[i] * r[i];
      if (s != 0) return false;
    }
  return true;
}

// Integral lifted points over the rank-1 form on xi: (xi xi^t; c_1 xi^t, ..),
// one per integer tuple with |c_j| <= coeff_bound.
inline std::vector<LiftedPoint> rank1_lift_generators(const IVec& xi, int n, int coeff_bound) {
  if (coeff_bound < 1) throw std::invalid_argument("rank1_lift_generators: coeff_bound must be >= 1");
  IVec x = xi;
  if (is_zero_vec(x) || primitive(x) != x)
    throw std::invalid_argument("rank1_lift_generators: xi must be primitive");
  QuadForm r = rank1_form(xi);
  std::vector<LiftedPoint> out;
  std::vector<int> c(n, -coeff_bound);
  while (true) {
    LiftedPoint p;
    p.b = r;
    for (int j = 0; j < n; ++j) {
      IVec l(xi.size());
      for (size_t i = 0; i < xi.size(); ++i) l[i] = Int(c[j]) * xi[i];
      p.ells.push_back(std::move(l));
    }
    out.push_back(std::move(p));
    int j = 0;
    while (j < n && c[j] == coeff_bound) c[j++] = -coeff_bound;
    if (j == n) break;
    ++c[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// cones

class Cone {
 public:
  int ambient_rank = 0;

  Cone() = default;

  Cone(int ambient, std::vector<IVec> generators) : ambient_rank(ambient) {
    for (auto& g : generators) {
      if (static_cast<int>(g.size()) != ambient)
        throw std::invalid_argument("cone generator has wrong length");
      if (is_zero_vec(g)) throw std::invalid_argument("cone generator is zero");
      g = primitive(std::move(g));
    }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    gens_ = std::move(generators);
    dim_ = gens_.empty() ? 0 : rank(gen_matrix());
    if (static_cast<int>(gens_.size()) > dim_) {
      // non-simplicial input: verify strong convexity, then drop non-extreme
      // generators
      if (!strongly_convex()) throw std::invalid_argument("cone is not strongly convex");
      minimize();
      std::sort(gens_.begin(), gens_.end());
    }
    // simplicial input (gens linearly independent) is automatically strongly
    // convex with every generator extreme
  }

  const std::vector<IVec>& gens() const { return gens_; }
  int dim() const { return dim_; }
  bool is_simplicial() const { return static_cast<int>(gens_.size()) == dim_; }

  bool operator==(const Cone& o) const {
    return ambient_rank == o.ambient_rank && gens_ == o.gens_;
  }
  bool operator!=(const Cone& o) const { return !(*this == o); }
  bool operator<(const Cone& o) const { return gens_ < o.gens_; }

  // generators as matrix columns
  IMat gen_matrix() const {
    IMat m(ambient_rank, static_cast<int>(gens_.size()));
    for (size_t j = 0; j < gens_.size(); ++j)
      for (int i = 0; i < ambient_rank; ++i) m.at(i, static_cast<int>(j)) = gens_[j][i];
    return m;
  }

  bool contains(const IVec& p) const {
    if (static_cast<int>(p.size()) != ambient_rank)
      throw std::invalid_argument("contains: point has wrong length");
    if (is_zero_vec(p)) return true;
    if (gens_.empty()) return false;
    if (is_simplicial()) {
      auto coeffs = simplicial_coords(to_rat(p));
      if (!coeffs) return false;
      for (const auto& c : *coeffs)
        if (c < 0) return false;
      return true;
    }
    std::vector<LinConstraint> cons;
    for (int r = 0; r < ambient_rank; ++r) {
      LinConstraint con;
      for (const auto& g : gens_) con.a.push_back(Rat(g[r]));
      con.rel = Rel::EQ;
      con.rhs = Rat(p[r]);
      cons.push_back(std::move(con));
    }
    return lp_feasible_nonneg(static_cast<int>(gens_.size()), cons);
  }

  // exact generator coordinates of a point in the span; nullopt when the
  // point is outside the span or coordinates are not unique (non-simplicial)
  std::optional<QVec> simplicial_coords(const QVec& p) const {
    if (!is_simplicial()) return std::nullopt;
    QMat a(ambient_rank, static_cast<int>(gens_.size()));
    for (size_t j = 0; j < gens_.size(); ++j)
      for (int i = 0; i < ambient_rank; ++i) a.at(i, static_cast<int>(j)) = Rat(gens_[j][i]);
    return solve(a, p);
  }

  // S spans a face iff some supporting covector vanishes exactly on S
  bool subset_spans_face(const std::vector<IVec>& sub) const {
    std::vector<LinConstraint> cons;
    for (const auto& g : gens_) {
      LinConstraint con;
      con.a = to_rat(g);
      bool in_sub = std::find(sub.begin(), sub.end(), g) != sub.end();
      con.rel = in_sub ? Rel::EQ : Rel::GE;
      con.rhs = in_sub ? Rat(0) : Rat(1);
      cons.push_back(std::move(con));
    }
    return lp_feasible_free(ambient_rank, cons);
  }

  bool has_face(const Cone& f) const {
    if (f.ambient_rank != ambient_rank) return false;
    if (f == *this) return true;
    for (const auto& g : f.gens_)
      if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) return false;
    return subset_spans_face(f.gens_);
  }

 private:
  std::vector<IVec> gens_;
  int dim_ = 0;

  bool strongly_convex() const {
    // no nontrivial nonnegative combination of generators vanishes
    int k = static_cast<int>(gens_.size());
    std::vector<LinConstraint> cons;
    for (int r = 0; r < ambient_rank; ++r) {
      LinConstraint con;
      for (const auto& g : gens_) con.a.push_back(Rat(g[r]));
      con.rel = Rel::EQ;
      con.rhs = Rat(0);
      cons.push_back(std::move(con));
    }
    LinConstraint sum;
    sum.a.assign(k, Rat(1));
    sum.rel = Rel::EQ;
    sum.rhs = Rat(1);
    cons.push_back(std::move(sum));
    return !lp_feasible_nonneg(k, cons);
  }

  void minimize() {
    for (size_t i = 0; i < gens_.size();) {
      std::vector<IVec> others;
      for (size_t j = 0; j < gens_.size(); ++j)
        if (j != i) others.push_back(gens_[j]);
      if (others.empty()) break;
      std::vector<LinConstraint> cons;
      for (int r = 0; r < ambient_rank; ++r) {
        LinConstraint con;
        for (const auto& g : others) con.a.push_back(Rat(g[r]));
        con.rel = Rel::EQ;
        con.rhs = Rat(gens_[i][r]);
        cons.push_back(std::move(con));
      }
      if (lp_feasible_nonneg(static_cast<int>(others.size()), cons))
        gens_.erase(gens_.begin() + static_cast<long>(i));
      else
        ++i;
    }
  }
};

// ---------------------------------------------------------------------------
// fans

struct Fan {
  int ambient_rank = 0;
  std::vector<Cone> cones;                 // stored (maximal) cones, sorted
  std::optional<IMat> base_projection;     // flat map (b; l) -> b when present

  void canonicalize() { std::sort(cones.begin(), cones.end()); }

  std::vector<IVec> rays() const {
    std::vector<IVec> r;
    for (const auto& c : cones)
      for (const auto& g : c.gens()) r.push_back(g);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }

  bool has_cone(const Cone& c) const {
    for (const auto& stored : cones)
      if (stored == c || stored.has_face(c)) return true;
    return false;
  }

  bool operator==(const Fan& o) const {
    return ambient_rank == o.ambient_rank && cones == o.cones;
  }
};

// Pairwise intersection-is-a-face certificate for the stored cones: for each
// pair, a covector that vanishes on the common generators, is positive on
// the rest of one cone and negative on the rest of the other.  Returns the
// offending pairs (empty = valid).
inline std::vector<std::pair<int, int>> fan_validity_offenders(const Fan& f) {
  std::vector<std::pair<int, int>> bad;
  for (size_t i = 0; i < f.cones.size(); ++i)
    for (size_t j = i + 1; j < f.cones.size(); ++j) {
      const auto& a = f.cones[i].gens();
      const auto& b = f.cones[j].gens();
      std::vector<IVec> common;
      for (const auto& g : a)
        if (std::find(b.begin(), b.end(), g) != b.end()) common.push_back(g);
      std::vector<LinConstraint> cons;
      for (const auto& g : a) {
        bool c = std::find(common.begin(), common.end(), g) != common.end();
        cons.push_back({to_rat(g), c ? Rel::EQ : Rel::GE, c ? Rat(0) : Rat(1)});
      }
      for (const auto& g : b) {
        if (std::find(common.begin(), common.end(), g) != common.end()) continue;
        cons.push_back({to_rat(g), Rel::LE, Rat(-1)});
      }
      if (!lp_feasible_free(f.ambient_rank, cons)) bad.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return bad;
}

// ---------------------------------------------------------------------------
// fan-level condition checkers

struct RayCheckReport {
  bool ok = true;
  std::vector<IVec> offending;
};

// Every ray of the lifted fan must project onto a ray of the base fan.  A
// ray projecting to zero lies outside C-tilde (its quadratic part vanishes
// but the covector part does not) and is reported as a violation.
inline RayCheckReport is_equidim_codim1(const Fan& tilde, const Fan& base) {
  if (!tilde.base_projection) throw std::invalid_argument("is_equidim_codim1: fan has no base projection");
  const IMat& p = *tilde.base_projection;
  auto base_rays = base.rays();
  RayCheckReport rep;
  for (const auto& r : tilde.rays()) {
    IVec proj = mat_vec(p, r);
    bool good = false;
    if (!is_zero_vec(proj)) {
      IVec prim = primitive(proj);
      good = std::binary_search(base_rays.begin(), base_rays.end(), prim);
    }
    if (!good) {
      rep.ok = false;
      rep.offending.push_back(r);
    }
  }
  return rep;
}

// No ray may sit over the interior of C: every ray generator must have a
// rank-1 quadratic part.
inline RayCheckReport no_interior_rays(const Fan& tilde, int gdd, int n) {
  RayCheckReport rep;
  for (const auto& r : tilde.rays()) {
    LiftedPoint p = unflatten(r, gdd, n);
    if (rank(p.b.m) != 1) {
      rep.ok = false;
      rep.offending.push_back(r);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// the GL(X) x X^n action

// b -> h^t b h, l_j -> l_j h + x_j^t b h.
inline LiftedPoint group_act(const IMat& h, const std::vector<IVec>& xs, const LiftedPoint& q) {
  int gdd = q.gdd();
  if (h.rows != gdd || h.cols != gdd) throw std::invalid_argument("group_act: h has wrong shape");
  if (abs(det(h)) != 1) throw std::invalid_argument("group_act: h is not unimodular");
  if (static_cast<int>(xs.size()) != q.n()) throw std::invalid_argument("group_act: translation count mismatch");
  LiftedPoint out;
  IMat bh = mat_mul(q.b.m, h);
  out.b = QuadForm(mat_mul(mat_transpose(h), bh));
  for (int j = 0; j < q.n(); ++j) {
    IVec l(gdd, Int(0));
    for (int c = 0; c < gdd; ++c) {
      for (int r = 0; r < gdd; ++r) l[c] += q.ells[j][r] * h.at(r, c);
      for (int r = 0; r < gdd; ++r) l[c] += xs[j][r] * bh.at(r, c);
    }
    out.ells.push_back(std::move(l));
  }
  return out;
}

struct RayPermutationReport {
  bool ok = true;
  std::vector<std::pair<Cone, Cone>> swapped;   // cone mapped to a different cone
  std::vector<Cone> nontrivial_stabilized;      // stabilized cone whose rays move
};

// A lattice automorphism preserving the fan must fix every ray of every
// stabilized cone; cones swapped in orbits are recorded in the certificate.
inline RayPermutationReport ray_permutation_check(const IMat& action, const Fan& f) {
  if (action.rows != f.ambient_rank || action.cols != f.ambient_rank)
    throw std::invalid_argument("ray_permutation_check: action has wrong shape");
  if (abs(det(action)) != 1)
    throw std::invalid_argument("ray_permutation_check: action is not unimodular");
  RayPermutationReport rep;
  for (const auto& c : f.cones) {
    std::vector<IVec> imaged;
    for (const auto& g : c.gens()) imaged.push_back(mat_vec(action, g));
    Cone image(f.ambient_rank, imaged);
    bool found = std::find(f.cones.begin(), f.cones.end(), image) != f.cones.end();
    if (!found) throw std::invalid_argument("ray_permutation_check: action does not preserve fan");
    if (image == c) {
      bool pointwise = true;
      for (const auto& g : c.gens())
        if (mat_vec(action, g) != g) { pointwise = false; break; }
      if (!pointwise) {
        rep.ok = false;
        rep.nontrivial_stabilized.push_back(c);
      }
    } else {
      rep.swapped.emplace_back(c, image);
    }
  }
  return rep;
}

}  // namespace kuga

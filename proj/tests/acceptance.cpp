// Acceptance gate: seven pass/fail checks, one line each, exit 1 on any
// failure.  Expected values are frozen here; the box-point and box-minimum
// oracles are independent reimplementations on purpose and must stay free of
// the library's own toric / lattice-reduction code paths.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kuga/perfect_cone.hpp"
#include "kuga/quadform.hpp"
#include "kuga/reid_tai.hpp"
#include "kuga/slope.hpp"
#include "kuga/symplectic.hpp"
#include "kuga/toric.hpp"

#ifndef KUGACERT_BIN
#error "KUGACERT_BIN must point at the CLI binary"
#endif

using namespace kuga;
using Clock = std::chrono::steady_clock;

namespace {

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
      .count();
}

int failures = 0;

void report(int k, bool pass, const std::string& detail) {
  std::cout << "ACCEPTANCE " << k << ": " << (pass ? "PASS" : "FAIL") << " ("
            << detail << ")\n";
  if (!pass) ++failures;
}

// ---------------------------------------------------------------------------
// criterion 1: the CLI birational-type table matches the classification

// Independent statement of the classification over 1 <= g <= 6, 1 <= n <= 12:
// general type iff g + n >= 7 and (g, n) is none of the six excluded pairs,
// kappa = 0 exactly at (2,7), (3,5), (4,3), minus infinity otherwise.
std::string expected_kind(int g, int n) {
  if (g == 1) return "minus_infinity";
  bool zero = (g == 2 && n == 7) || (g == 3 && n == 5) || (g == 4 && n == 3);
  bool excluded = zero || (g == 3 && n == 4) || (g == 2 && n == 6) ||
                  (g == 2 && n == 5);
  if (g + n >= 7 && !excluded) return "general_type";
  if (zero) return "zero";
  return "minus_infinity";
}

void criterion1() {
  auto t0 = Clock::now();
  std::string cmd = std::string(KUGACERT_BIN) + " --json kodaira --table 6 12 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  if (p) {
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    pclose(p);
  }
  long long elapsed = ms_since(t0);

  int mismatches = 0;
  std::string why;
  try {
    auto j = nlohmann::json::parse(out);
    const auto& rows = j.at("table").at("verdicts");
    for (int g = 1; g <= 6; ++g)
      for (int n = 1; n <= 12; ++n) {
        const auto& v = rows.at(g - 1).at(n - 1);
        std::string want = expected_kind(g, n);
        if (v.at("kind") != want) {
          ++mismatches;
          continue;
        }
        if (want == "general_type" && v.at("dimension") != g * (g + 1) / 2)
          ++mismatches;
      }
  } catch (const std::exception& e) {
    why = std::string("; parse: ") + e.what();
    mismatches = 72;
  }
  std::ostringstream d;
  d << "table 6x12 vs classification, mismatches " << mismatches << ", "
    << elapsed << " ms" << why;
  report(1, mismatches == 0 && elapsed < 1000, d.str());
}

// ---------------------------------------------------------------------------
// criterion 2: frozen divisor classes and slopes

void criterion2() {
  auto t0 = Clock::now();
  bool ok = true;
  ok = ok && slope(theta_null_class(2)) == Rat(10);
  ok = ok && slope(theta_null_class(3)) == Rat(9);
  ok = ok && n0_prime_class(4) == DivisorClass{Rat(8), Rat(1)};
  ok = ok && n0_prime_class(5) == DivisorClass{Rat(108), Rat(14)};
  ok = ok && n0_prime_class(6) == DivisorClass{Rat(1100), Rat(146)};
  ok = ok && slope(n0_prime_class(4)) == Rat(8);
  ok = ok && slope(n0_prime_class(5)) == Rat(54, 7);
  ok = ok && slope(n0_prime_class(6)) == Rat(550, 73);
  long long elapsed = ms_since(t0);
  std::ostringstream d;
  d << "theta_null g=2,3 and n0_prime g=4,5,6 exact, " << elapsed << " ms";
  report(2, ok && elapsed < 100, d.str());
}

// ---------------------------------------------------------------------------
// criterion 3: stabilizer scans across the supported range

void criterion3() {
  auto t0 = Clock::now();
  bool ok = true;
  int passed = 0, witnessed = 0;
  for (int g = 2; g <= 5; ++g)
    for (int n = 1; n <= 6; ++n) {
      if (g + n < 5) continue;
      auto r = rt_scan(g, n, 12);
      if (g + n >= 6) {
        if (!r.pass) ok = false;
        for (const auto& row : r.rows)
          if (row.min_age < Rat(1) && !row.quasireflection) ok = false;
        ++passed;
      } else {
        if (r.pass || !r.age_violation_idx.empty()) ok = false;
        bool w = false;
        for (const auto& bw : r.bound_witnesses)
          if (bw.profile.g_prime == 1 && bw.d == 6) w = true;
        if (!w) ok = false;
        ++witnessed;
      }
    }
  long long elapsed = ms_since(t0);
  std::ostringstream d;
  d << passed << " passing scans, " << witnessed
    << " g+n=5 slices with a g'=1 d=6 witness, " << elapsed << " ms";
  report(3, ok && passed == 18 && witnessed == 3 && elapsed < 60000, d.str());
}

// ---------------------------------------------------------------------------
// criterion 4: the two boundary quasireflection ages

void criterion4() {
  StabilizerProfile p;
  p.g_prime = 0;
  p.g_dd = 1;
  p.n = 1;
  p.gamma_kind = GammaKind::Identity;
  p.u_kind = UKind::EpsilonMinus;
  auto r1 = min_age(p);
  p.n = 2;
  auto r2 = min_age(p);
  bool ok = r1.age == Rat(1, 2) && r1.is_quasireflection && r2.age == Rat(1);
  std::ostringstream d;
  d << "(g''=1, n=1) age " << rat_str(r1.age) << ", (1, 2) age "
    << rat_str(r2.age) << ", exact";
  report(4, ok, d.str());
}

// ---------------------------------------------------------------------------
// criterion 5: fan construction plus the toric checker vs the box oracle

enum class OracleVerdict { Smooth, Canonical, NotCanonical };

using V3 = std::array<std::int64_t, 3>;

struct M3 {
  std::int64_t a[3][3];
};

std::int64_t det3(const M3& m) {
  return m.a[0][0] * (m.a[1][1] * m.a[2][2] - m.a[1][2] * m.a[2][1]) -
         m.a[0][1] * (m.a[1][0] * m.a[2][2] - m.a[1][2] * m.a[2][0]) +
         m.a[0][2] * (m.a[1][0] * m.a[2][1] - m.a[1][1] * m.a[2][0]);
}

M3 adj3(const M3& m) {
  M3 r;
  r.a[0][0] = m.a[1][1] * m.a[2][2] - m.a[1][2] * m.a[2][1];
  r.a[0][1] = m.a[0][2] * m.a[2][1] - m.a[0][1] * m.a[2][2];
  r.a[0][2] = m.a[0][1] * m.a[1][2] - m.a[0][2] * m.a[1][1];
  r.a[1][0] = m.a[1][2] * m.a[2][0] - m.a[1][0] * m.a[2][2];
  r.a[1][1] = m.a[0][0] * m.a[2][2] - m.a[0][2] * m.a[2][0];
  r.a[1][2] = m.a[0][2] * m.a[1][0] - m.a[0][0] * m.a[1][2];
  r.a[2][0] = m.a[1][0] * m.a[2][1] - m.a[1][1] * m.a[2][0];
  r.a[2][1] = m.a[0][1] * m.a[2][0] - m.a[0][0] * m.a[2][1];
  r.a[2][2] = m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0];
  return r;
}

// Diagonal form U A V = D over int64 with U tracked; only |D| is used.
void smith3(M3 a, M3& u, V3& d) {
  u = M3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  auto row_swap = [&](int i, int j) {
    for (int c = 0; c < 3; ++c) {
      std::swap(a.a[i][c], a.a[j][c]);
      std::swap(u.a[i][c], u.a[j][c]);
    }
  };
  auto row_add = [&](int i, int j, std::int64_t f) {
    for (int c = 0; c < 3; ++c) {
      a.a[i][c] += f * a.a[j][c];
      u.a[i][c] += f * u.a[j][c];
    }
  };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < 3; ++r) std::swap(a.a[r][i], a.a[r][j]);
  };
  auto col_add = [&](int i, int j, std::int64_t f) {
    for (int r = 0; r < 3; ++r) a.a[r][i] += f * a.a[r][j];
  };
  for (int k = 0; k < 3; ++k) {
    for (bool again = true; again;) {
      again = false;
      int pr = -1, pc = -1;
      std::int64_t best = 0;
      for (int r = k; r < 3; ++r)
        for (int c = k; c < 3; ++c)
          if (a.a[r][c] != 0 && (best == 0 || std::abs(a.a[r][c]) < best)) {
            best = std::abs(a.a[r][c]);
            pr = r;
            pc = c;
          }
      if (pr < 0) break;
      if (pr != k) row_swap(pr, k);
      if (pc != k) col_swap(pc, k);
      for (int r = k + 1; r < 3; ++r)
        if (a.a[r][k] != 0) {
          row_add(r, k, -(a.a[r][k] / a.a[k][k]));
          if (a.a[r][k] != 0) again = true;
        }
      for (int c = k + 1; c < 3; ++c)
        if (a.a[k][c] != 0) {
          col_add(c, k, -(a.a[k][c] / a.a[k][k]));
          if (a.a[k][c] != 0) again = true;
        }
    }
  }
  for (int i = 0; i < 3; ++i) d[i] = std::abs(a.a[i][i]);
}

// Lattice points of { A t : t in [0,1)^3 }, enumerated through the quotient
// Z^3 / A Z^3 and read off in adjugate coordinates s = adj(A) x, so that
// t_i = s_i / |det| after reduction.
OracleVerdict oracle_rank3(const std::array<V3, 3>& gens) {
  M3 a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a.a[r][c] = gens[c][r];
  std::int64_t dv = det3(a);
  std::int64_t ad = std::abs(dv);
  M3 adj = adj3(a);
  M3 u;
  V3 d;
  smith3(a, u, d);
  M3 uadj = adj3(u);
  std::int64_t ud = det3(u);
  bool nonzero_point = false, below_one = false;
  for (std::int64_t z0 = 0; z0 < d[0]; ++z0)
    for (std::int64_t z1 = 0; z1 < d[1]; ++z1)
      for (std::int64_t z2 = 0; z2 < d[2]; ++z2) {
        V3 x0;
        for (int r = 0; r < 3; ++r)
          x0[r] = ud * (uadj.a[r][0] * z0 + uadj.a[r][1] * z1 + uadj.a[r][2] * z2);
        V3 s;
        for (int r = 0; r < 3; ++r) {
          s[r] = adj.a[r][0] * x0[0] + adj.a[r][1] * x0[1] + adj.a[r][2] * x0[2];
          if (dv < 0) s[r] = -s[r];
          s[r] = ((s[r] % ad) + ad) % ad;
        }
        if (s[0] == 0 && s[1] == 0 && s[2] == 0) continue;
        nonzero_point = true;
        if (s[0] + s[1] + s[2] < ad) below_one = true;
      }
  if (!nonzero_point) return OracleVerdict::Smooth;
  return below_one ? OracleVerdict::NotCanonical : OracleVerdict::Canonical;
}

OracleVerdict oracle_rank2(const V3& g1, const V3& g2) {
  int r1 = -1, r2 = -1;
  std::int64_t dv = 0;
  for (int i = 0; i < 3 && !dv; ++i)
    for (int j = i + 1; j < 3 && !dv; ++j) {
      std::int64_t m = g1[i] * g2[j] - g1[j] * g2[i];
      if (m != 0) {
        r1 = i;
        r2 = j;
        dv = m;
      }
    }
  std::int64_t ad = std::abs(dv);
  bool nonzero_point = false, below_one = false;
  V3 hi = {g1[0] + g2[0], g1[1] + g2[1], g1[2] + g2[2]};
  V3 x;
  for (x[0] = 0; x[0] <= hi[0]; ++x[0])
    for (x[1] = 0; x[1] <= hi[1]; ++x[1])
      for (x[2] = 0; x[2] <= hi[2]; ++x[2]) {
        if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
        std::int64_t s1 = g2[r2] * x[r1] - g2[r1] * x[r2];
        std::int64_t s2 = g1[r1] * x[r2] - g1[r2] * x[r1];
        if (dv < 0) {
          s1 = -s1;
          s2 = -s2;
        }
        if (s1 < 0 || s1 >= ad || s2 < 0 || s2 >= ad) continue;
        int third = 3 - r1 - r2;
        if (g1[third] * s1 + g2[third] * s2 != ad * x[third]) continue;
        nonzero_point = true;
        if (s1 + s2 < ad) below_one = true;
      }
  if (!nonzero_point) return OracleVerdict::Smooth;
  return below_one ? OracleVerdict::NotCanonical : OracleVerdict::Canonical;
}

OracleVerdict box_oracle(const Cone& c) {
  std::vector<V3> g;
  for (const auto& v : c.gens()) {
    V3 w;
    for (int i = 0; i < 3; ++i) w[i] = static_cast<std::int64_t>(v[i]);
    g.push_back(w);
  }
  if (g.size() == 1) return OracleVerdict::Smooth;  // primitive generator
  if (g.size() == 2) return oracle_rank2(g[0], g[1]);
  return oracle_rank3({g[0], g[1], g[2]});
}

void criterion5() {
  auto t0 = Clock::now();
  bool ok = true;

  // part A: the staircase fan and its structure checks
  Fan st = lifted_fan(1, 1, 3);
  Fan base = perfect_cone_fan(1);
  if (st.cones.size() != 4) ok = false;
  for (long long c = -2; c <= 1; ++c) {
    IVec a{Int(1), Int(c)}, b{Int(1), Int(c + 1)};
    if (std::find(st.cones.begin(), st.cones.end(), Cone(2, {a, b})) ==
        st.cones.end())
      ok = false;
  }
  ok = ok && fan_validity_offenders(st).empty();
  ok = ok && is_equidim_codim1(st, base).ok;
  ok = ok && no_interior_rays(st, 1, 1).ok;
  ok = ok && base_cone_inclusion(st, base, 1, 1).ok;
  for (const auto& c : st.cones)
    if (toric_is_canonical(c).verdict != ToricVerdict::Smooth) ok = false;

  // part B: two covector slots at window 3, every cone at worst canonical
  Fan sq = lifted_fan(1, 2, 3);
  if (sq.cones.empty()) ok = false;
  for (const auto& c : sq.cones) {
    auto v = toric_is_canonical(c).verdict;
    if (v != ToricVerdict::Smooth && v != ToricVerdict::Canonical) ok = false;
  }

  // part C: checker vs oracle on every simplicial cone with up to three
  // generators drawn from the primitive vectors of {0..4}^3
  std::vector<V3> prim;
  for (std::int64_t x = 0; x <= 4; ++x)
    for (std::int64_t y = 0; y <= 4; ++y)
      for (std::int64_t z = 0; z <= 4; ++z) {
        if (!x && !y && !z) continue;
        if (std::gcd(std::gcd(x, y), z) == 1) prim.push_back({x, y, z});
      }
  auto to_ivec = [](const V3& v) {
    IVec w;
    for (int i = 0; i < 3; ++i) w.push_back(Int(v[i]));
    return w;
  };
  long long tested = 0, mismatches = 0;
  auto check = [&](const Cone& c) {
    OracleVerdict ov = box_oracle(c);
    ToricVerdict tv = toric_is_canonical(c).verdict;
    bool agree = (ov == OracleVerdict::Smooth && tv == ToricVerdict::Smooth) ||
                 (ov == OracleVerdict::Canonical && tv == ToricVerdict::Canonical) ||
                 (ov == OracleVerdict::NotCanonical &&
                  tv == ToricVerdict::NotCanonical);
    if (!agree) ++mismatches;
    ++tested;
  };
  for (const auto& v : prim) check(Cone(3, {to_ivec(v)}));
  for (size_t i = 0; i < prim.size(); ++i)
    for (size_t j = i + 1; j < prim.size(); ++j) {
      const V3 &a = prim[i], &b = prim[j];
      bool indep = false;
      for (int r = 0; r < 3 && !indep; ++r)
        for (int s = r + 1; s < 3 && !indep; ++s)
          if (a[r] * b[s] - a[s] * b[r] != 0) indep = true;
      if (indep) check(Cone(3, {to_ivec(a), to_ivec(b)}));
    }
  for (size_t i = 0; i < prim.size(); ++i)
    for (size_t j = i + 1; j < prim.size(); ++j)
      for (size_t k = j + 1; k < prim.size(); ++k) {
        M3 m;
        for (int r = 0; r < 3; ++r) {
          m.a[r][0] = prim[i][r];
          m.a[r][1] = prim[j][r];
          m.a[r][2] = prim[k][r];
        }
        if (det3(m) == 0) continue;
        check(Cone(3, {to_ivec(prim[i]), to_ivec(prim[j]), to_ivec(prim[k])}));
      }
  if (mismatches != 0 || tested == 0) ok = false;

  long long elapsed = ms_since(t0);
  std::ostringstream d;
  d << "staircase + window-3 paving, oracle agreement " << (tested - mismatches)
    << "/" << tested << ", " << elapsed << " ms";
  report(5, ok && elapsed < 30000, d.str());
}

// ---------------------------------------------------------------------------
// criterion 6: automorphy cocycle residuals and torsion fixed points

void criterion6() {
  auto t0 = Clock::now();
  bool ok = true;
  std::mt19937_64 rng(20260822);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    int g = 1 + t % 3;
    IMat b1 = random_symplectic(g, rng);
    IMat b2 = random_symplectic(g, rng);
    CMat tau = random_tau(g, rng);
    auto r = cocycle_check(b1, b2, tau, 1e-9);
    worst = std::max(worst, r.residual);
    if (!r.pass) ok = false;
  }
  if (worst >= 1e-9) ok = false;

  for (const auto& e : sl2_torsion_catalog()) {
    for (int g = 1; g <= 3; ++g) {
      IMat gamma = embed_sl2_diag(e.a, e.b, e.c, e.d, g);
      auto rep = fixed_point_eigen_check(gamma, scalar_tau(e.tau0, g), 1e-9);
      if (!rep.matched || !rep.has_nontrivial) ok = false;
      if (rep.splitting == "mixed") ok = false;
    }
  }
  auto rid = fixed_point_eigen_check(IMat::identity(4), scalar_tau({0.0, 1.0}, 2),
                                     1e-9);
  if (!rid.matched || rid.has_nontrivial) ok = false;

  long long elapsed = ms_since(t0);
  std::ostringstream d;
  d << "1000 cocycle pairs, worst residual " << worst
    << "; torsion catalog matched for g=1..3, " << elapsed << " ms";
  report(6, ok && elapsed < 5000, d.str());
}

// ---------------------------------------------------------------------------
// criterion 7: lattice minima vs box search, and vanishing orders

Int box_quad_min(const QuadForm& q, int bound = 5) {
  int dmn = q.dim();
  IVec x(dmn, Int(-bound));
  bool first = true;
  Int best = 0;
  for (;;) {
    bool zero = std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
    if (!zero) {
      Int v = q.eval(x);
      if (first || v < best) {
        best = v;
        first = false;
      }
    }
    int i = 0;
    while (i < dmn && x[i] == bound) x[i++] = -bound;
    if (i == dmn) break;
    x[i] += 1;
  }
  return best;
}

QuadForm random_psd_form(std::mt19937_64& rng, int max_dim = 4) {
  std::uniform_int_distribution<int> dim_d(1, max_dim);
  std::uniform_int_distribution<int> diag_d(1, 4);
  std::uniform_int_distribution<int> zero_d(0, 5);
  std::uniform_int_distribution<int> coef_d(-1, 1);
  int d = dim_d(rng);
  IMat m(d, d);
  for (int i = 0; i < d; ++i)
    m.at(i, i) = (zero_d(rng) == 0) ? Int(0) : Int(2 * diag_d(rng));
  std::uniform_int_distribution<int> idx(0, d - 1);
  for (int rep = 0; rep < 3; ++rep) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Int c = coef_d(rng);
    if (c == 0) continue;
    IMat u = IMat::identity(d);
    u.at(i, j) = c;
    m = mat_mul(mat_transpose(u), mat_mul(m, u));
  }
  return QuadForm(m);
}

void criterion7() {
  auto t0 = Clock::now();
  bool ok = true;
  std::mt19937_64 rng(424242);
  int agreed = 0;
  for (int t = 0; t < 500; ++t) {
    QuadForm q = random_psd_form(rng);
    auto qm = quad_min(q);
    if (qm.value == box_quad_min(q)) ++agreed;
    else ok = false;
    if (qm.value > 0 && q.eval(qm.witness) != qm.value) ok = false;
  }
  for (int g = 2; g <= 4; ++g) {
    IMat m(g, g);
    for (int i = 0; i < g; ++i) m.at(i, i) = 2;
    if (vanishing_order({g, {QuadForm(m)}}) != Rat(1)) ok = false;
  }
  long long elapsed = ms_since(t0);
  std::ostringstream d;
  d << "box agreement " << agreed << "/500, vanishing order 1 at g=2,3,4, "
    << elapsed << " ms";
  report(7, ok && elapsed < 10000, d.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria satisfied\n";
  return 0;
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "kuga/cones.hpp"
#include "kuga/perfect_cone.hpp"
#include "kuga/toric.hpp"

using namespace kuga;

namespace {

IVec iv(std::initializer_list<long long> xs) {
  IVec v;
  for (auto x : xs) v.push_back(Int(x));
  return v;
}

}  // namespace

TEST_CASE("membership in C and C-tilde") {
  CHECK(in_cone_C(QuadForm(IMat::identity(2))));
  IMat neg(2, 2);
  neg.at(0, 0) = -1;
  neg.at(1, 1) = 1;
  CHECK(!in_cone_C(QuadForm(neg)));

  LiftedPoint p1;
  p1.b = QuadForm(IMat(1, 1));
  p1.ells = {iv({1})};
  CHECK(!in_cone_C_tilde(p1));  // covector does not vanish on the radical

  IMat one(1, 1);
  one.at(0, 0) = 1;
  LiftedPoint p2;
  p2.b = QuadForm(one);
  p2.ells = {iv({5})};
  CHECK(in_cone_C_tilde(p2));

  IMat d10(2, 2);
  d10.at(0, 0) = 1;
  LiftedPoint p3;
  p3.b = QuadForm(d10);
  p3.ells = {iv({0, 1})};
  CHECK(!in_cone_C_tilde(p3));
}

TEST_CASE("rank-1 lift generators enumerate the covector window") {
  auto pts = rank1_lift_generators(iv({1}), 1, 1);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].ells[0] == iv({-1}));
  CHECK(pts[1].ells[0] == iv({0}));
  CHECK(pts[2].ells[0] == iv({1}));

  auto p0 = rank1_lift_generators(iv({1, 0}), 0, 2);
  REQUIRE(p0.size() == 1);
  CHECK(p0[0].ells.empty());

  auto p11 = rank1_lift_generators(iv({1, 1}), 1, 1);
  CHECK(p11[0].ells[0] == iv({-1, -1}));
  CHECK(p11[2].ells[0] == iv({1, 1}));
  for (const auto& q : p11) CHECK(in_cone_C_tilde(q));

  CHECK_THROWS_AS(rank1_lift_generators(iv({2, 4}), 1, 1), std::invalid_argument);
}

TEST_CASE("staircase fan over the rank-1 base") {
  Fan st = lifted_fan(1, 1, 3);
  CHECK(st.ambient_rank == 2);
  REQUIRE(st.cones.size() == 4);
  for (long long c = -2; c <= 1; ++c) {
    Cone expect(2, {iv({1, c}), iv({1, c + 1})});
    CHECK(std::find(st.cones.begin(), st.cones.end(), expect) != st.cones.end());
  }
  CHECK(fan_validity_offenders(st).empty());

  Fan base = perfect_cone_fan(1);
  REQUIRE(base.cones.size() == 1);
  CHECK(base.cones[0].gens()[0] == iv({1}));
  CHECK(is_equidim_codim1(st, base).ok);
  CHECK(no_interior_rays(st, 1, 1).ok);
  CHECK(base_cone_inclusion(st, base, 1, 1).ok);

  Fan st2 = lifted_fan(1, 1, 2);
  CHECK(st2.cones.size() == 2);
  SECTION("window monotonicity: smaller window is a subset") {
    for (const auto& c : st2.cones)
      CHECK(std::find(st.cones.begin(), st.cones.end(), c) != st.cones.end());
  }

  CHECK(!st.has_cone(Cone(2, {iv({0, 1})})));
  CHECK(st.has_cone(Cone(2, {iv({1, 0})})));
  for (const auto& c : st.cones)
    CHECK(toric_is_canonical(c).verdict == ToricVerdict::Smooth);
}

TEST_CASE("unit-square paving for two covector slots") {
  Fan sq = lifted_fan(1, 2, 2);
  CHECK(sq.ambient_rank == 3);
  REQUIRE(sq.cones.size() == 4);
  for (const auto& c : sq.cones) {
    CHECK(c.dim() == 3);
    CHECK(c.gens().size() == 4);
  }
  Cone expect(3, {iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 0, 1}), iv({1, 1, 1})});
  CHECK(std::find(sq.cones.begin(), sq.cones.end(), expect) != sq.cones.end());
  CHECK(fan_validity_offenders(sq).empty());
  CHECK(no_interior_rays(sq, 1, 2).ok);
  Fan base = perfect_cone_fan(1);
  CHECK(is_equidim_codim1(sq, base).ok);
  CHECK(base_cone_inclusion(sq, base, 1, 2).ok);
  for (const auto& c : sq.cones)
    CHECK(toric_is_canonical(c).verdict == ToricVerdict::Canonical);
}

TEST_CASE("perfect cone fan of rank 2") {
  Fan pcf = perfect_cone_fan(2, 2);
  REQUIRE(pcf.cones.size() == 2);
  Cone principal(3, {iv({1, 0, 0}), iv({0, 0, 1}), iv({1, 1, 1})});
  Cone mirror(3, {iv({1, 0, 0}), iv({0, 0, 1}), iv({1, -1, 1})});
  CHECK(std::find(pcf.cones.begin(), pcf.cones.end(), principal) != pcf.cones.end());
  CHECK(std::find(pcf.cones.begin(), pcf.cones.end(), mirror) != pcf.cones.end());
  CHECK(fan_validity_offenders(pcf).empty());

  IVec id_flat = iv({1, 0, 1});  // the identity form lies on the shared face
  CHECK(principal.contains(id_flat));
  CHECK(mirror.contains(id_flat));
  Cone shared(3, {iv({1, 0, 0}), iv({0, 0, 1})});
  CHECK(principal.has_face(shared));
  CHECK(mirror.has_face(shared));
  CHECK(shared.contains(id_flat));
  CHECK(principal.contains(iv({2, 1, 2})));

  CHECK_THROWS_AS(perfect_cone_fan(3), std::domain_error);
}

TEST_CASE("toric canonicity verdicts, frozen 2d cases") {
  auto r1 = toric_is_canonical(Cone(2, {iv({1, 0}), iv({1, 1})}));
  CHECK(r1.verdict == ToricVerdict::Smooth);

  auto r2 = toric_is_canonical(Cone(2, {iv({1, 0}), iv({1, 2})}));
  CHECK(r2.verdict == ToricVerdict::Canonical);
  REQUIRE(r2.m);
  CHECK((*r2.m)[0] == Rat(1));
  CHECK((*r2.m)[1] == Rat(0));

  auto r3 = toric_is_canonical(Cone(2, {iv({1, 0}), iv({1, 3})}));
  CHECK(r3.verdict == ToricVerdict::Canonical);

  auto r4 = toric_is_canonical(Cone(2, {iv({0, 1}), iv({3, -1})}));
  CHECK(r4.verdict == ToricVerdict::NotCanonical);
  REQUIRE(r4.violating_point);
  CHECK(*r4.violating_point == iv({1, 0}));
  REQUIRE(r4.m);
  CHECK((*r4.m)[0] == Rat(2, 3));
  CHECK((*r4.m)[1] == Rat(1));
}

TEST_CASE("group action on lifted points") {
  IMat one(1, 1);
  one.at(0, 0) = 1;
  LiftedPoint q;
  q.b = QuadForm(one);
  q.ells = {iv({0})};
  LiftedPoint out = group_act(IMat::identity(1), {iv({1})}, q);
  CHECK(out.ells[0] == iv({1}));

  IMat hm(1, 1);
  hm.at(0, 0) = -1;
  LiftedPoint q2;
  q2.b = QuadForm(one);
  q2.ells = {iv({1})};
  LiftedPoint out2 = group_act(hm, {iv({0})}, q2);
  CHECK(out2.b.m.at(0, 0) == 1);
  CHECK(out2.ells[0] == iv({-1}));

  LiftedPoint out3 = group_act(IMat::identity(1), {iv({0})}, q2);
  CHECK(out3.b == q2.b);
  CHECK(out3.ells == q2.ells);
}

TEST_CASE("sign flip permutes the staircase cones") {
  Fan st = lifted_fan(1, 1, 3);
  IMat act(2, 2);
  act.at(0, 0) = 1;
  act.at(1, 1) = -1;
  auto rep = ray_permutation_check(act, st);
  CHECK(rep.ok);
  bool found = false;
  Cone c01(2, {iv({1, 0}), iv({1, 1})});
  Cone c0m1(2, {iv({1, -1}), iv({1, 0})});
  for (const auto& [a, b] : rep.swapped)
    if (a == c01 && b == c0m1) found = true;
  CHECK(found);
  auto repid = ray_permutation_check(IMat::identity(2), st);
  CHECK(repid.ok);
  CHECK(repid.swapped.empty());
}

TEST_CASE("stellar subdivision keeps fan validity") {
  Fan st = lifted_fan(1, 1, 3);
  Fan sub = stellar_subdivide(st, iv({2, 1}));
  CHECK(fan_validity_offenders(sub).empty());
  CHECK(sub.cones.size() == 5);
  CHECK(is_equidim_codim1(sub, perfect_cone_fan(1)).ok);
  Cone piece(2, {iv({1, 0}), iv({2, 1})});
  CHECK(std::find(sub.cones.begin(), sub.cones.end(), piece) != sub.cones.end());
}

TEST_CASE("refinement to smooth cones") {
  Fan st = lifted_fan(1, 1, 3);
  CHECK(refine_to_smooth(st) == st);  // already smooth

  Fan a1;
  a1.ambient_rank = 2;
  a1.cones.push_back(Cone(2, {iv({1, 0}), iv({1, 2})}));
  Fan ra1 = refine_to_smooth(a1);
  CHECK(ra1.cones.size() == 2);
  auto rays = ra1.rays();
  CHECK(std::find(rays.begin(), rays.end(), iv({1, 1})) != rays.end());

  Fan a4;
  a4.ambient_rank = 2;
  a4.cones.push_back(Cone(2, {iv({1, 0}), iv({1, 5})}));
  Fan ra4 = refine_to_smooth(a4);
  CHECK(ra4.cones.size() == 5);
  for (const auto& c : ra4.cones) CHECK(is_smooth_cone(c));
  auto r4 = ra4.rays();
  for (long long c = 0; c <= 5; ++c)
    CHECK(std::find(r4.begin(), r4.end(), iv({1, c})) != r4.end());

  SECTION("cube fan: refined fan is smooth, valid, and refines the input") {
    Fan sq = lifted_fan(1, 2, 2);
    Fan rsq = refine_to_smooth(sq);
    for (const auto& c : rsq.cones) CHECK(is_smooth_cone(c));
    CHECK(fan_validity_offenders(rsq).empty());
    for (const auto& c : rsq.cones) {
      bool inside = false;
      for (const auto& parent : sq.cones) {
        bool all = true;
        for (const auto& g : c.gens())
          if (!parent.contains(g)) {
            all = false;
            break;
          }
        if (all) {
          inside = true;
          break;
        }
      }
      CHECK(inside);
    }
  }
}

TEST_CASE("lifted fan over the rank-2 base, window 2") {
  Fan lf = lifted_fan(2, 1, 2);
  REQUIRE(lf.cones.size() == 24);
  for (const auto& c : lf.cones) {
    CHECK(c.dim() == 5);
    CHECK(c.is_simplicial());
  }
  CHECK(fan_validity_offenders(lf).empty());
  Fan base = perfect_cone_fan(2, 2);
  CHECK(is_equidim_codim1(lf, base).ok);
  CHECK(no_interior_rays(lf, 2, 1).ok);
  CHECK(base_cone_inclusion(lf, base, 2, 1).ok);
  for (const auto& c : lf.cones)
    CHECK(toric_is_canonical(c).verdict == ToricVerdict::Smooth);

  SECTION("unsupported shapes are rejected") {
    CHECK_THROWS_AS(lifted_fan(2, 2, 2), std::domain_error);
    CHECK_THROWS_AS(lifted_fan(3, 1, 2), std::domain_error);
    CHECK_THROWS_AS(lifted_fan(0, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(lifted_fan(1, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(lifted_fan(1, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("lifted fan over the rank-2 base, window 3", "[slow]") {
  Fan lf = lifted_fan(2, 1, 3);
  CHECK(lf.cones.size() == 84);
  CHECK(fan_validity_offenders(lf).empty());
  CHECK(no_interior_rays(lf, 2, 1).ok);
  for (const auto& c : lf.cones) {
    CHECK(c.dim() == 5);
    auto rep = toric_is_canonical(c);
    bool ok = rep.verdict == ToricVerdict::Smooth ||
              rep.verdict == ToricVerdict::Canonical;
    CHECK(ok);
  }
}

#include <chrono>

#include "doctest.h"
#include "nonflat/coend.hpp"

using namespace nonflat;

namespace {
const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

HopfPtr group2(const Field& f) { return std::make_shared<HopfData>(build_group_algebra(cyclic_group_table(2), f)); }
HopfPtr sweedler() { return std::make_shared<HopfData>(build_sweedler(Q)); }
}  // namespace

TEST_CASE("builders produce valid modules") {
  for (auto h : {group2(Q), group2(F2), sweedler()}) {
    for (Side s : {Side::left, Side::right}) {
      Rep reg = regular_module(h, s);
      CHECK_NOTHROW(reg.validate());
      CHECK_NOTHROW(trivial_module(h, 2, s).validate());
      CHECK_NOTHROW(dual_module(reg).validate());
      CHECK_NOTHROW(dual_pullback(reg).validate());
      CHECK_NOTHROW(twist_module(reg, 1).validate());
      CHECK_NOTHROW(twist_module(reg, 2).validate());
      CHECK_NOTHROW(tensor_modules(reg, reg).validate());
    }
  }
}

TEST_CASE("tensor_modules") {
  auto h = group2(F2);
  Rep a = regular_module(h);
  Rep t = trivial_module(h, 1);
  Rep ta = tensor_modules(t, a);
  CHECK(ta.action == a.action);
  CHECK(tensor_modules(a, a).dim == 4);
  auto fr = is_free(tensor_modules(a, a));
  CHECK(fr.verdict == Verdict::yes);
  CHECK(fr.rank == 2);
  CHECK_THROWS_AS(tensor_modules(a, regular_module(h, Side::right)), Error);
}

TEST_CASE("dual modules and twists") {
  auto h = group2(Q);
  Rep t = trivial_module(h, 3);
  CHECK(dual_module(t).action == trivial_module(h, 3, Side::right).action);
  CHECK(dual_module(t).side == Side::right);
  Rep reg = regular_module(h);
  CHECK(dual_pullback(dual_pullback(reg)).action == reg.action);
  CHECK(dual_module(reg).dim == 2);
  CHECK(twist_module(reg, 0).action == reg.action);
  CHECK(twist_module(reg, 2).action == reg.action);
  CHECK(twist_module(reg, -2).action == reg.action);
  CHECK(twist_module(reg, 1).side == Side::right);
  auto sw = sweedler();
  CHECK(twist_module(regular_module(sw), 0).action == regular_module(sw).action);
  CHECK(twist_module(regular_module(sw), 2).action != regular_module(sw).action);
}

TEST_CASE("trivial module") {
  auto sw = sweedler();
  Rep t = trivial_module(sw, 3);
  CHECK(t.act(sw->unit()).is_identity());
  CHECK(t.action[1].is_identity());  // g is group-like
  CHECK(t.action[2].is_zero());
  CHECK(t.dim == 3);
}

TEST_CASE("hom_space dimensions") {
  auto h = group2(F2);
  Rep a = regular_module(h);
  Rep t = trivial_module(h, 1);
  CHECK(hom_space(a, a).size() == 2);
  CHECK(hom_space(t, a).size() == 1);
  CHECK(hom_space(t, t).size() == 1);
  for (const auto& f : hom_space(a, a)) CHECK(is_intertwiner(a, a, f));
  // symmetric under simultaneous dualization
  auto sw = sweedler();
  Rep m = direct_sum_modules(regular_module(sw), trivial_module(sw, 1));
  Rep n = tensor_modules(regular_module(sw), trivial_module(sw, 1));
  CHECK(hom_space(m, n).size() == hom_space(dual_module(n), dual_module(m)).size());
}

TEST_CASE("random_hom and is_isomorphic") {
  auto h = group2(F2);
  Rep a = regular_module(h);
  CHECK(random_hom(a, a, 5, 3) == random_hom(a, a, 5, 3));
  CHECK(is_intertwiner(a, a, random_hom(a, a, 5, 3)));
  auto iso = is_isomorphic(a, a);
  CHECK(iso.verdict == Verdict::yes);
  REQUIRE(iso.iso);
  CHECK(is_invertible(*iso.iso));
  auto no = is_isomorphic(a, trivial_module(h, 2));
  CHECK(no.verdict == Verdict::no);
  CHECK(no.reason == "invariant");
}

TEST_CASE("is_projective") {
  auto f2 = group2(F2);
  auto cert = is_projective(regular_module(f2));
  CHECK(cert.projective);
  REQUIRE(cert.splitting);
  CHECK_FALSE(is_projective(trivial_module(f2, 1)).projective);
  auto bad = is_projective(trivial_module(f2, 1));
  CHECK(bad.augmented_rank == bad.system_rank + 1);
  CHECK(is_projective(trivial_module(group2(Q), 1)).projective);
  auto sw = sweedler();
  CHECK_FALSE(is_projective(trivial_module(sw, 1)).projective);
  CHECK_FALSE(is_projective(trivial_module(sw, 1, Side::right)).projective);
  CHECK(is_projective(regular_module(sw, Side::right)).projective);
  // semisimple: everything projective
  auto q2 = group2(Q);
  Rep m = direct_sum_modules(regular_module(q2), trivial_module(q2, 2));
  CHECK(is_projective(m).projective);
  CHECK(is_projective(dual_module(m)).projective);
}

TEST_CASE("projectivity survives duality") {
  auto sw = sweedler();
  std::vector<Rep> mods = {regular_module(sw), trivial_module(sw, 2), twist_module(regular_module(sw), 1),
                           direct_sum_modules(regular_module(sw), trivial_module(sw, 1))};
  for (const auto& m : mods) CHECK(is_projective(m).projective == is_projective(dual_module(m)).projective);
}

TEST_CASE("is_free") {
  auto f2 = group2(F2);
  auto r = is_free(free_module(f2, 2));
  CHECK(r.verdict == Verdict::yes);
  CHECK(r.rank == 2);
  auto d = is_free(trivial_module(f2, 3));
  CHECK(d.verdict == Verdict::no);
  CHECK(d.evidence.front() == "divisibility");
  Rep v = direct_sum_modules(regular_module(f2), trivial_module(f2, 1));
  auto c = is_free(coend(v).as_right_module());
  CHECK(c.verdict == Verdict::no);
  CHECK(std::find(c.evidence.begin(), c.evidence.end(), "invariant") != c.evidence.end());
  // A (x) m is free of rank dim m
  auto sw = sweedler();
  for (const auto& m : {trivial_module(sw, 1), trivial_module(sw, 3), regular_module(sw)}) {
    auto fr = is_free(tensor_modules(regular_module(sw), m));
    CHECK(fr.verdict == Verdict::yes);
    CHECK(fr.rank == m.dim);
  }
}

TEST_CASE("coev ev identity") {
  auto q2 = group2(Q);
  CHECK(coev_ev_identity(regular_module(q2)));
  CHECK(coev_ev_identity(regular_module(sweedler())));
  Matrix ev(Q, 1, 4);
  ev(0, 0) = -Q.one();
  ev(0, 3) = -Q.one();
  CHECK_FALSE(coev_ev_identity(regular_module(q2), ev));
}

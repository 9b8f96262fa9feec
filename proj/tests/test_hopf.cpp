#include "doctest.h"
#include "nonflat/hopf.hpp"

using namespace nonflat;

namespace {
const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

Matrix ints(const Field& f, std::vector<std::vector<long long>> rows) { return Matrix::from_ints(f, rows); }
}  // namespace

TEST_CASE("verify_hopf on builders") {
  CHECK(verify_hopf(build_group_algebra(cyclic_group_table(2), Q)).all_pass());
  CHECK(verify_hopf(build_group_algebra(cyclic_group_table(3), F3)).all_pass());
  CHECK(verify_hopf(build_sweedler(Q)).all_pass());
  CHECK(verify_hopf(build_taft(3, Field::cyclotomic(3))).all_pass());
  CHECK(verify_hopf(build_taft(3, Field::prime(7))).all_pass());
  CHECK(verify_hopf(build_taft(4, Field::cyclotomic(4))).all_pass());
}

TEST_CASE("corrupted Sweedler coproduct breaks coassociativity") {
  HopfData h = build_sweedler(Q);
  // Delta(x) = x(x)1 - g(x)x ; x is basis index 2, g is 1
  h.comult(2, 1, 2) = -Q.one();
  auto report = verify_hopf(h);
  const AxiomCheck* c = report.find("coassociativity");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
  REQUIRE(c->witness.has_value());
  CHECK((*c->witness)[0] == 2);
  CHECK((*c->witness)[1] == -1);
}

TEST_CASE("group algebra builder") {
  HopfData q2 = build_group_algebra(cyclic_group_table(2), Q);
  CHECK(q2.dim() == 2);
  CHECK(q2.antipode() == Matrix::identity(Q, 2));
  HopfData f2 = build_group_algebra(cyclic_group_table(2), F2);
  CHECK(f2.counit() == Vector{F2.one(), F2.one()});
  CHECK_THROWS_AS(build_group_algebra({{1, 0}, {0, 0}}, Q), Error);
  try {
    build_group_algebra({{1, 1}, {1, 1}}, Q);
    FAIL("expected NotAGroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_group);
  }
}

TEST_CASE("Sweedler structure and Taft(2) agreement") {
  HopfData s = build_sweedler(Q);
  CHECK(s.dim() == 4);
  // basis 1, g, x, gx
  auto e = [&](std::size_t i) { return s.basis_vector(i); };
  CHECK(s.multiply(e(1), e(1)) == e(0));
  CHECK(s.multiply(e(2), e(2)) == Vector(4, Q.zero()));
  Vector minus_gx = e(3);
  minus_gx[3] = -Q.one();
  CHECK(s.multiply(e(2), e(1)) == minus_gx);
  CHECK(s.antipode() == ints(Q, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}));
  CHECK(build_taft(2, Q, -Q.one()) == s);
  CHECK(build_taft(2, Q) == s);
  try {
    build_taft(3, Q);
    FAIL("expected BadRoot");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_root);
  }
  CHECK_THROWS_AS(build_taft(3, Field::cyclotomic(3), Field::cyclotomic(3).one()), Error);
}

TEST_CASE("antipode powers") {
  HopfData c2 = build_group_algebra(cyclic_group_table(2), Q);
  CHECK(antipode_power(c2, 2) == Matrix::identity(Q, 2));
  HopfData s = build_sweedler(Q);
  Matrix s2 = antipode_power(s, 2);
  CHECK(s2 != Matrix::identity(Q, 4));
  CHECK(s2 == ints(Q, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}));
  CHECK(antipode_power(s, 4) == Matrix::identity(Q, 4));
  CHECK(antipode_power(s, -1) * s.antipode() == Matrix::identity(Q, 4));
}

TEST_CASE("S^2 is conjugation by g for Taft algebras") {
  for (auto h : {build_sweedler(Q), build_taft(3, Field::cyclotomic(3)), build_taft(4, Field::prime(5))}) {
    // a -> g^-1 a g
    const std::size_t g = 1;
    Matrix conj = mat_inverse(h.left_mult(g)) * h.right_mult(g);
    CHECK(antipode_power(h, 2) == conj);
  }
}

TEST_CASE("integrals and semisimplicity") {
  auto q2 = build_group_algebra(cyclic_group_table(2), Q);
  auto li = integral_space(q2, Side::left);
  REQUIRE(li.size() == 1);
  CHECK(li[0][0] == li[0][1]);
  auto f2 = build_group_algebra(cyclic_group_table(2), F2);
  auto fi = integral_space(f2, Side::left);
  REQUIRE(fi.size() == 1);
  CHECK(fi[0] == Vector{F2.one(), F2.one()});
  auto sw = build_sweedler(Q);
  auto si = integral_space(sw, Side::left);
  REQUIRE(si.size() == 1);
  CHECK(si[0][0].is_zero());
  CHECK(si[0][1].is_zero());
  CHECK(si[0][2] == si[0][3]);  // span{x + gx}
  CHECK(integral_space(sw, Side::right).size() == 1);

  CHECK(is_semisimple(q2));
  CHECK_FALSE(is_semisimple(f2));
  CHECK_FALSE(is_semisimple(sw));
  for (int n : {2, 3})
    for (const Field& f : {Q, F2, F3}) {
      bool expect = f.characteristic() == 0 || n % static_cast<int>(f.characteristic()) != 0;
      CHECK(is_semisimple(build_group_algebra(cyclic_group_table(n), f)) == expect);
    }
}

TEST_CASE("dualize") {
  for (auto h : {build_group_algebra(cyclic_group_table(2), Q), build_sweedler(Q),
                 build_taft(3, Field::cyclotomic(3))}) {
    HopfData d = dualize(h);
    CHECK(verify_hopf(d).all_pass());
    CHECK(dualize(d) == h);
    CHECK(integral_space(d, Side::left).size() == 1);
  }
  // Q[C2]^* is isomorphic to Q[C2] via 1 -> e0* + e1*, g -> e0* - e1*
  HopfData q2 = build_group_algebra(cyclic_group_table(2), Q);
  CHECK(change_basis(dualize(q2), ints(Q, {{1, 1}, {1, -1}})) == q2);
}

#include "doctest.h"
#include "nonflat/free_eval.hpp"

using namespace nonflat;

namespace {
const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

HopfPtr sweedler() { return std::make_shared<HopfData>(build_sweedler(Q)); }

const Witness& sweedler_witness() {
  static const Witness w = [] {
    WitnessOptions o;
    o.depth = 3;
    o.truncation = 5;
    o.seed = 11;
    return *build_witness(sweedler(), o).witness;
  }();
  return w;
}

std::size_t piece_dim(const BlockLayout& l, const Piece& p) { return l.u_block_dim(p.s) * l.v_piece_dim(p.t); }

// level 1 overwritten by the halfdual of level 0 itself, skipping the inverse
Witness skip_inverse(const Witness& w) {
  Witness bad = w;
  const BlockLayout& l = w.layout;
  const BlockOperator hd = halfdual_blocks(to_blocks(w.levels[0]), l);
  for (Cell& c : bad.levels[1].cells) {
    Matrix m(l.hopf->field(), c.matrix.rows(), c.matrix.cols());
    std::size_t r0 = 0;
    for (const auto& dst : c.dst) {
      std::size_t c0 = 0;
      for (const auto& src : c.src) {
        auto it = hd.find({src, dst});
        if (it != hd.end()) m.set_block(r0, c0, it->second);
        c0 += piece_dim(l, src);
      }
      r0 += piece_dim(l, dst);
    }
    c.matrix = m;
  }
  return bad;
}

std::map<UBlock, Vector> unit_at(const BlockLayout& l, UBlock b, std::size_t k) {
  Vector v(l.u_block_dim(b.s), l.hopf->field().zero());
  v[k] = l.hopf->field().one();
  return {{b, v}};
}
}  // namespace

TEST_CASE("word parsing") {
  FreeWord w = parse_word("2 c[0,1,2] a[1,0,0,0] + -1/2 c[1,0,0]", Q, 4);
  REQUIRE(w.terms.size() == 2);
  CHECK(w.terms[0].coefficient == Q.from_int(2));
  REQUIRE(w.terms[0].letters.size() == 2);
  CHECK(w.terms[0].letters[0].kind == Letter::Kind::generator);
  CHECK(w.terms[0].letters[0].j == 2);
  CHECK(w.terms[0].letters[1].kind == Letter::Kind::algebra);
  CHECK(w.terms[1].coefficient == Q.from_rational(Rational(-1, 2)));
  CHECK(parse_word("", Q, 4).terms.size() == 1);
  for (const char* bad : {"c[0,1]", "a[1,0]", "q[1]", "c[0,x,1]", "c[0,1,1] +", "1/0 c[0,0,0]"})
    CHECK_THROWS_AS(parse_word(bad, Q, 4), Error);
}

TEST_CASE("algebra letters act through the regular representation") {
  const Witness& w = sweedler_witness();
  const HopfData& h = *w.layout.hopf;
  LazyUOperator one = psi_alg(w, h.unit());
  CHECK(one.equal_on_domain(LazyUOperator::identity(w.layout)).has_value());

  auto c2 = std::make_shared<HopfData>(build_group_algebra(cyclic_group_table(2), F2));
  // psi_alg depends only on the layout
  const Witness bare{make_layout(c2, 1, 4), 0, {}};
  LazyUOperator g = psi_alg(bare, c2->basis_vector(1));
  CHECK(g.scalar() == F2.one());
  auto out = g.apply(unit_at(bare.layout, {0, 0}, 0));
  CHECK(out.at({0, 0}) == Vector{F2.zero(), F2.one()});
  auto fixed = g.apply(unit_at(bare.layout, {1, 3}, 0));
  CHECK(fixed.at({1, 3}) == Vector{F2.one()});
  CHECK(phi_faithful(h));
  CHECK(phi_faithful(*c2));
}

TEST_CASE("generator images are slices of the level operators") {
  const Witness& w = sweedler_witness();
  const BlockLayout& l = w.layout;
  const std::size_t a = l.a_dim;
  const Matrix& head = w.levels[0].cell({CellKind::head, 0}).matrix;  // U^0_0 (x) V_1 -> U^1_0 (x) V_0
  for (std::size_t i = 0; i < a; ++i) {
    LazyUOperator p = psi_generator(w, 0, i, a);
    const auto& comps = p.components();
    auto it = comps.find({UBlock{0, 0}, UBlock{1, 0}});
    REQUIRE(it != comps.end());
    for (std::size_t y = 0; y < a; ++y) CHECK(it->second(0, y) == head(i, y));
  }

  // trace over V: the U^0_0 -> U^0_0 part only sees the V_0 corner of D_0
  FreeWord trace;
  for (std::size_t i = 0; i < l.v_dim(); ++i) trace = trace + FreeWord::monomial(Q, {Letter::gen(0, i, i)});
  LazyUOperator t = eval_word(w, trace);
  const Matrix& d0 = w.levels[0].cell({CellKind::diagonal, 0}).matrix;
  Matrix expect(Q, a, a);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < a; ++y)
      for (std::size_t i = 0; i < a; ++i) expect(x, y) += d0(x * a + i, y * a + i);
  CHECK(t.components().at({UBlock{0, 0}, UBlock{0, 0}}) == expect);

  CHECK_THROWS_AS(psi_generator(w, 4, 0, 0), Error);
  try {
    eval_word(w, parse_word("c[9,0,0]", Q, a));
    FAIL("expected DepthExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::depth_exceeded);
  }
}

TEST_CASE("evaluation is multiplicative and stays exact") {
  const Witness& w = sweedler_witness();
  const std::size_t a = w.layout.a_dim;
  CHECK(eval_word(w, FreeWord::monomial(Q, {})).equal_on_domain(LazyUOperator::identity(w.layout)).has_value());
  const char* words[] = {"c[0,1,2]", "c[1,4,0] a[0,1,0,0]", "c[2,0,3] + 3 c[0,3,3]", "a[1,0,1,0] c[1,2,2]"};
  for (const char* x : words)
    for (const char* y : words) {
      FreeWord wx = parse_word(x, Q, a), wy = parse_word(y, Q, a);
      auto cmp = eval_word(w, wx * wy).equal_on_domain(eval_word(w, wx).compose(eval_word(w, wy)));
      REQUIRE(cmp.has_value());
    }
  // images of vectors far out in U reach past the materialized range
  LazyUOperator p = psi_generator(w, 0, 0, 0);
  CHECK_NOTHROW(p.apply(unit_at(w.layout, {0, 1}, 0)));
  try {
    p.apply(unit_at(w.layout, {0, 40}, 0));
    FAIL("expected TruncationExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::truncation_exceeded);
  }
}

TEST_CASE("relations hold under psi") {
  const Witness& w = sweedler_witness();
  RelationReport r = verify_relations(w);
  CHECK(r.all_pass());
  CHECK(r.module_checked == 2 * 25);
  CHECK(r.conv_checked == 3 * 25);
  CHECK(r.depth1_checked == 25);
  CHECK(r.depth1_failed == 0);
  CHECK(r.blocks_compared > 0);

  RelationReport bad = verify_relations(skip_inverse(w));
  CHECK_FALSE(bad.all_pass());
  CHECK(bad.depth1_failed > 0);
  CHECK(bad.module_failed == 0);

  RelationReport none = verify_relations(w, 0);
  CHECK(none.all_pass());
  CHECK(none.module_checked == 0);
  CHECK(none.conv_checked == 0);

  // perturbing f_0 off the intertwiner locus breaks the module relation
  Witness off = w;
  Cell& d1 = off.levels[0].cell({CellKind::diagonal, 1});
  d1.matrix(0, d1.matrix.cols() - 1) += Q.one();
  CHECK(verify_relations(off).module_failed > 0);
}

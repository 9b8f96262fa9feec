#include <random>

#include "doctest.h"
#include "nonflat/coend.hpp"

using namespace nonflat;

namespace {
const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

HopfPtr group2(const Field& f) { return std::make_shared<HopfData>(build_group_algebra(cyclic_group_table(2), f)); }
HopfPtr sweedler() { return std::make_shared<HopfData>(build_sweedler(Q)); }

Matrix random_matrix(std::mt19937_64& rng, const Field& f, std::size_t r, std::size_t c) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(static_cast<long long>(rng() % 7) - 3);
  return m;
}

ConvMap random_map(std::mt19937_64& rng, std::size_t u, std::size_t v) {
  ConvMap f{u, v, {}};
  for (std::size_t k = 0; k < v * v; ++k) f.values.push_back(random_matrix(rng, Q, u, u));
  return f;
}

// x (x) y -> sum S(x_2) y (x) x_1, written out independently of the library
Matrix galois_like(const HopfData& h) {
  const std::size_t d = h.dim();
  Matrix f(h.field(), d * d, d * d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) {
          if (h.comult(p, r, s).is_zero()) continue;
          Vector sy = h.multiply(h.antipode().col(s), h.basis_vector(q));
          for (std::size_t u = 0; u < d; ++u) f(u * d + r, p * d + q) += h.comult(p, r, s) * sy[u];
        }
  return f;
}
}  // namespace

TEST_CASE("coend basics") {
  auto h = group2(F2);
  Rep v = direct_sum_modules(regular_module(h), trivial_module(h, 1));
  ModuleCoalgebra c = coend(v);
  CHECK(c.dim == 9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(c.counit[i * 3 + j] == (i == j ? F2.one() : F2.zero()));
  CHECK(verify_module_coalgebra(c));
  CHECK_NOTHROW(c.as_right_module().validate());
  CHECK(verify_module_coalgebra(coend(direct_sum_modules(regular_module(sweedler()), trivial_module(sweedler(), 1)))));
}

TEST_CASE("coend action matches brute-force dualization") {
  auto h = group2(F2);
  Rep v = regular_module(h);
  ModuleCoalgebra c = coend(v);
  const std::size_t n = 2;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        Matrix beta(F2, n, n);
        beta(k, l) = F2.one();
        Matrix img(F2, n, n);
        for (std::size_t p = 0; p < 2; ++p)
          for (std::size_t q = 0; q < 2; ++q)
            if (!h->comult(a, p, q).is_zero())
              img += v.action[p] * beta * v.act(h->antipode().col(q)) * h->comult(a, p, q);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            // (e_ij^* . a)(E_kl) = e_ij^*(a > E_kl)
            CHECK(c.right_action[a](k * n + l, i * n + j) == img(i, j));
      }
}

TEST_CASE("convolution units and correspondence") {
  std::mt19937_64 rng(7);
  ConvMap unit = conv_unit(Q, 2, 2);
  for (int t = 0; t < 5; ++t) {
    ConvMap f = random_map(rng, 2, 2), g = random_map(rng, 2, 2), k = random_map(rng, 2, 2);
    CHECK(conv_mul(unit, f) == f);
    CHECK(conv_mul(f, unit) == f);
    CHECK(twist_conv_mul(unit, f) == f);
    CHECK(to_endo(conv_mul(f, g), Parity::even).matrix == to_endo(f, Parity::even).matrix * to_endo(g, Parity::even).matrix);
    CHECK(to_endo(twist_conv_mul(f, g), Parity::odd).matrix ==
          to_endo(f, Parity::odd).matrix * to_endo(g, Parity::odd).matrix);
    CHECK(conv_mul(conv_mul(f, g), k) == conv_mul(f, conv_mul(g, k)));
    CHECK(twist_conv_mul(twist_conv_mul(f, g), k) == twist_conv_mul(f, twist_conv_mul(g, k)));
    CHECK(from_endo(to_endo(f, Parity::even), Q, Parity::even) == f);
    CHECK(from_endo(to_endo(f, Parity::odd), Q, Parity::odd) == f);
  }
  CHECK(to_endo(unit, Parity::even).matrix.is_identity());
  CHECK(to_endo(unit, Parity::odd).matrix.is_identity());
}

TEST_CASE("halfdual laws") {
  std::mt19937_64 rng(11);
  Matrix alpha = random_matrix(rng, Q, 2, 2), beta = random_matrix(rng, Q, 3, 3);
  CHECK(halfdual(kronecker(alpha, beta), 2, 3) == kronecker(alpha, beta.transpose()));
  for (int t = 0; t < 20; ++t) {
    std::size_t u = 1 + t % 3, v = 1 + (t / 3) % 3;
    EndoOnTensor f{u, v, random_matrix(rng, Q, u * v, u * v)};
    CHECK(halfdual(halfdual(f)) == f);
  }
  CHECK(halfdual(Matrix::identity(Q, 6), 2, 3).is_identity());
}

TEST_CASE("conv_inverse") {
  std::mt19937_64 rng(3);
  ConvMap unit = conv_unit(Q, 2, 2);
  CHECK(conv_inverse(unit, Q) == unit);
  ConvMap f = random_map(rng, 2, 2);
  while (!is_invertible(to_endo(f, Parity::even).matrix)) f = random_map(rng, 2, 2);
  ConvMap inv = conv_inverse(f, Q);
  CHECK(conv_mul(f, inv) == unit);
  Matrix e = to_endo(f, Parity::even).matrix;
  CHECK(to_endo(inv, Parity::odd).matrix == halfdual(mat_inverse(e), 2, 2));
  ConvMap zero{2, 2, std::vector<Matrix>(4, Matrix(Q, 2, 2))};
  try {
    conv_inverse(zero, Q);
    FAIL("expected NotConvInvertible");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::not_conv_invertible);
  }
}

TEST_CASE("check_cond") {
  auto h = group2(F2);
  Rep reg = regular_module(h);
  CHECK(check_cond({2, 2, Matrix::identity(F2, 4)}, 0, trivial_module(h, 2), reg));
  CHECK_FALSE(check_cond({2, 2, Matrix::identity(F2, 4)}, 0, reg, reg));
  CHECK(check_cond({2, 2, galois_like(*h)}, 0, reg, reg));
  CHECK_THROWS_AS(check_cond({2, 2, Matrix::identity(F2, 4)}, 0, trivial_module(h, 3), reg), Error);
}

TEST_CASE("inverse then halfdual moves the even-level condition to the next odd level") {
  for (HopfPtr h : std::vector<HopfPtr>{group2(F2), sweedler(), std::make_shared<HopfData>(build_taft(3, Field::cyclotomic(3)))}) {
    Rep reg = regular_module(h);
    const std::size_t d = h->dim();
    Matrix f = galois_like(*h);
    REQUIRE(check_cond({d, d, f}, 0, reg, reg));
    REQUIRE(is_invertible(f));
    Matrix g = halfdual(mat_inverse(f), d, d);
    CHECK(check_cond({d, d, g}, 1, reg, reg));
  }
}

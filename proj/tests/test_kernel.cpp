#include <random>

#include "doctest.h"
#include "nonflat/matrix.hpp"

using namespace nonflat;

namespace {
const Field Q = Field::rationals();

Matrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  Matrix m(Q, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = Q.from_int(static_cast<long long>(rng() % (2 * bound + 1)) - bound);
  return m;
}
}  // namespace

TEST_CASE("scalar fields") {
  CHECK(Q.from_rational(Rational(6, -4)).to_string() == "-3/2");
  const Field f5 = Field::prime(5);
  CHECK((f5.from_int(3) * f5.from_int(4)).to_string() == "2 mod 5");
  CHECK(f5.from_int(-1).to_string() == "4 mod 5");
  CHECK((f5.from_int(3).inverse() * f5.from_int(3)).is_one());
  CHECK_THROWS_AS(Field::prime(6), Error);
  CHECK(Field::parse("F2") == Field::prime(2));
  CHECK(Field::parse("Fp:3") == Field::prime(3));
  CHECK(Field::parse("Q") == Q);

  const Field c3 = Field::cyclotomic(3);
  CHECK(c3.degree() == 2);
  Scalar z = c3.zeta();
  // zeta^2 + zeta + 1 = 0 and zeta^3 = 1
  CHECK((z * z + z + c3.one()).is_zero());
  CHECK((z * z * z).is_one());
  CHECK((z.inverse() * z).is_one());
  CHECK((z * z).to_string() == "[-1,-1] cyc 3");
}

TEST_CASE("mat_inverse examples") {
  CHECK(mat_inverse(Matrix::identity(Q, 3)) == Matrix::identity(Q, 3));
  CHECK(mat_inverse(Matrix::from_ints(Q, {{1, 1}, {0, 1}})) == Matrix::from_ints(Q, {{1, -1}, {0, 1}}));
  try {
    mat_inverse(Matrix::from_ints(Q, {{1, 1}, {1, 1}}));
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_matrix);
  }
}

TEST_CASE("solve_affine examples") {
  auto s = solve_affine(Matrix::identity(Q, 2), {Q.from_int(1), Q.from_int(2)});
  CHECK(s.particular == Vector{Q.from_int(1), Q.from_int(2)});
  CHECK(s.kernel.empty());
  auto z = solve_affine(Matrix(Q, 2, 2), {Q.zero(), Q.zero()});
  CHECK(z.particular == Vector{Q.zero(), Q.zero()});
  CHECK(z.kernel.size() == 2);
  try {
    solve_affine(Matrix(Q, 2, 2), {Q.one(), Q.zero()});
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::infeasible);
  }
}

TEST_CASE("kronecker examples") {
  CHECK(kronecker(Matrix::identity(Q, 2), Matrix::identity(Q, 3)) == Matrix::identity(Q, 6));
  auto n = Matrix::from_ints(Q, {{0, 1}, {0, 0}});
  CHECK(kronecker(n, Matrix::identity(Q, 1)) == n);
  CHECK(kronecker(Matrix::from_ints(Q, {{2}}), Matrix::from_ints(Q, {{3}})) == Matrix::from_ints(Q, {{6}}));
}

TEST_CASE("random inverse involution and mixed product") {
  std::mt19937_64 rng(1234);
  int tested = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 8;
    Matrix m = random_int_matrix(rng, n, n, 5);
    if (!is_invertible(m)) continue;
    ++tested;
    Matrix inv = mat_inverse(m);
    CHECK(m * inv == Matrix::identity(Q, n));
    CHECK(mat_inverse(inv) == m);
  }
  CHECK(tested > 40);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = random_int_matrix(rng, 2, 3, 3), c = random_int_matrix(rng, 3, 2, 3);
    Matrix b = random_int_matrix(rng, 2, 2, 3), d = random_int_matrix(rng, 2, 3, 3);
    CHECK(kronecker(a, b) * kronecker(c, d) == kronecker(a * c, b * d));
  }
}

TEST_CASE("solve_affine infeasible exactly on rank jump") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix a = random_int_matrix(rng, 4, 3, 2);
    if (trial % 2) a.set_block(0, 2, a.block(0, 0, 4, 1));  // force rank deficiency
    Matrix rhs = random_int_matrix(rng, 4, 1, 2);
    Matrix aug(Q, 4, 4);
    aug.set_block(0, 0, a);
    aug.set_block(0, 3, rhs);
    bool feasible = true;
    try {
      auto s = solve_affine(a, rhs.col(0));
      CHECK(a * s.particular == rhs.col(0));
      for (const auto& k : s.kernel) CHECK(a * k == Vector(4, Q.zero()));
      CHECK(s.kernel.size() == 3 - rank(a));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::infeasible);
      feasible = false;
    }
    CHECK(feasible == (rank(aug) == rank(a)));
  }
}

TEST_CASE("span basis") {
  SpanBasis s(Q, 3);
  CHECK(s.insert({Q.one(), Q.one(), Q.zero()}));
  CHECK(s.insert({Q.zero(), Q.one(), Q.zero()}));
  CHECK_FALSE(s.insert({Q.from_int(2), Q.from_int(5), Q.zero()}));
  CHECK(s.contains({Q.one(), Q.zero(), Q.zero()}));
  CHECK_FALSE(s.contains({Q.zero(), Q.zero(), Q.one()}));
  CHECK(s.size() == 2);
}

TEST_CASE("determinant and power") {
  CHECK(determinant(Matrix::from_ints(Q, {{2, 1}, {7, 4}})) == Q.one());
  Matrix m = Matrix::from_ints(Q, {{1, 1}, {0, 1}});
  CHECK(mat_power(m, 3) == Matrix::from_ints(Q, {{1, 3}, {0, 1}}));
  CHECK(mat_power(m, -2) == Matrix::from_ints(Q, {{1, -2}, {0, 1}}));
  CHECK(mat_power(m, 0) == Matrix::identity(Q, 2));
}

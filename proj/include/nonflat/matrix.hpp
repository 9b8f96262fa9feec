#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonflat/scalar.hpp"

namespace nonflat {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a single exact field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix zero(const Field& field, std::size_t rows, std::size_t cols) { return Matrix(field, rows, cols); }
  /// Integer literal convenience, mostly for tests.
  static Matrix from_ints(const Field& field, const std::vector<std::vector<long long>>& rows);
  static Matrix column(const Field& field, const Vector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  const Field& field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Scalar>& entries() const { return data_; }

  Vector col(std::size_t c) const;
  bool is_zero() const;
  bool is_identity() const;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& m);
Scalar determinant(const Matrix& m);
bool is_invertible(const Matrix& m);
Matrix mat_inverse(const Matrix& m);
Matrix mat_power(const Matrix& m, long long n);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& m);

struct AffineSolution {
  Vector particular;
  std::vector<Vector> kernel;
};

/// Solves coeffs * x = rhs exactly; throws Infeasible when rhs is outside the
/// column space.
AffineSolution solve_affine(const Matrix& coeffs, const Vector& rhs);

/// Row-reduced echelon basis of the span of the given vectors.
class SpanBasis {
 public:
  SpanBasis(Field field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  /// Adds v; returns false if it was already in the span.
  bool insert(Vector v);
  bool contains(Vector v) const;
  std::size_t size() const { return rows_.size(); }
  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Vector>& basis() const { return rows_; }

 private:
  void reduce(Vector& v) const;

  Field field_;
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace nonflat

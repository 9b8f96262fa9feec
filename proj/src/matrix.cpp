#include "nonflat/matrix.hpp"

#include <utility>

namespace nonflat {

namespace {

void require_shape(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::shape_mismatch, what);
}

// Gauss-Jordan elimination in place over the first `ncols` columns. Returns
// pivot columns; rows [0, pivots.size()) end up in reduced echelon form.
std::vector<std::size_t> row_reduce(std::vector<Vector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t width = rows.empty() ? 0 : rows[0].size();
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    Vector& prow = rows[r];
    if (!prow[c].is_one()) {
      Scalar inv = prow[c].inverse();
      for (std::size_t k = c; k < width; ++k)
        if (!prow[k].is_zero()) prow[k] *= inv;
    }
    support.clear();
    for (std::size_t k = c; k < width; ++k)
      if (!prow[k].is_zero()) support.push_back(k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar f = rows[i][c];
      for (std::size_t k : support) rows[i][k].sub_mul(f, prow[k]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Vector> to_rows(const Matrix& m) {
  std::vector<Vector> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i].assign(m.row(i).begin(), m.row(i).end());
  return rows;
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  require_shape(data_.size() == rows * cols, "entry count does not match rows*cols");
  for (const auto& s : data_)
    if (!(s.field() == field_)) throw Error(ErrorCode::field_mismatch, "matrix entry from another field");
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::from_ints(const Field& field, const std::vector<std::vector<long long>>& rows) {
  const std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
  Matrix m(field, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    require_shape(rows[i].size() == nc, "ragged literal");
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(const Field& field, const Vector& v) {
  return Matrix(field, v.size(), 1, v);
}

Vector Matrix::col(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& s = (*this)(i, j);
      if (i == j ? !s.is_one() : !s.is_zero()) return false;
    }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require_shape(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_shape(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_shape(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      if (!b(i, j).is_zero()) (*this)(r0 + i, c0 + j) += b(i, j);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_shape(rows_ == o.rows_ && cols_ == o.cols_, "addition of differently shaped matrices");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_shape(rows_ == o.rows_ && cols_ == o.cols_, "subtraction of differently shaped matrices");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& e : data_)
    if (!e.is_zero()) e *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_shape(a.cols_ == b.rows_, "product of incompatible matrices");
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j).sub_mul(-aik, bkj);
      }
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  require_shape(a.cols_ == v.size(), "matrix-vector size mismatch");
  Vector out(a.rows_, a.field_.zero());
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i].sub_mul(-a(i, k), v[k]);
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

std::size_t rank(const Matrix& m) {
  auto rows = to_rows(m);
  return row_reduce(rows, m.cols()).size();
}

Scalar determinant(const Matrix& m) {
  require_shape(m.square(), "determinant of a non-square matrix");
  auto rows = to_rows(m);
  const std::size_t n = m.rows();
  Scalar det = m.field().one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && rows[piv][c].is_zero()) ++piv;
    if (piv == n) return m.field().zero();
    if (piv != c) {
      std::swap(rows[piv], rows[c]);
      det = -det;
    }
    det *= rows[c][c];
    Scalar inv = rows[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (rows[i][c].is_zero()) continue;
      Scalar f = rows[i][c] * inv;
      for (std::size_t k = c; k < n; ++k)
        if (!rows[c][k].is_zero()) rows[i][k].sub_mul(f, rows[c][k]);
    }
  }
  return det;
}

bool is_invertible(const Matrix& m) { return m.square() && rank(m) == m.rows(); }

Matrix mat_inverse(const Matrix& m) {
  require_shape(m.square(), "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Vector> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].assign(m.row(i).begin(), m.row(i).end());
    rows[i].resize(2 * n, m.field().zero());
    rows[i][n + i] = m.field().one();
  }
  auto pivots = row_reduce(rows, n);
  if (pivots.size() < n)
    throw Error(ErrorCode::singular_matrix, "rank " + std::to_string(pivots.size()) + " < " + std::to_string(n));
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = std::move(rows[i][n + j]);
  return inv;
}

Matrix mat_power(const Matrix& m, long long n) {
  require_shape(m.square(), "power of a non-square matrix");
  Matrix base = n < 0 ? mat_inverse(m) : m;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  Matrix result = Matrix::identity(m.field(), m.rows());
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::vector<Vector> nullspace(const Matrix& m) {
  auto rows = to_rows(m);
  auto pivots = row_reduce(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), m.field().zero());
    v[free] = m.field().one();
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!rows[r][free].is_zero()) v[pivots[r]] = -rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

AffineSolution solve_affine(const Matrix& coeffs, const Vector& rhs) {
  require_shape(coeffs.rows() == rhs.size(), "rhs length differs from row count");
  const std::size_t n = coeffs.cols();
  std::vector<Vector> rows(coeffs.rows());
  for (std::size_t i = 0; i < coeffs.rows(); ++i) {
    rows[i].assign(coeffs.row(i).begin(), coeffs.row(i).end());
    rows[i].push_back(rhs[i]);
  }
  auto pivots = row_reduce(rows, n);
  for (std::size_t r = pivots.size(); r < rows.size(); ++r)
    if (!rows[r][n].is_zero())
      throw Error(ErrorCode::infeasible, "rank [A|b] = " + std::to_string(pivots.size() + 1) + " > rank A = " +
                                             std::to_string(pivots.size()));
  AffineSolution sol;
  sol.particular.assign(n, coeffs.field().zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = rows[r][n];
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n, coeffs.field().zero());
    v[free] = coeffs.field().one();
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!rows[r][free].is_zero()) v[pivots[r]] = -rows[r][free];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

void SpanBasis::reduce(Vector& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (v[p].is_zero()) continue;
    Scalar f = v[p];
    for (std::size_t k = p; k < dim_; ++k)
      if (!rows_[r][k].is_zero()) v[k].sub_mul(f, rows_[r][k]);
  }
}

bool SpanBasis::contains(Vector v) const {
  reduce(v);
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

bool SpanBasis::insert(Vector v) {
  require_shape(v.size() == dim_, "vector length differs from ambient dimension");
  reduce(v);
  std::size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return false;
  Scalar inv = v[p].inverse();
  for (std::size_t k = p; k < dim_; ++k)
    if (!v[k].is_zero()) v[k] *= inv;
  // keep existing rows reduced against the new pivot
  for (auto& row : rows_) {
    if (row[p].is_zero()) continue;
    Scalar f = row[p];
    for (std::size_t k = p; k < dim_; ++k)
      if (!v[k].is_zero()) row[k].sub_mul(f, v[k]);
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

}  // namespace nonflat

#include "nonflat/coend.hpp"

namespace nonflat {

namespace {

void require_compatible(const ConvMap& f, const ConvMap& g) {
  if (f.u_dim != g.u_dim || f.v_dim != g.v_dim || f.values.size() != g.values.size())
    throw Error(ErrorCode::shape_mismatch, "convolution operands have different shapes");
}

}  // namespace

ModuleCoalgebra coend(const Rep& v) {
  if (v.side != Side::left) throw Error(ErrorCode::mixed_sides, "coend needs a left module");
  const HopfData& h = *v.hopf;
  const Field& f = h.field();
  const std::size_t n = v.dim, d = h.dim();
  ModuleCoalgebra c;
  c.hopf = v.hopf;
  c.v_dim = n;
  c.dim = n * n;
  c.comult.assign(c.dim * c.dim * c.dim, f.zero());
  c.counit.assign(c.dim, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    c.counit[i * n + i] = f.one();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) c.comult[((i * n + l) * c.dim + i * n + j) * c.dim + j * n + l] = f.one();
  }
  // tau(S e_q) for every basis element
  std::vector<Matrix> tau_s(d);
  for (std::size_t q = 0; q < d; ++q) tau_s[q] = v.act(h.antipode().col(q));
  for (std::size_t a = 0; a < d; ++a) {
    Matrix act(f, c.dim, c.dim);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        // a > E_kl = sum_{p,q} Delta(e_a)_{pq} tau(e_p) E_kl tau(S e_q)
        Matrix img(f, n, n);
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = 0; q < d; ++q) {
            const Scalar& coef = h.comult(a, p, q);
            if (coef.is_zero()) continue;
            // tau(e_p) E_kl tau(S e_q) = (column k of tau(e_p)) (row l of tau(S e_q))
            for (std::size_t i = 0; i < n; ++i) {
              const Scalar& left = v.action[p](i, k);
              if (left.is_zero()) continue;
              for (std::size_t j = 0; j < n; ++j)
                if (!tau_s[q](l, j).is_zero()) img(i, j) += coef * left * tau_s[q](l, j);
            }
          }
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) act(k * n + l, i * n + j) = img(i, j);
      }
    c.right_action.push_back(std::move(act));
  }
  return c;
}

bool verify_module_coalgebra(const ModuleCoalgebra& c) {
  const HopfData& h = *c.hopf;
  const Field& f = h.field();
  const std::size_t m = c.dim, d = h.dim();
  auto delta = [&](std::size_t k) {
    Matrix t(f, m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) t(i, j) = c.comult_at(k, i, j);
    return t;
  };
  for (std::size_t k = 0; k < m; ++k) {
    Matrix dk = delta(k);
    // counit laws
    Vector left(m, f.zero()), right(m, f.zero());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        left[j] += c.counit[i] * dk(i, j);
        right[i] += c.counit[j] * dk(i, j);
      }
    Vector e(m, f.zero());
    e[k] = f.one();
    if (left != e || right != e) return false;
    // coassociativity
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) {
          Scalar lhs = f.zero(), rhs = f.zero();
          for (std::size_t p = 0; p < m; ++p) {
            if (!dk(p, l).is_zero()) lhs += dk(p, l) * c.comult_at(p, i, j);
            if (!dk(i, p).is_zero()) rhs += dk(i, p) * c.comult_at(p, j, l);
          }
          if (lhs != rhs) return false;
        }
  }
  // Delta(c . a) = sum c_1 . a_1 (x) c_2 . a_2 and eps(c . a) = eps(c) eps(a)
  for (std::size_t a = 0; a < d; ++a) {
    const Matrix& ra = c.right_action[a];
    for (std::size_t k = 0; k < m; ++k) {
      Matrix lhs(f, m, m);
      for (std::size_t p = 0; p < m; ++p)
        if (!ra(p, k).is_zero()) lhs += delta(p) * ra(p, k);
      Matrix rhs(f, m, m);
      Matrix dk = delta(k);
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
          const Scalar& coef = h.comult(a, x, y);
          if (coef.is_zero()) continue;
          rhs += c.right_action[x] * dk * c.right_action[y].transpose() * coef;
        }
      if (lhs != rhs) return false;
      Scalar eps = f.zero();
      for (std::size_t p = 0; p < m; ++p) eps += c.counit[p] * ra(p, k);
      if (eps != c.counit[k] * h.counit()[a]) return false;
    }
  }
  return true;
}

Matrix halfdual(const Matrix& f, std::size_t u_dim, std::size_t v_dim) {
  const std::size_t n = u_dim * v_dim;
  if (f.rows() != n || f.cols() != n) throw Error(ErrorCode::shape_mismatch, "operator size is not u_dim*v_dim");
  Matrix out(f.field(), n, n);
  for (std::size_t a = 0; a < u_dim; ++a)
    for (std::size_t i = 0; i < v_dim; ++i)
      for (std::size_t b = 0; b < u_dim; ++b)
        for (std::size_t j = 0; j < v_dim; ++j) out(a * v_dim + i, b * v_dim + j) = f(a * v_dim + j, b * v_dim + i);
  return out;
}

EndoOnTensor halfdual(const EndoOnTensor& f) { return {f.u_dim, f.v_dim, halfdual(f.matrix, f.u_dim, f.v_dim)}; }

ConvMap conv_unit(const Field& field, std::size_t u_dim, std::size_t v_dim) {
  ConvMap u{u_dim, v_dim, std::vector<Matrix>(v_dim * v_dim, Matrix(field, u_dim, u_dim))};
  for (std::size_t i = 0; i < v_dim; ++i) u.values[i * v_dim + i] = Matrix::identity(field, u_dim);
  return u;
}

ConvMap conv_mul(const ConvMap& f, const ConvMap& g) {
  require_compatible(f, g);
  const std::size_t n = f.v_dim;
  ConvMap out = f;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      Matrix acc = f.values[i * n] * g.values[l];
      for (std::size_t j = 1; j < n; ++j) acc += f.values[i * n + j] * g.values[j * n + l];
      out.values[i * n + l] = std::move(acc);
    }
  return out;
}

ConvMap twist_conv_mul(const ConvMap& f, const ConvMap& g) {
  require_compatible(f, g);
  const std::size_t n = f.v_dim;
  ConvMap out = f;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      Matrix acc = f.values[l] * g.values[i * n];
      for (std::size_t j = 1; j < n; ++j) acc += f.values[j * n + l] * g.values[i * n + j];
      out.values[i * n + l] = std::move(acc);
    }
  return out;
}

Parity parity_of(long long n) { return n % 2 == 0 ? Parity::even : Parity::odd; }

EndoOnTensor to_endo(const ConvMap& f, Parity parity) {
  const std::size_t u = f.u_dim, n = f.v_dim;
  if (f.values.empty()) return {u, n, Matrix()};
  Matrix m(f.values[0].field(), u * n, u * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix& val = f.values[i * n + j];
      for (std::size_t a = 0; a < u; ++a)
        for (std::size_t b = 0; b < u; ++b) m(a * n + i, b * n + j) = val(a, b);
    }
  EndoOnTensor e{u, n, std::move(m)};
  return parity == Parity::even ? e : halfdual(e);
}

ConvMap from_endo(const EndoOnTensor& f, const Field& field, Parity parity) {
  const std::size_t u = f.u_dim, n = f.v_dim;
  const Matrix m = parity == Parity::even ? f.matrix : halfdual(f.matrix, u, n);
  ConvMap out{u, n, std::vector<Matrix>(n * n, Matrix(field, u, u))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < u; ++a)
        for (std::size_t b = 0; b < u; ++b) out.values[i * n + j](a, b) = m(a * n + i, b * n + j);
  return out;
}

ConvMap conv_inverse(const ConvMap& f, const Field& field) {
  EndoOnTensor e = to_endo(f, Parity::even);
  if (!is_invertible(e.matrix)) throw Error(ErrorCode::not_conv_invertible, "endo-image is singular");
  ConvMap inv = from_endo({e.u_dim, e.v_dim, mat_inverse(e.matrix)}, field, Parity::even);
  const ConvMap unit = conv_unit(field, f.u_dim, f.v_dim);
  if (!(conv_mul(f, inv) == unit) || !(conv_mul(inv, f) == unit))
    throw Error(ErrorCode::not_conv_invertible, "inverse failed exact re-verification");
  return inv;
}

bool check_cond(const EndoOnTensor& f, long long n, const Rep& u, const Rep& v) {
  if (u.side != Side::left || v.side != Side::left) throw Error(ErrorCode::mixed_sides, "U and V must be left modules");
  if (f.u_dim != u.dim || f.v_dim != v.dim || f.matrix.rows() != u.dim * v.dim || !f.matrix.square())
    throw Error(ErrorCode::shape_mismatch, "operator does not act on U (x) V");
  if (n % 2 == 0) {
    Rep source = tensor_modules(twist_module(u, n), v);
    Rep target = tensor_modules(trivial_module(u.hopf, u.dim, Side::left), v);
    return is_intertwiner(source, target, f.matrix);
  }
  Rep vdual = dual_module(v);
  Rep source = tensor_modules(trivial_module(u.hopf, u.dim, Side::right), vdual);
  Rep target = tensor_modules(twist_module(u, n), vdual);
  return is_intertwiner(source, target, f.matrix);
}

}  // namespace nonflat

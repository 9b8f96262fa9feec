#include "nonflat/hopf.hpp"

#include <set>

namespace nonflat {

namespace {

struct Term {
  std::size_t k;
  Scalar c;
};

struct PairTerm {
  std::size_t i, j;
  Scalar c;
};

// Sparse views of the structure tensors; every exhaustive check runs on these.
struct SparseStructure {
  std::size_t d;
  std::vector<std::vector<Term>> mult;       // index i*d + j
  std::vector<std::vector<PairTerm>> comult;  // index k

  explicit SparseStructure(const HopfData& h) : d(h.dim()), mult(d * d), comult(d) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          if (!h.mult(i, j, k).is_zero()) mult[i * d + j].push_back({k, h.mult(i, j, k)});
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (!h.comult(k, i, j).is_zero()) comult[k].push_back({i, j, h.comult(k, i, j)});
  }

  Vector mul(const Vector& x, const Vector& y, const Field& f) const {
    Vector out(d, f.zero());
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (y[j].is_zero()) continue;
        Scalar xy = x[i] * y[j];
        for (const auto& t : mult[i * d + j]) out[t.k] += xy * t.c;
      }
    }
    return out;
  }

  // product in A (x) A of d x d coefficient matrices
  Matrix mul2(const Matrix& a, const Matrix& b) const {
    Matrix out(a.field(), d, d);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) {
        if (a(p, q).is_zero()) continue;
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t s = 0; s < d; ++s) {
            if (b(r, s).is_zero()) continue;
            Scalar ab = a(p, q) * b(r, s);
            for (const auto& t1 : mult[p * d + r])
              for (const auto& t2 : mult[q * d + s]) out(t1.k, t2.k) += ab * t1.c * t2.c;
          }
      }
    return out;
  }

  Matrix delta(std::size_t k, const Field& f) const {
    Matrix out(f, d, d);
    for (const auto& t : comult[k]) out(t.i, t.j) = t.c;
    return out;
  }
};

std::array<int, 3> triple(long a, long b = -1, long c = -1) {
  return {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
}

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

// Shared constructor for Taft-type algebras: basis g^i x^j at index i + n*j,
// g^n = 1, x^n = 0, x g = q g x, Delta(g) = g(x)g, Delta(x) = x(x)1 + g(x)x.
HopfData taft_structure(int n, const Field& field, const Scalar& q) {
  const std::size_t d = static_cast<std::size_t>(n) * n;
  auto idx = [n](int i, int j) { return static_cast<std::size_t>(((i % n) + n) % n + n * j); };
  std::vector<Scalar> qpow(n, field.one());
  for (int k = 1; k < n; ++k) qpow[k] = qpow[k - 1] * q;

  std::vector<Scalar> mult(d * d * d, field.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (j + l >= n) continue;
          mult[(idx(i, j) * d + idx(k, l)) * d + idx(i + k, j + l)] = qpow[(j * k) % n];
        }

  Vector unit(d, field.zero());
  unit[idx(0, 0)] = field.one();
  Vector counit(d, field.zero());
  for (int i = 0; i < n; ++i) counit[idx(i, 0)] = field.one();

  // Build Delta and S multiplicatively from the generators.
  HopfData partial(field, d, mult, unit, std::vector<Scalar>(d * d * d, field.zero()), counit,
                   Matrix(field, d, d));
  SparseStructure ss(partial);
  Matrix dg(field, d, d), dx(field, d, d), one2(field, d, d);
  dg(idx(1, 0), idx(1, 0)) = field.one();
  dx(idx(0, 1), idx(0, 0)) = field.one();
  dx(idx(1, 0), idx(0, 1)) = field.one();
  one2(idx(0, 0), idx(0, 0)) = field.one();

  Vector sg(d, field.zero()), sx(d, field.zero()), e0(d, field.zero());
  sg[idx(n - 1, 0)] = field.one();
  sx[idx(n - 1, 1)] = -field.one();
  e0[idx(0, 0)] = field.one();

  std::vector<Scalar> comult(d * d * d, field.zero());
  Matrix antipode(field, d, d);
  std::vector<Matrix> dgi(n, one2);
  std::vector<Vector> sgi(n, e0);
  for (int i = 1; i < n; ++i) {
    dgi[i] = ss.mul2(dgi[i - 1], dg);
    sgi[i] = ss.mul(sgi[i - 1], sg, field);
  }
  Matrix dxj = one2;
  Vector sxj = e0;
  for (int j = 0; j < n; ++j) {
    if (j > 0) {
      dxj = ss.mul2(dxj, dx);
      sxj = ss.mul(sxj, sx, field);
    }
    for (int i = 0; i < n; ++i) {
      Matrix del = ss.mul2(dgi[i], dxj);
      const std::size_t k = idx(i, j);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) comult[(k * d + a) * d + b] = del(a, b);
      // S(g^i x^j) = S(x)^j S(g)^i
      Vector s = ss.mul(sxj, sgi[i], field);
      for (std::size_t a = 0; a < d; ++a) antipode(a, k) = s[a];
    }
  }
  HopfData h(field, d, std::move(mult), std::move(unit), std::move(comult), std::move(counit), std::move(antipode));
  Vector g(d, field.zero()), x(d, field.zero());
  g[idx(1, 0)] = field.one();
  x[idx(0, 1)] = field.one();
  h.set_generators({g, x});
  return h;
}

bool has_exact_order(const Scalar& q, int n) {
  Scalar p = q;
  for (int k = 1; k < n; ++k) {
    if (p.is_one()) return false;
    p *= q;
  }
  return p.is_one();
}

}  // namespace

std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

HopfData::HopfData(Field field, std::size_t dim, std::vector<Scalar> mult, Vector unit, std::vector<Scalar> comult,
                   Vector counit, Matrix antipode)
    : field_(std::move(field)),
      dim_(dim),
      mult_(std::move(mult)),
      unit_(std::move(unit)),
      comult_(std::move(comult)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)) {
  const std::size_t d3 = dim_ * dim_ * dim_;
  require(mult_.size() == d3, ErrorCode::shape_mismatch, "mult tensor must have dim^3 entries");
  require(comult_.size() == d3, ErrorCode::shape_mismatch, "comult tensor must have dim^3 entries");
  require(unit_.size() == dim_, ErrorCode::shape_mismatch, "unit must have dim entries");
  require(counit_.size() == dim_, ErrorCode::shape_mismatch, "counit must have dim entries");
  require(antipode_.rows() == dim_ && antipode_.cols() == dim_, ErrorCode::shape_mismatch,
          "antipode must be dim x dim");
}

std::vector<Vector> HopfData::generators() const {
  if (!generators_.empty()) return generators_;
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < dim_; ++i) basis.push_back(basis_vector(i));
  return basis;
}

Vector HopfData::basis_vector(std::size_t i) const {
  Vector v(dim_, field_.zero());
  v[i] = field_.one();
  return v;
}

Vector HopfData::multiply(const Vector& x, const Vector& y) const {
  Vector out(dim_, field_.zero());
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k)
        if (!mult(i, j, k).is_zero()) out[k] += xy * mult(i, j, k);
    }
  }
  return out;
}

Matrix HopfData::coproduct(const Vector& x) const {
  Matrix t(field_, dim_, dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    if (x[k].is_zero()) continue;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (!comult(k, i, j).is_zero()) t(i, j) += x[k] * comult(k, i, j);
  }
  return t;
}

Scalar HopfData::counit_of(const Vector& x) const {
  Scalar s = field_.zero();
  for (std::size_t i = 0; i < dim_; ++i)
    if (!x[i].is_zero() && !counit_[i].is_zero()) s += x[i] * counit_[i];
  return s;
}

Matrix HopfData::left_mult(std::size_t i) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = mult(i, j, k);
  return m;
}

Matrix HopfData::right_mult(std::size_t i) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = mult(j, i, k);
  return m;
}

Matrix HopfData::left_mult(const Vector& x) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!x[i].is_zero()) m += left_mult(i) * x[i];
  return m;
}

bool operator==(const HopfData& a, const HopfData& b) {
  return a.field_ == b.field_ && a.dim_ == b.dim_ && a.mult_ == b.mult_ && a.unit_ == b.unit_ &&
         a.comult_ == b.comult_ && a.counit_ == b.counit_ && a.antipode_ == b.antipode_;
}

bool AxiomReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const AxiomCheck* AxiomReport::find(const std::string& axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return &c;
  return nullptr;
}

AxiomReport verify_hopf(const HopfData& h) {
  const std::size_t d = h.dim();
  const Field& f = h.field();
  const SparseStructure ss(h);
  AxiomReport report;
  auto fail_first = [&](const std::string& name, auto&& search) {
    AxiomCheck c{name, true, std::nullopt};
    if (auto w = search()) {
      c.pass = false;
      c.witness = *w;
    }
    report.checks.push_back(std::move(c));
  };
  using Witness = std::optional<std::array<int, 3>>;
  std::vector<Vector> e(d);
  for (std::size_t i = 0; i < d; ++i) e[i] = h.basis_vector(i);

  fail_first("associativity", [&]() -> Witness {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Vector ij = ss.mul(e[i], e[j], f);
        for (std::size_t k = 0; k < d; ++k)
          if (ss.mul(ij, e[k], f) != ss.mul(e[i], ss.mul(e[j], e[k], f), f)) return triple(i, j, k);
      }
    return std::nullopt;
  });
  fail_first("unit", [&]() -> Witness {
    for (std::size_t i = 0; i < d; ++i)
      if (ss.mul(h.unit(), e[i], f) != e[i] || ss.mul(e[i], h.unit(), f) != e[i]) return triple(i);
    return std::nullopt;
  });
  fail_first("coassociativity", [&]() -> Witness {
    for (std::size_t k = 0; k < d; ++k) {
      // compare (Delta (x) id) Delta and (id (x) Delta) Delta as d^3 arrays
      std::vector<Scalar> lhs(d * d * d, f.zero()), rhs(d * d * d, f.zero());
      for (const auto& t : ss.comult[k]) {
        for (const auto& u : ss.comult[t.i]) lhs[(u.i * d + u.j) * d + t.j] += t.c * u.c;
        for (const auto& u : ss.comult[t.j]) rhs[(t.i * d + u.i) * d + u.j] += t.c * u.c;
      }
      if (lhs != rhs) return triple(k);
    }
    return std::nullopt;
  });
  fail_first("counit", [&]() -> Witness {
    for (std::size_t k = 0; k < d; ++k) {
      Vector left(d, f.zero()), right(d, f.zero());
      for (const auto& t : ss.comult[k]) {
        if (!h.counit()[t.i].is_zero()) left[t.j] += h.counit()[t.i] * t.c;
        if (!h.counit()[t.j].is_zero()) right[t.i] += h.counit()[t.j] * t.c;
      }
      if (left != e[k] || right != e[k]) return triple(k);
    }
    return std::nullopt;
  });
  fail_first("comult_multiplicative", [&]() -> Witness {
    std::vector<Matrix> deltas(d);
    for (std::size_t i = 0; i < d; ++i) deltas[i] = ss.delta(i, f);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Matrix lhs(f, d, d);
        for (const auto& t : ss.mult[i * d + j]) lhs += deltas[t.k] * t.c;
        if (lhs != ss.mul2(deltas[i], deltas[j])) return triple(i, j);
      }
    return std::nullopt;
  });
  fail_first("comult_unital", [&]() -> Witness {
    Matrix lhs = h.coproduct(h.unit());
    Matrix rhs(f, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) rhs(i, j) = h.unit()[i] * h.unit()[j];
    if (lhs != rhs) return triple(-1);
    return std::nullopt;
  });
  fail_first("counit_multiplicative", [&]() -> Witness {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Scalar lhs = f.zero();
        for (const auto& t : ss.mult[i * d + j]) lhs += t.c * h.counit()[t.k];
        if (lhs != h.counit()[i] * h.counit()[j]) return triple(i, j);
      }
    return std::nullopt;
  });
  fail_first("counit_unital", [&]() -> Witness {
    if (!h.counit_of(h.unit()).is_one()) return triple(-1);
    return std::nullopt;
  });
  auto antipode_axiom = [&](bool left) -> Witness {
    std::vector<Vector> s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = h.antipode().col(i);
    for (std::size_t k = 0; k < d; ++k) {
      Vector acc(d, f.zero());
      for (const auto& t : ss.comult[k]) {
        Vector prod = left ? ss.mul(s[t.i], e[t.j], f) : ss.mul(e[t.i], s[t.j], f);
        for (std::size_t a = 0; a < d; ++a)
          if (!prod[a].is_zero()) acc[a] += t.c * prod[a];
      }
      Vector expect = h.unit();
      for (auto& x : expect) x *= h.counit()[k];
      if (acc != expect) return triple(k);
    }
    return std::nullopt;
  };
  fail_first("antipode_left", [&] { return antipode_axiom(true); });
  fail_first("antipode_right", [&] { return antipode_axiom(false); });
  return report;
}

std::vector<std::vector<int>> cyclic_group_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

HopfData build_group_algebra(const std::vector<std::vector<int>>& table, const Field& field) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::not_a_group, "empty table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::not_a_group, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorCode::not_a_group, "table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorCode::not_a_group, "not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                                                  "," + std::to_string(c) + ")");
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (identity < 0) throw Error(ErrorCode::not_a_group, "no identity element");
  std::vector<int> inverse(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == identity && table[b][a] == identity) inverse[a] = b;
    if (inverse[a] < 0) throw Error(ErrorCode::not_a_group, "element " + std::to_string(a) + " has no inverse");
  }
  const std::size_t d = n;
  std::vector<Scalar> mult(d * d * d, field.zero()), comult(d * d * d, field.zero());
  Vector unit(d, field.zero()), counit(d, field.one());
  Matrix antipode(field, d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) mult[(a * d + b) * d + table[a][b]] = field.one();
    comult[(a * d + a) * d + a] = field.one();
    antipode(inverse[a], a) = field.one();
  }
  unit[identity] = field.one();
  HopfData h(field, d, std::move(mult), std::move(unit), std::move(comult), std::move(counit), std::move(antipode));
  h.set_name("group" + std::to_string(n));
  return h;
}

std::optional<Scalar> primitive_root_of_unity(int n, const Field& field) {
  if (n < 1) return std::nullopt;
  switch (field.kind()) {
    case FieldKind::rational:
      if (n == 1) return field.one();
      if (n == 2) return -field.one();
      return std::nullopt;
    case FieldKind::prime: {
      const std::uint64_t p = field.modulus();
      if ((p - 1) % n != 0) return std::nullopt;
      for (std::uint64_t g = 1; g < p; ++g) {
        Scalar q = field.from_int(static_cast<long long>(g));
        if (has_exact_order(q, n)) return q;
      }
      return std::nullopt;
    }
    case FieldKind::cyclotomic: {
      // roots of unity in Q(zeta_m) are exactly +-zeta^k
      const int m = field.root_order();
      Scalar z = field.zeta();
      Scalar zk = field.one();
      for (int k = 0; k < m; ++k) {
        if (has_exact_order(zk, n)) return zk;
        if (has_exact_order(-zk, n)) return -zk;
        zk *= z;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

HopfData build_sweedler(const Field& field) {
  HopfData h = taft_structure(2, field, -field.one());
  h.set_name("sweedler");
  return h;
}

HopfData build_taft(int n, const Field& field, std::optional<Scalar> q) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "Taft algebras need n >= 2");
  if (field.characteristic() != 0 && static_cast<std::uint64_t>(n) % field.characteristic() == 0)
    throw Error(ErrorCode::bad_root, "characteristic divides n");
  if (!q) {
    q = primitive_root_of_unity(n, field);
    if (!q) throw Error(ErrorCode::bad_root, "no primitive " + std::to_string(n) + "-th root of unity in " + field.name());
  } else if (!(q->field() == field) || !has_exact_order(*q, n)) {
    throw Error(ErrorCode::bad_root, q->to_string() + " is not a primitive " + std::to_string(n) + "-th root of unity");
  }
  HopfData h = taft_structure(n, field, *q);
  h.set_name("taft" + std::to_string(n));
  return h;
}

bool antipode_bijective(const HopfData& h) { return is_invertible(h.antipode()); }

Matrix antipode_power(const HopfData& h, long long n) {
  if (n < 0 && !antipode_bijective(h))
    throw Error(ErrorCode::non_invertible_antipode, "negative antipode power of a singular antipode");
  return mat_power(h.antipode(), n);
}

std::vector<Vector> integral_space(const HopfData& h, Side side) {
  const std::size_t d = h.dim();
  const auto gens = h.generators();
  Matrix conditions(h.field(), gens.size() * d, d);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    // a Lambda - eps(a) Lambda  (left)   or   Lambda a - eps(a) Lambda  (right)
    Matrix op(h.field(), d, d);
    for (std::size_t i = 0; i < d; ++i)
      if (!gens[g][i].is_zero()) op += (side == Side::left ? h.left_mult(i) : h.right_mult(i)) * gens[g][i];
    op -= Matrix::identity(h.field(), d) * h.counit_of(gens[g]);
    conditions.set_block(g * d, 0, op);
  }
  return nullspace(conditions);
}

bool is_semisimple(const HopfData& h) {
  auto ints = integral_space(h, Side::left);
  if (ints.size() != 1)
    throw Error(ErrorCode::invalid_argument,
                "integral space has dimension " + std::to_string(ints.size()) + ", expected 1");
  return !h.counit_of(ints[0]).is_zero();
}

HopfData dualize(const HopfData& h) {
  const std::size_t d = h.dim();
  std::vector<Scalar> mult(d * d * d), comult(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        mult[(i * d + j) * d + k] = h.comult(k, i, j);
        comult[(k * d + i) * d + j] = h.mult(i, j, k);
      }
  HopfData out(h.field(), d, std::move(mult), h.counit(), std::move(comult), h.unit(), h.antipode().transpose());
  out.set_name(h.name().empty() ? "dual" : "dual(" + h.name() + ")");
  return out;
}

HopfData change_basis(const HopfData& h, const Matrix& basis) {
  const std::size_t d = h.dim();
  if (basis.rows() != d || basis.cols() != d) throw Error(ErrorCode::shape_mismatch, "basis change must be d x d");
  const Matrix inv = mat_inverse(basis);
  const Field& f = h.field();
  std::vector<Vector> b(d);
  for (std::size_t a = 0; a < d; ++a) b[a] = basis.col(a);

  std::vector<Scalar> mult(d * d * d, f.zero()), comult(d * d * d, f.zero());
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t c = 0; c < d; ++c) {
      Vector prod = inv * h.multiply(b[a], b[c]);
      for (std::size_t k = 0; k < d; ++k) mult[(a * d + c) * d + k] = prod[k];
    }
  for (std::size_t a = 0; a < d; ++a) {
    // Delta(b_a) in old coordinates, then inv (x) inv on both legs
    Matrix t = inv * h.coproduct(b[a]) * inv.transpose();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) comult[(a * d + i) * d + j] = t(i, j);
  }
  Vector unit = inv * h.unit();
  Vector counit(d);
  for (std::size_t a = 0; a < d; ++a) counit[a] = h.counit_of(b[a]);
  Matrix antipode = inv * h.antipode() * basis;
  HopfData out(f, d, std::move(mult), std::move(unit), std::move(comult), std::move(counit), std::move(antipode));
  out.set_name(h.name());
  return out;
}

}  // namespace nonflat

#include "nonflat/rep.hpp"

#include "nonflat/sampler.hpp"

namespace nonflat {

namespace {

void require_same_algebra(const Rep& a, const Rep& b) {
  if (a.side != b.side) throw Error(ErrorCode::mixed_sides, "modules live on different sides");
  if (!(a.hopf == b.hopf || *a.hopf == *b.hopf))
    throw Error(ErrorCode::shape_mismatch, "modules over different Hopf algebras");
}

std::vector<Matrix> generator_actions(const Rep& m) {
  std::vector<Matrix> out;
  for (const auto& g : m.hopf->generators()) out.push_back(m.act(g));
  return out;
}

Side flip(Side s) { return s == Side::left ? Side::right : Side::left; }

// Rows of the linear system rho2(a) X - X rho1(a) = 0, X flattened row-major.
Matrix intertwiner_equations(const Rep& m1, const Rep& m2) {
  const std::size_t d1 = m1.dim, d2 = m2.dim;
  const auto g1 = generator_actions(m1), g2 = generator_actions(m2);
  Matrix eq(m1.field(), g1.size() * d2 * d1, d2 * d1);
  for (std::size_t g = 0; g < g1.size(); ++g)
    for (std::size_t r = 0; r < d2; ++r)
      for (std::size_t c = 0; c < d1; ++c) {
        const std::size_t row = (g * d2 + r) * d1 + c;
        for (std::size_t k = 0; k < d2; ++k)
          if (!g2[g](r, k).is_zero()) eq(row, k * d1 + c) += g2[g](r, k);
        for (std::size_t k = 0; k < d1; ++k)
          if (!g1[g](k, c).is_zero()) eq(row, r * d1 + k) -= g1[g](k, c);
      }
  return eq;
}

Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols, const Field& f) {
  return Matrix(f, rows, cols, std::vector<Scalar>(v.begin(), v.end()));
}

// Basis indices of m whose A-orbits span m.
std::vector<std::size_t> module_generators(const Rep& m) {
  SpanBasis span(m.field(), m.dim);
  std::vector<std::size_t> gens;
  for (std::size_t j = 0; j < m.dim && span.size() < m.dim; ++j) {
    Vector e(m.dim, m.field().zero());
    e[j] = m.field().one();
    if (span.contains(e)) continue;
    gens.push_back(j);
    for (const auto& a : m.action) span.insert(a.col(j));
  }
  return gens;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Matrix Rep::act(const Vector& a) const {
  Matrix out(field(), dim, dim);
  for (std::size_t i = 0; i < action.size(); ++i)
    if (!a[i].is_zero()) out += action[i] * a[i];
  return out;
}

void Rep::validate() const {
  const HopfData& h = *hopf;
  const std::size_t d = h.dim();
  if (action.size() != d) throw Error(ErrorCode::shape_mismatch, "need one action matrix per basis vector");
  for (const auto& a : action)
    if (a.rows() != dim || a.cols() != dim) throw Error(ErrorCode::shape_mismatch, "action matrix has wrong size");
  if (!act(h.unit()).is_identity()) throw Error(ErrorCode::shape_mismatch, "unit does not act as identity");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix lhs(field(), dim, dim);
      for (std::size_t k = 0; k < d; ++k)
        if (!h.mult(i, j, k).is_zero()) lhs += action[k] * h.mult(i, j, k);
      Matrix rhs = side == Side::left ? action[i] * action[j] : action[j] * action[i];
      if (lhs != rhs)
        throw Error(ErrorCode::shape_mismatch,
                    "action violates e" + std::to_string(i) + "*e" + std::to_string(j));
    }
}

Rep regular_module(HopfPtr h, Side side) {
  Rep r{h, side, h->dim(), {}};
  for (std::size_t i = 0; i < h->dim(); ++i) r.action.push_back(side == Side::left ? h->left_mult(i) : h->right_mult(i));
  return r;
}

Rep trivial_module(HopfPtr h, std::size_t n, Side side) {
  Rep r{h, side, n, {}};
  for (std::size_t i = 0; i < h->dim(); ++i) r.action.push_back(Matrix::identity(h->field(), n) * h->counit()[i]);
  return r;
}

Rep direct_sum_modules(const Rep& a, const Rep& b) {
  require_same_algebra(a, b);
  Rep r{a.hopf, a.side, a.dim + b.dim, {}};
  for (std::size_t i = 0; i < a.action.size(); ++i) r.action.push_back(direct_sum(a.action[i], b.action[i]));
  return r;
}

Rep free_module(HopfPtr h, std::size_t copies, Side side) {
  Rep reg = regular_module(h, side);
  Rep r{h, side, 0, std::vector<Matrix>(h->dim(), Matrix(h->field(), 0, 0))};
  for (std::size_t c = 0; c < copies; ++c) r = r.dim == 0 ? reg : direct_sum_modules(r, reg);
  return r;
}

Rep tensor_modules(const Rep& m1, const Rep& m2) {
  require_same_algebra(m1, m2);
  const HopfData& h = *m1.hopf;
  const std::size_t d = h.dim();
  Rep r{m1.hopf, m1.side, m1.dim * m2.dim, {}};
  for (std::size_t k = 0; k < d; ++k) {
    Matrix a(m1.field(), r.dim, r.dim);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!h.comult(k, i, j).is_zero()) a += kronecker(m1.action[i], m2.action[j]) * h.comult(k, i, j);
    r.action.push_back(std::move(a));
  }
  return r;
}

Rep dual_module(const Rep& m) {
  Rep r{m.hopf, flip(m.side), m.dim, {}};
  for (const auto& a : m.action) r.action.push_back(a.transpose());
  return r;
}

Rep dual_pullback(const Rep& m) {
  const HopfData& h = *m.hopf;
  Rep r{m.hopf, m.side, m.dim, {}};
  for (std::size_t i = 0; i < h.dim(); ++i) r.action.push_back(m.act(h.antipode().col(i)).transpose());
  return r;
}

Rep twist_module(const Rep& m, long long n) {
  const Matrix sn = antipode_power(*m.hopf, n);
  Rep r{m.hopf, (n % 2 == 0) ? m.side : flip(m.side), m.dim, {}};
  for (std::size_t i = 0; i < m.hopf->dim(); ++i) r.action.push_back(m.act(sn.col(i)));
  return r;
}

std::vector<Matrix> hom_space(const Rep& m1, const Rep& m2) {
  require_same_algebra(m1, m2);
  std::vector<Matrix> basis;
  if (m1.dim == 0 || m2.dim == 0) return basis;
  for (const auto& v : nullspace(intertwiner_equations(m1, m2)))
    basis.push_back(unflatten(v, m2.dim, m1.dim, m1.field()));
  return basis;
}

bool is_intertwiner(const Rep& m1, const Rep& m2, const Matrix& f) {
  require_same_algebra(m1, m2);
  if (f.rows() != m2.dim || f.cols() != m1.dim) return false;
  for (const auto& g : m1.hopf->generators())
    if (m2.act(g) * f != f * m1.act(g)) return false;
  return true;
}

Matrix random_combination(const std::vector<Matrix>& basis, std::size_t rows, std::size_t cols, const Field& field,
                          std::uint64_t seed, long long bound) {
  Sampler sampler(seed);
  Matrix out(field, rows, cols);
  for (const auto& b : basis) {
    long long c = sampler.coefficient(bound);
    if (c != 0) out += b * field.from_int(c);
  }
  return out;
}

Matrix random_hom(const Rep& m1, const Rep& m2, std::uint64_t seed, long long bound) {
  return random_combination(hom_space(m1, m2), m2.dim, m1.dim, m1.field(), seed, bound);
}

IsoResult is_isomorphic(const Rep& m1, const Rep& m2, std::uint64_t seed, int retries, long long bound) {
  require_same_algebra(m1, m2);
  IsoResult res;
  if (m1.dim != m2.dim) {
    res.verdict = Verdict::no;
    res.reason = "dimension";
    return res;
  }
  Rep triv = trivial_module(m1.hopf, 1, m1.side);
  if (hom_space(triv, m1).size() != hom_space(triv, m2).size() ||
      hom_space(m1, triv).size() != hom_space(m2, triv).size()) {
    res.verdict = Verdict::no;
    res.reason = "invariant";
    return res;
  }
  auto basis = hom_space(m1, m2);
  if (basis.empty()) {
    res.verdict = Verdict::no;
    res.reason = "no nonzero homomorphism";
    return res;
  }
  Sampler seeds(seed);
  for (int attempt = 0; attempt < retries; ++attempt) {
    Matrix f = random_combination(basis, m2.dim, m1.dim, m1.field(), seeds.raw(), bound);
    if (is_invertible(f)) {
      res.verdict = Verdict::yes;
      res.iso = f;
      res.reason = "invertible intertwiner";
      return res;
    }
  }
  res.reason = "random search found no invertible intertwiner";
  return res;
}

ProjectivityCertificate is_projective(const Rep& m) {
  const HopfData& h = *m.hopf;
  const Field& f = m.field();
  const std::size_t dm = m.dim, da = h.dim();
  ProjectivityCertificate cert;
  cert.cover_rank = dm;
  if (dm == 0) {
    cert.projective = true;
    cert.splitting = Matrix(f, 0, 0);
    return cert;
  }
  const Rep reg = regular_module(m.hopf, m.side);
  // cover summand r sends the basis vector e_i of A to e_i . m_r
  std::vector<Matrix> cover(dm, Matrix(f, dm, da));
  for (std::size_t r = 0; r < dm; ++r)
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t k = 0; k < dm; ++k) cover[r](k, i) = m.action[i](k, r);
  const auto homs = hom_space(m, reg);

  // A-linear maps m -> m are determined by their values on module generators,
  // so the split-epi equation only needs those columns.
  const auto gens = module_generators(m);
  const std::size_t unknowns = dm * homs.size();
  Matrix system(f, gens.size() * dm, unknowns);
  Vector rhs(gens.size() * dm, f.zero());
  for (std::size_t t = 0; t < gens.size(); ++t) rhs[t * dm + gens[t]] = f.one();
  for (std::size_t r = 0; r < dm; ++r)
    for (std::size_t s = 0; s < homs.size(); ++s) {
      const std::size_t col = r * homs.size() + s;
      for (std::size_t t = 0; t < gens.size(); ++t) {
        Vector image = cover[r] * homs[s].col(gens[t]);
        for (std::size_t k = 0; k < dm; ++k)
          if (!image[k].is_zero()) system(t * dm + k, col) = image[k];
      }
    }
  cert.system_rank = rank(system);
  Matrix aug(f, system.rows(), unknowns + 1);
  aug.set_block(0, 0, system);
  aug.set_block(0, unknowns, Matrix::column(f, rhs));
  cert.augmented_rank = rank(aug);
  cert.projective = cert.system_rank == cert.augmented_rank;
  if (cert.projective) {
    Vector c = solve_affine(system, rhs).particular;
    Matrix split(f, dm * da, dm);
    for (std::size_t r = 0; r < dm; ++r) {
      Matrix hr(f, da, dm);
      for (std::size_t s = 0; s < homs.size(); ++s)
        if (!c[r * homs.size() + s].is_zero()) hr += homs[s] * c[r * homs.size() + s];
      split.set_block(r * da, 0, hr);
    }
    // sanity: the cover composed with the splitting is the identity
    Matrix composite(f, dm, dm);
    for (std::size_t r = 0; r < dm; ++r) composite += cover[r] * split.block(r * da, 0, da, dm);
    if (!composite.is_identity()) throw Error(ErrorCode::infeasible, "splitting failed exact re-verification");
    cert.splitting = std::move(split);
  }
  return cert;
}

FreenessResult is_free(const Rep& m, std::uint64_t seed, int retries) {
  FreenessResult res;
  const std::size_t da = m.hopf->dim();
  Rep triv = trivial_module(m.hopf, 1, m.side);
  const std::size_t invariants = hom_space(triv, m).size();
  const std::size_t coinvariants = hom_space(m, triv).size();
  // For A^r both counts equal r, since the integral space is one-dimensional.
  const bool divisible = m.dim % da == 0;
  if (!divisible) res.evidence.push_back("divisibility");
  if (invariants * da != m.dim || coinvariants * da != m.dim) res.evidence.push_back("invariant");
  if (!res.evidence.empty()) {
    res.verdict = Verdict::no;
    return res;
  }
  res.rank = m.dim / da;
  IsoResult iso = is_isomorphic(m, free_module(m.hopf, res.rank, m.side), seed, retries);
  res.verdict = iso.verdict;
  if (iso.verdict == Verdict::no) res.evidence.push_back(iso.reason);
  res.iso = iso.iso;
  return res;
}

bool coev_ev_identity(const Rep& v, const std::optional<Matrix>& ev) {
  const Field& f = v.field();
  const std::size_t n = v.dim;
  Matrix pairing(f, 1, n * n);
  if (ev) {
    if (ev->rows() != 1 || ev->cols() != n * n) throw Error(ErrorCode::shape_mismatch, "pairing must be 1 x n^2");
    pairing = *ev;
  } else {
    for (std::size_t i = 0; i < n; ++i) pairing(0, i * n + i) = f.one();
  }
  Matrix coev(f, n * n, 1);
  for (std::size_t i = 0; i < n; ++i) coev(i * n + i, 0) = f.one();
  const Matrix id = Matrix::identity(f, n);
  Matrix composite = kronecker(id, pairing) * kronecker(coev, id);
  return composite == id;
}

}  // namespace nonflat

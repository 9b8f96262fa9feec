#include <deque>
#include <set>

#include "nonflat/witness.hpp"

namespace nonflat {

namespace {

Vector flatten(const Matrix& m) { return m.entries(); }

}  // namespace

EndoOnTensor lemma312_operator(const HopfData& h) {
  const std::size_t d = h.dim();
  const Field& f = h.field();
  Matrix m(f, d * d, d * d);
  for (std::size_t p = 0; p < d; ++p) {
    const Matrix delta = h.coproduct(h.basis_vector(p));
    for (std::size_t q = 0; q < d; ++q) {
      const Vector y = h.basis_vector(q);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) {
          if (delta(r, s).is_zero()) continue;
          // S(x_2) y lands in the first leg, x_1 in the second
          const Vector sy = h.multiply(h.antipode().col(s), y);
          for (std::size_t u = 0; u < d; ++u)
            if (!sy[u].is_zero()) m(u * d + r, p * d + q) += delta(r, s) * sy[u];
        }
    }
  }
  return {d, d, std::move(m)};
}

std::vector<Matrix> operator_slices(const EndoOnTensor& f) {
  std::vector<Matrix> out;
  const std::size_t u = f.u_dim, v = f.v_dim;
  for (std::size_t a = 0; a < u; ++a)
    for (std::size_t b = 0; b < u; ++b) {
      Matrix t(f.matrix.field(), v, v);
      for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) t(i, j) = f.matrix(a * v + i, b * v + j);
      out.push_back(std::move(t));
    }
  return out;
}

SliceAlgebra slice_algebra(const std::vector<Matrix>& slices, std::size_t v_dim, std::size_t budget) {
  SliceAlgebra res;
  if (v_dim == 0) return res;
  const Field f = slices.empty() ? Field::rationals() : slices.front().field();
  const std::size_t target = v_dim * v_dim;

  SpanBasis gen_span(f, target);
  std::vector<Matrix> gens;
  for (const auto& s : slices)
    if (gen_span.insert(flatten(s))) gens.push_back(s);

  SpanBasis algebra(f, target);
  std::deque<Matrix> queue;
  auto add = [&](const Matrix& m) {
    if (algebra.insert(flatten(m))) queue.push_back(m);
  };
  add(Matrix::identity(f, v_dim));
  for (const auto& g : gens) add(g);
  while (!queue.empty() && algebra.size() < target) {
    Matrix x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      if (algebra.size() == target) break;
      if (res.multiplications == budget)
        throw Error(ErrorCode::budget_exhausted, "slice algebra did not stabilize within " +
                                                     std::to_string(budget) + " multiplications");
      ++res.multiplications;
      add(g * x);
    }
  }
  res.dim = algebra.size();
  res.saturated = res.dim == target;
  return res;
}

SliceAlgebra slice_algebra(const EndoOnTensor& f, std::size_t budget) {
  return slice_algebra(operator_slices(f), f.v_dim, budget);
}

std::vector<Matrix> full_slices(const ShapedOperator& f0) {
  const BlockLayout& l = f0.layout;
  const Field& field = l.hopf->field();
  const BlockOperator blocks = to_blocks(f0);
  std::set<Piece> sources;
  std::set<UBlock> blocks_seen;
  for (const auto& [key, m] : blocks) {
    sources.insert(key.first);
    blocks_seen.insert(key.first.block());
    blocks_seen.insert(key.second.block());
  }
  const std::size_t v = l.v_dim();
  auto v_offset = [&](int t) { return t == 0 ? std::size_t{0} : l.a_dim; };
  std::vector<Matrix> out;
  for (const UBlock& by : blocks_seen) {
    // a slice column block is exact only if every V piece over it is a materialized source
    if (!sources.count({by.s, by.i, 0}) || !sources.count({by.s, by.i, 1})) continue;
    for (const UBlock& bx : blocks_seen) {
      const std::size_t ux = l.u_block_dim(bx.s), uy = l.u_block_dim(by.s);
      std::vector<Matrix> slices(ux * uy, Matrix(field, v, v));
      bool any = false;
      for (int tj = 0; tj < 2; ++tj)
        for (int ti = 0; ti < 2; ++ti) {
          auto it = blocks.find({Piece{by.s, by.i, tj}, Piece{bx.s, bx.i, ti}});
          if (it == blocks.end()) continue;
          any = true;
          const std::size_t vi = l.v_piece_dim(ti), vj = l.v_piece_dim(tj);
          for (std::size_t x = 0; x < ux; ++x)
            for (std::size_t y = 0; y < uy; ++y)
              for (std::size_t i = 0; i < vi; ++i)
                for (std::size_t j = 0; j < vj; ++j)
                  slices[x * uy + y](v_offset(ti) + i, v_offset(tj) + j) = it->second(x * vi + i, y * vj + j);
        }
      if (any)
        for (auto& s : slices) out.push_back(std::move(s));
    }
  }
  return out;
}

std::optional<std::vector<Vector>> invariant_subspace_bruteforce(const EndoOnTensor& f) {
  const Field& field = f.matrix.field();
  if (field.kind() != FieldKind::prime)
    throw Error(ErrorCode::invalid_argument, "subspace enumeration needs a prime field");
  const std::size_t v = f.v_dim, u = f.u_dim;
  const std::uint64_t p = field.modulus();
  if (v > 3) throw Error(ErrorCode::too_large, "subspace enumeration is limited to dim V <= 3");
  double count = 1;
  for (std::size_t k = 0; k < v * v; ++k) count *= static_cast<double>(p);
  if (count > 1e7) throw Error(ErrorCode::too_large, "too many subspaces to enumerate");

  auto in_span = [&](Vector y, const std::vector<Vector>& rows, const std::vector<std::size_t>& pivots) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Scalar c = y[pivots[r]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < v; ++j) y[j].sub_mul(c, rows[r][j]);
    }
    for (const auto& s : y)
      if (!s.is_zero()) return false;
    return true;
  };
  auto invariant = [&](const std::vector<Vector>& rows, const std::vector<std::size_t>& pivots) {
    for (const auto& w : rows)
      for (std::size_t b = 0; b < u; ++b) {
        Vector x(u * v, field.zero());
        for (std::size_t j = 0; j < v; ++j) x[b * v + j] = w[j];
        Vector y = f.matrix * x;
        for (std::size_t a = 0; a < u; ++a)
          if (!in_span(Vector(y.begin() + a * v, y.begin() + (a + 1) * v), rows, pivots)) return false;
      }
    return true;
  };

  // reduced echelon forms, by dimension, pivot set, then free entries
  for (std::size_t k = 1; k < v; ++k) {
    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> free_slots;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = pivots[r] + 1; j < v; ++j)
          if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free_slots.push_back({r, j});
      std::vector<std::uint64_t> digits(free_slots.size(), 0);
      while (true) {
        std::vector<Vector> rows(k, Vector(v, field.zero()));
        for (std::size_t r = 0; r < k; ++r) rows[r][pivots[r]] = field.one();
        for (std::size_t s = 0; s < free_slots.size(); ++s)
          rows[free_slots[s].first][free_slots[s].second] = field.from_int(static_cast<long long>(digits[s]));
        if (invariant(rows, pivots)) return rows;
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
      // next pivot combination
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && pivots[i] == v - k + i) --i;
      if (i < 0) break;
      ++pivots[i];
      for (std::size_t j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace nonflat

#include "nonflat/witness.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "nonflat/sampler.hpp"

namespace nonflat {

namespace {

std::size_t piece_dim(const BlockLayout& l, const Piece& p) { return l.u_block_dim(p.s) * l.v_piece_dim(p.t); }

std::size_t pieces_dim(const BlockLayout& l, const std::vector<Piece>& ps) {
  std::size_t n = 0;
  for (const auto& p : ps) n += piece_dim(l, p);
  return n;
}

std::vector<std::size_t> offsets(const BlockLayout& l, const std::vector<Piece>& ps) {
  std::vector<std::size_t> off;
  std::size_t n = 0;
  for (const auto& p : ps) {
    off.push_back(n);
    n += piece_dim(l, p);
  }
  return off;
}

bool even(long long level) { return level % 2 == 0; }

// Cell of the level's pattern that a piece belongs to, on the source or target side.
CellId owning_cell(long long level, const Piece& p, bool source) {
  const bool forward = even(level) == source;  // even source and odd target share a rule
  if ((p.s == 0 && p.t == 0) || (p.s == 1 && p.t == 1)) return {CellKind::diagonal, p.i};
  if (forward) {
    if (p.s == 0) return p.i == 0 ? CellId{CellKind::head, 0} : CellId{CellKind::shift, p.i};
    return {CellKind::shift, p.i + 1};
  }
  if (p.s == 1) return p.i == 0 ? CellId{CellKind::head, 0} : CellId{CellKind::shift, p.i};
  return {CellKind::shift, p.i + 1};
}

std::vector<CellId> cell_ids(int diag_max, int shift_max) {
  std::vector<CellId> ids;
  for (int i = 0; i <= diag_max; ++i) ids.push_back({CellKind::diagonal, i});
  ids.push_back({CellKind::head, 0});
  for (int i = 1; i <= shift_max; ++i) ids.push_back({CellKind::shift, i});
  return ids;
}

Rep u_block_module(const BlockLayout& l, long long level, const UBlock& b, bool twisted) {
  if (b.s == 0 && b.i == 0 && twisted) return twist_module(regular_module(l.hopf, Side::left), level);
  const Side side = even(level) ? Side::left : Side::right;
  return trivial_module(l.hopf, l.u_block_dim(b.s), side);
}

Rep v_piece_module(const BlockLayout& l, int t) {
  return t == 0 ? regular_module(l.hopf, Side::left) : trivial_module(l.hopf, l.v1_dim, Side::left);
}

Matrix assemble(const BlockLayout& l, const std::vector<Piece>& src, const std::vector<Piece>& dst,
                const BlockOperator& blocks, bool& complete) {
  Matrix m(l.hopf->field(), pieces_dim(l, dst), pieces_dim(l, src));
  const auto so = offsets(l, src), dof = offsets(l, dst);
  complete = true;
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b < dst.size(); ++b) {
      auto it = blocks.find({src[a], dst[b]});
      if (it == blocks.end()) {
        complete = false;
        continue;
      }
      m.set_block(dof[b], so[a], it->second);
    }
  return m;
}

Error cell_error(ErrorCode code, const CellId& id, long long level, const std::string& what) {
  return Error(code, "cell " + to_string(id) + " at level " + std::to_string(level) + " " + what);
}

}  // namespace

Rep BlockLayout::v_module() const {
  return direct_sum_modules(regular_module(hopf, Side::left), trivial_module(hopf, v1_dim, Side::left));
}

BlockLayout make_layout(HopfPtr h, std::size_t v1_dim, int truncation) {
  if (truncation < 1) throw Error(ErrorCode::invalid_argument, "truncation must be at least 1");
  if (v1_dim < 1) throw Error(ErrorCode::invalid_argument, "V_1 must be nonzero");
  BlockLayout l;
  l.a_dim = h->dim();
  l.hopf = std::move(h);
  l.v1_dim = v1_dim;
  l.truncation = truncation;
  return l;
}

std::string to_string(const UBlock& b) { return "U" + std::to_string(b.s) + "_" + std::to_string(b.i); }

std::string to_string(const Piece& p) { return to_string(p.block()) + "xV" + std::to_string(p.t); }

std::string to_string(const CellId& c) {
  switch (c.kind) {
    case CellKind::diagonal: return "D" + std::to_string(c.index);
    case CellKind::head: return "H";
    case CellKind::shift: return "W" + std::to_string(c.index);
  }
  return "?";
}

std::pair<std::vector<Piece>, std::vector<Piece>> cell_pieces(long long level, CellId id) {
  const int i = id.index;
  switch (id.kind) {
    case CellKind::diagonal: {
      std::vector<Piece> p{{0, i, 0}, {1, i, 1}};
      return {p, p};
    }
    case CellKind::head:
      if (even(level)) return {{{0, 0, 1}}, {{1, 0, 0}}};
      return {{{1, 0, 0}}, {{0, 0, 1}}};
    case CellKind::shift:
      if (even(level)) return {{{1, i - 1, 0}, {0, i, 1}}, {{1, i, 0}, {0, i - 1, 1}}};
      return {{{1, i, 0}, {0, i - 1, 1}}, {{1, i - 1, 0}, {0, i, 1}}};
  }
  throw Error(ErrorCode::invalid_argument, "unknown cell kind");
}

const Cell& ShapedOperator::cell(CellId id) const {
  for (const auto& c : cells)
    if (c.id == id) return c;
  throw Error(ErrorCode::truncation_exceeded, "cell " + to_string(id) + " is not materialized");
}

Cell& ShapedOperator::cell(CellId id) {
  return const_cast<Cell&>(static_cast<const ShapedOperator&>(*this).cell(id));
}

BlockOperator to_blocks(const ShapedOperator& f) {
  BlockOperator out;
  for (const auto& c : f.cells) {
    const auto so = offsets(f.layout, c.src), dof = offsets(f.layout, c.dst);
    for (std::size_t a = 0; a < c.src.size(); ++a)
      for (std::size_t b = 0; b < c.dst.size(); ++b)
        out[{c.src[a], c.dst[b]}] =
            c.matrix.block(dof[b], so[a], piece_dim(f.layout, c.dst[b]), piece_dim(f.layout, c.src[a]));
  }
  return out;
}

BlockOperator halfdual_blocks(const BlockOperator& f, const BlockLayout& l) {
  BlockOperator out;
  for (const auto& [key, m] : f) {
    const auto& [src, dst] = key;
    // src U_y (x) V_t -> dst U_x (x) V_t'  becomes  U_y (x) V_t' -> U_x (x) V_t
    const Piece nsrc{src.s, src.i, dst.t}, ndst{dst.s, dst.i, src.t};
    const std::size_t ux = l.u_block_dim(dst.s), uy = l.u_block_dim(src.s);
    const std::size_t vt = l.v_piece_dim(src.t), vt2 = l.v_piece_dim(dst.t);
    Matrix h(m.field(), ux * vt, uy * vt2);
    for (std::size_t x = 0; x < ux; ++x)
      for (std::size_t j = 0; j < vt; ++j)
        for (std::size_t y = 0; y < uy; ++y)
          for (std::size_t i = 0; i < vt2; ++i) h(x * vt + j, y * vt2 + i) = m(x * vt2 + i, y * vt + j);
    out[{nsrc, ndst}] = std::move(h);
  }
  return out;
}

bool check_shape(const BlockOperator& f, long long level) {
  for (const auto& [key, m] : f) {
    if (m.is_zero()) continue;
    if (owning_cell(level, key.first, true) != owning_cell(level, key.second, false)) return false;
  }
  return true;
}

bool check_shape(const ShapedOperator& f) {
  const auto ids = cell_ids(f.diag_max, f.shift_max);
  if (ids.size() != f.cells.size()) return false;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const Cell& c = f.cells[k];
    const auto [src, dst] = cell_pieces(f.level, ids[k]);
    if (c.id != ids[k] || c.src != src || c.dst != dst) return false;
    if (c.matrix.rows() != pieces_dim(f.layout, dst) || c.matrix.cols() != pieces_dim(f.layout, src)) return false;
  }
  return check_shape(to_blocks(f), f.level);
}

Rep piece_module(const BlockLayout& l, long long level, const std::vector<Piece>& pieces, bool source) {
  // even: U_{S^n} (x) V -> U_triv (x) V;  odd: U_triv (x) V* -> U_{S^n} (x) V*
  const bool twisted = even(level) == source;
  std::optional<Rep> out;
  for (const auto& p : pieces) {
    Rep v = v_piece_module(l, p.t);
    if (!even(level)) v = dual_module(v);
    Rep piece = tensor_modules(u_block_module(l, level, p.block(), twisted), v);
    out = out ? direct_sum_modules(*out, piece) : piece;
  }
  return *out;
}

bool check_level_conditions(const ShapedOperator& f) {
  for (const auto& c : f.cells) {
    Rep src = piece_module(f.layout, f.level, c.src, true);
    Rep dst = piece_module(f.layout, f.level, c.dst, false);
    if (!is_intertwiner(src, dst, c.matrix)) return false;
  }
  return true;
}

bool cells_invertible(const ShapedOperator& f) {
  for (const auto& c : f.cells)
    if (!is_invertible(c.matrix)) return false;
  return true;
}

ShapedOperator sample_X0(const BlockLayout& l, std::uint64_t seed, const SampleOptions& options) {
  ShapedOperator f;
  f.layout = l;
  f.level = 0;
  f.diag_max = l.truncation;
  f.shift_max = l.truncation;
  Sampler sampler(seed);
  const Field& field = l.hopf->field();
  // cells touching U^0_0 differ from the all-trivial ones; everything else repeats
  std::map<std::pair<CellKind, bool>, std::vector<Matrix>> hom_cache;
  for (const CellId& id : cell_ids(f.diag_max, f.shift_max)) {
    auto [src, dst] = cell_pieces(0, id);
    bool touches_regular = false;
    for (const auto& p : src) touches_regular |= p.s == 0 && p.i == 0;
    for (const auto& p : dst) touches_regular |= p.s == 0 && p.i == 0;
    auto key = std::make_pair(id.kind, touches_regular);
    auto it = hom_cache.find(key);
    if (it == hom_cache.end())
      it = hom_cache.emplace(key, hom_space(piece_module(l, 0, src, true), piece_module(l, 0, dst, false))).first;
    const auto& basis = it->second;
    const std::size_t rows = pieces_dim(l, dst), cols = pieces_dim(l, src);
    std::optional<Matrix> chosen;
    for (int draw = 0; draw < options.draws_per_cell && !chosen; ++draw) {
      Matrix m(field, rows, cols);
      for (const auto& b : basis) {
        long long c = sampler.coefficient(options.bound);
        if (c != 0) m += b * field.from_int(c);
      }
      if (rows == cols && is_invertible(m)) chosen = std::move(m);
    }
    if (!chosen) throw cell_error(ErrorCode::sampling_exhausted, id, 0, "has no invertible draw");
    f.cells.push_back({id, std::move(src), std::move(dst), std::move(*chosen)});
  }
  return f;
}

ShapedOperator advance(const ShapedOperator& f) {
  const BlockLayout& l = f.layout;
  BlockOperator inverse;
  for (const auto& c : f.cells) {
    if (!is_invertible(c.matrix)) throw cell_error(ErrorCode::cell_singular, c.id, f.level, "is singular");
    Matrix inv = mat_inverse(c.matrix);
    const auto so = offsets(l, c.src), dof = offsets(l, c.dst);
    // the inverse maps target pieces back to source pieces
    for (std::size_t a = 0; a < c.dst.size(); ++a)
      for (std::size_t b = 0; b < c.src.size(); ++b)
        inverse[{c.dst[a], c.src[b]}] = inv.block(so[b], dof[a], piece_dim(l, c.src[b]), piece_dim(l, c.dst[a]));
  }
  const BlockOperator blocks = halfdual_blocks(inverse, l);
  ShapedOperator next;
  next.layout = l;
  next.level = f.level + 1;
  next.diag_max = std::min(f.diag_max, f.shift_max - 1);
  next.shift_max = std::min(f.shift_max, f.diag_max);
  if (next.diag_max < 0) throw Error(ErrorCode::truncation_exceeded, "no diagonal cells left to materialize");
  for (const CellId& id : cell_ids(next.diag_max, next.shift_max)) {
    auto [src, dst] = cell_pieces(next.level, id);
    bool complete = false;
    Matrix m = assemble(l, src, dst, blocks, complete);
    if (!complete) throw cell_error(ErrorCode::truncation_exceeded, id, next.level, "is missing components");
    next.cells.push_back({id, std::move(src), std::move(dst), std::move(m)});
  }
  return next;
}

RecursionCheck verify_recursion(const ShapedOperator& f, const ShapedOperator& next) {
  RecursionCheck res;
  const BlockLayout& l = f.layout;
  const BlockOperator g = halfdual_blocks(to_blocks(next), l);
  std::map<Piece, std::vector<std::pair<Piece, const Matrix*>>> by_source;
  for (const auto& [key, m] : g) by_source[key.first].push_back({key.second, &m});
  for (const auto& c : f.cells) {
    bool complete = false;
    Matrix gc = assemble(l, c.dst, c.src, g, complete);
    if (!complete) continue;
    ++res.cells_checked;
    bool ok = (gc * c.matrix).is_identity() && (c.matrix * gc).is_identity();
    // nothing may leak from the cell's target pieces outside its source pieces
    for (const auto& t : c.dst)
      for (const auto& [dst, m] : by_source[t])
        if (std::find(c.src.begin(), c.src.end(), dst) == c.src.end() && !m->is_zero()) ok = false;
    if (!ok && res.ok) {
      res.ok = false;
      res.first_failure = to_string(c.id);
    }
  }
  return res;
}

EndoOnTensor pi1(const ShapedOperator& f0) {
  const std::size_t a = f0.layout.a_dim;
  return {a, a, f0.cell({CellKind::diagonal, 0}).matrix.block(0, 0, a * a, a * a)};
}

OpenConditions check_O123(const ShapedOperator& f0) {
  const BlockLayout& l = f0.layout;
  const std::size_t a = l.a_dim, v1 = l.v1_dim;
  OpenConditions oc;
  oc.o1 = is_invertible(pi1(f0).matrix);
  oc.o2 = is_invertible(f0.cell({CellKind::head, 0}).matrix);
  if (f0.shift_max >= 1) {
    // W_1: U^1_0 (x) V_0 (first source piece) -> U^0_0 (x) V_1 (second target piece),
    // then the first dual-basis functional on U^0_0 keeps the rows with u = 0
    const Matrix& w1 = f0.cell({CellKind::shift, 1}).matrix;
    Matrix comp = w1.block(v1 * a, 0, a * v1, v1 * a);
    oc.o3 = rank(comp.block(0, 0, v1, v1 * a)) == v1;
  }
  return oc;
}

Verdict check_O4(const ShapedOperator& f0, std::size_t budget) {
  OpenConditions oc = check_O123(f0);
  if (!(oc.o1 && oc.o2 && oc.o3)) return Verdict::no;
  try {
    return slice_algebra(pi1(f0), budget).saturated ? Verdict::yes : Verdict::no;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::budget_exhausted) return Verdict::inconclusive;
    throw;
  }
}

std::vector<LevelRecord> audit_levels(const Witness& w) {
  std::vector<LevelRecord> out;
  for (std::size_t n = 0; n < w.levels.size(); ++n) {
    const ShapedOperator& f = w.levels[n];
    LevelRecord r;
    r.n = f.level;
    r.diag_max = f.diag_max;
    r.shift_max = f.shift_max;
    r.cells_invertible = cells_invertible(f);
    r.shape = check_shape(f);
    r.intertwiner = check_level_conditions(f);
    if (n > 0) {
      RecursionCheck rc = verify_recursion(w.levels[n - 1], f);
      r.inverse_law = rc.ok && rc.cells_checked > 0;
      r.inverse_cells_checked = rc.cells_checked;
    }
    out.push_back(r);
  }
  return out;
}

WitnessResult build_witness(HopfPtr h, const WitnessOptions& o) {
  if (o.depth < 0) throw Error(ErrorCode::invalid_argument, "depth must be nonnegative");
  if (o.truncation < o.depth + 2)
    throw Error(ErrorCode::invalid_argument, "truncation must be at least depth + 2");
  const BlockLayout layout = make_layout(std::move(h), o.v1_dim, o.truncation);
  WitnessResult res;
  Sampler attempt_seeds(o.seed);
  bool saw_inconclusive = false;
  for (int attempt = 1; attempt <= o.retries; ++attempt) {
    res.attempts = attempt;
    const std::uint64_t seed = attempt_seeds.raw();
    ShapedOperator f0;
    try {
      f0 = sample_X0(layout, seed, {o.bound, 64});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::sampling_exhausted) throw;
      ++res.failure_counts["sampling_exhausted"];
      continue;
    }
    OpenConditions oc = check_O123(f0);
    if (!(oc.o1 && oc.o2 && oc.o3)) {
      ++res.failure_counts["open_conditions"];
      continue;
    }
    Verdict o4 = check_O4(f0, o.slice_budget);
    if (o4 != Verdict::yes) {
      ++res.failure_counts[o4 == Verdict::no ? "slice_algebra" : "slice_budget"];
      saw_inconclusive |= o4 == Verdict::inconclusive;
      continue;
    }
    Witness w{layout, seed, {f0}};
    try {
      for (int n = 0; n < o.depth; ++n) w.levels.push_back(advance(w.levels.back()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::cell_singular) throw;
      ++res.failure_counts["cell_singular"];
      continue;
    }
    res.open = oc;
    res.o4 = o4;
    res.levels = audit_levels(w);
    bool all = true;
    for (const auto& r : res.levels)
      all = all && r.cells_invertible && r.shape && r.intertwiner && r.inverse_law.value_or(true);
    try {
      res.slices = slice_algebra(full_slices(f0), layout.v_dim(), o.slice_budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::budget_exhausted) throw;
    }
    if (!res.slices) res.verdict = Verdict::inconclusive;
    else res.verdict = all && res.slices->saturated ? Verdict::yes : Verdict::no;
    res.witness = std::move(w);
    return res;
  }
  res.verdict = saw_inconclusive ? Verdict::inconclusive : Verdict::no;
  return res;
}

}  // namespace nonflat

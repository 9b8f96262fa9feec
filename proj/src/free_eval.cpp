#include "nonflat/free_eval.hpp"

#include <cctype>
#include <sstream>

namespace nonflat {

namespace {

std::size_t block_dim(const BlockLayout& l, const UBlock& b) { return l.u_block_dim(b.s); }

std::set<UBlock> source_blocks_for_piece(const ShapedOperator& f, int t) {
  std::set<UBlock> out;
  for (const auto& c : f.cells)
    for (const auto& p : c.src)
      if (p.t == t) out.insert(p.block());
  return out;
}

const ShapedOperator& level_at(const Witness& w, long long n) {
  if (n < 0 || n >= static_cast<long long>(w.levels.size()))
    throw Error(ErrorCode::depth_exceeded, "generation " + std::to_string(n) + " exceeds witness depth " +
                                               std::to_string(static_cast<long long>(w.levels.size()) - 1));
  return w.levels[n];
}

Scalar parse_rational(const std::string& tok, const Field& f) {
  try {
    Rational q(tok);
    if (q.get_den() == 0) throw Error(ErrorCode::parse_error, "zero denominator in '" + tok + "'");
    q.canonicalize();
    return f.from_rational(q);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::parse_error, "not a rational number: '" + tok + "'");
  }
}

bool looks_rational(const std::string& tok) {
  if (tok.empty()) return false;
  std::size_t k = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (k == tok.size()) return false;
  bool slash = false;
  for (; k < tok.size(); ++k) {
    if (tok[k] == '/' && !slash) {
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(tok[k]))) return false;
  }
  return tok.back() != '/';
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

FreeWord FreeWord::operator*(const FreeWord& o) const {
  FreeWord out;
  for (const auto& a : terms)
    for (const auto& b : o.terms) {
      Term t{a.coefficient * b.coefficient, a.letters};
      t.letters.insert(t.letters.end(), b.letters.begin(), b.letters.end());
      out.terms.push_back(std::move(t));
    }
  return out;
}

FreeWord FreeWord::operator+(const FreeWord& o) const {
  FreeWord out = *this;
  out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
  return out;
}

FreeWord parse_word(const std::string& text, const Field& field, std::size_t algebra_dim) {
  FreeWord w;
  // '+' inside brackets never occurs in valid letters, but signs inside a[...] may
  std::vector<std::string> parts;
  {
    std::string cur;
    int depth = 0;
    for (char ch : text) {
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      if (ch == '+' && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
  }
  for (const auto& raw : parts) {
    const std::string part = trim(raw);
    if (part.empty() && parts.size() > 1) throw Error(ErrorCode::parse_error, "empty summand in word");
    FreeWord::Term term{field.one(), {}};
    std::istringstream in(part);
    std::string tok;
    bool first = true;
    while (in >> tok) {
      if (first && looks_rational(tok)) {
        term.coefficient = parse_rational(tok, field);
        first = false;
        continue;
      }
      first = false;
      if (tok.size() < 3 || tok[1] != '[' || tok.back() != ']')
        throw Error(ErrorCode::parse_error, "unrecognized letter '" + tok + "'");
      const auto fields = split(tok.substr(2, tok.size() - 3), ',');
      if (tok[0] == 'c') {
        if (fields.size() != 3) throw Error(ErrorCode::parse_error, "c[...] needs three indices: '" + tok + "'");
        long long idx[3];
        for (int k = 0; k < 3; ++k) {
          const std::string f = trim(fields[k]);
          if (f.empty() || !std::all_of(f.begin(), f.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            throw Error(ErrorCode::parse_error, "bad index in '" + tok + "'");
          idx[k] = std::stoll(f);
        }
        term.letters.push_back(Letter::gen(idx[0], static_cast<std::size_t>(idx[1]), static_cast<std::size_t>(idx[2])));
      } else if (tok[0] == 'a') {
        if (fields.size() != algebra_dim)
          throw Error(ErrorCode::parse_error, "a[...] needs " + std::to_string(algebra_dim) + " coordinates");
        Vector a;
        for (const auto& f : fields) a.push_back(parse_rational(trim(f), field));
        term.letters.push_back(Letter::alg(std::move(a)));
      } else {
        throw Error(ErrorCode::parse_error, "unrecognized letter '" + tok + "'");
      }
    }
    w.terms.push_back(std::move(term));
  }
  return w;
}

BlockSet BlockSet::intersect(const BlockSet& o) const {
  BlockSet out;
  if (cofinite && o.cofinite) {
    out.cofinite = true;
    out.items = items;
    out.items.insert(o.items.begin(), o.items.end());
    return out;
  }
  const BlockSet& fin = cofinite ? o : *this;
  const BlockSet& other = cofinite ? *this : o;
  for (const auto& b : fin.items)
    if (other.contains(b)) out.items.insert(b);
  return out;
}

LazyUOperator LazyUOperator::identity(const BlockLayout& layout) {
  return LazyUOperator(layout, layout.hopf->field().one(), BlockSet::all());
}

void LazyUOperator::add_component(const UBlock& src, const UBlock& dst, const Matrix& m) {
  auto it = comps_.find({src, dst});
  if (it == comps_.end()) comps_.emplace(std::make_pair(src, dst), m);
  else it->second += m;
}

std::map<UBlock, Matrix> LazyUOperator::column(const UBlock& b) const {
  std::map<UBlock, Matrix> col;
  const Field& f = layout_.hopf->field();
  if (!scalar_.is_zero()) col[b] = Matrix::identity(f, block_dim(layout_, b)) * scalar_;
  for (auto it = comps_.lower_bound({b, UBlock{-1, -1}}); it != comps_.end() && it->first.first == b; ++it) {
    auto c = col.find(it->first.second);
    if (c == col.end()) col.emplace(it->first.second, it->second);
    else c->second += it->second;
  }
  return col;
}

LazyUOperator LazyUOperator::compose(const LazyUOperator& q) const {
  const LazyUOperator& p = *this;
  LazyUOperator out(layout_, p.scalar_ * q.scalar_, {});
  for (const auto& [key, m] : q.comps_)
    if (!p.scalar_.is_zero()) out.add_component(key.first, key.second, m * p.scalar_);
  for (const auto& [key, m] : p.comps_)
    if (!q.scalar_.is_zero()) out.add_component(key.first, key.second, m * q.scalar_);
  for (const auto& [qk, qm] : q.comps_)
    for (auto it = p.comps_.lower_bound({qk.second, UBlock{-1, -1}}); it != p.comps_.end() && it->first.first == qk.second;
         ++it)
      out.add_component(qk.first, it->first.second, it->second * qm);

  // a source block stays exact when its images all land where p is exact
  auto good = [&](const UBlock& b) {
    if (!q.scalar_.is_zero() && !p.domain_.contains(b)) return false;
    for (auto it = q.comps_.lower_bound({b, UBlock{-1, -1}}); it != q.comps_.end() && it->first.first == b; ++it)
      if (!p.domain_.contains(it->first.second)) return false;
    return true;
  };
  if (!q.domain_.cofinite) {
    for (const auto& b : q.domain_.items)
      if (good(b)) out.domain_.items.insert(b);
    return out;
  }
  if (!q.scalar_.is_zero() && !p.domain_.cofinite) {
    for (const auto& b : p.domain_.items)
      if (q.domain_.contains(b) && good(b)) out.domain_.items.insert(b);
    return out;
  }
  out.domain_.cofinite = true;
  out.domain_.items = q.domain_.items;
  if (!q.scalar_.is_zero()) out.domain_.items.insert(p.domain_.items.begin(), p.domain_.items.end());
  for (const auto& [key, m] : q.comps_)
    if (!good(key.first)) out.domain_.items.insert(key.first);
  return out;
}

LazyUOperator LazyUOperator::plus(const LazyUOperator& o) const {
  LazyUOperator out(layout_, scalar_ + o.scalar_, domain_.intersect(o.domain_));
  out.comps_ = comps_;
  for (const auto& [key, m] : o.comps_) out.add_component(key.first, key.second, m);
  return out;
}

LazyUOperator LazyUOperator::scaled(const Scalar& c) const {
  LazyUOperator out(layout_, scalar_ * c, domain_);
  for (const auto& [key, m] : comps_) out.comps_.emplace(key, m * c);
  return out;
}

std::map<UBlock, Vector> LazyUOperator::apply(const std::map<UBlock, Vector>& v) const {
  std::map<UBlock, Vector> out;
  const Field& f = layout_.hopf->field();
  for (const auto& [b, x] : v) {
    bool nonzero = false;
    for (const auto& s : x) nonzero |= !s.is_zero();
    if (!nonzero) continue;
    if (!domain_.contains(b))
      throw Error(ErrorCode::truncation_exceeded, "block " + to_string(b) + " is outside the materialized range");
    for (const auto& [dst, m] : column(b)) {
      Vector y = m * x;
      auto it = out.find(dst);
      if (it == out.end()) it = out.emplace(dst, Vector(block_dim(layout_, dst), f.zero())).first;
      for (std::size_t k = 0; k < y.size(); ++k) it->second[k] += y[k];
    }
  }
  return out;
}

std::optional<std::size_t> LazyUOperator::equal_on_domain(const LazyUOperator& o) const {
  const BlockSet common = domain_.intersect(o.domain_);
  std::set<UBlock> blocks;
  if (common.cofinite) {
    if (scalar_ != o.scalar_) return std::nullopt;
    for (const auto& [key, m] : comps_) blocks.insert(key.first);
    for (const auto& [key, m] : o.comps_) blocks.insert(key.first);
  } else {
    blocks = common.items;
  }
  std::size_t compared = 0;
  for (const auto& b : blocks) {
    if (!common.contains(b)) continue;
    auto c1 = column(b), c2 = o.column(b);
    for (const auto& [dst, m] : c1) {
      auto it = c2.find(dst);
      if (it == c2.end() ? !m.is_zero() : it->second != m) return std::nullopt;
    }
    for (const auto& [dst, m] : c2)
      if (!c1.count(dst) && !m.is_zero()) return std::nullopt;
    ++compared;
  }
  return compared;
}

LazyUOperator psi_generator(const Witness& w, long long n, std::size_t i, std::size_t j) {
  const ShapedOperator& f = level_at(w, n);
  const BlockLayout& l = w.layout;
  const std::size_t v = l.v_dim();
  if (i >= v || j >= v) throw Error(ErrorCode::invalid_argument, "matrix-unit index outside V");
  const int ti = i < l.a_dim ? 0 : 1, tj = j < l.a_dim ? 0 : 1;
  const std::size_t li = ti == 0 ? i : i - l.a_dim, lj = tj == 0 ? j : j - l.a_dim;
  const std::size_t vi = l.v_piece_dim(ti), vj = l.v_piece_dim(tj);
  BlockSet domain;
  domain.items = source_blocks_for_piece(f, tj);
  LazyUOperator out(l, l.hopf->field().zero(), domain);
  for (const auto& [key, m] : to_blocks(f)) {
    const auto& [src, dst] = key;
    if (src.t != tj || dst.t != ti) continue;
    const std::size_t ux = l.u_block_dim(dst.s), uy = l.u_block_dim(src.s);
    Matrix slice(l.hopf->field(), ux, uy);
    for (std::size_t x = 0; x < ux; ++x)
      for (std::size_t y = 0; y < uy; ++y) slice(x, y) = m(x * vi + li, y * vj + lj);
    if (!slice.is_zero()) out.add_component(src.block(), dst.block(), slice);
  }
  return out;
}

LazyUOperator psi_alg(const Witness& w, const Vector& a) {
  const HopfData& h = *w.layout.hopf;
  if (a.size() != h.dim()) throw Error(ErrorCode::shape_mismatch, "algebra element has wrong length");
  const Scalar eps = h.counit_of(a);
  LazyUOperator out(w.layout, eps, BlockSet::all());
  Matrix reg = h.left_mult(a) - Matrix::identity(h.field(), h.dim()) * eps;
  if (!reg.is_zero()) out.add_component({0, 0}, {0, 0}, reg);
  return out;
}

LazyUOperator eval_word(const Witness& w, const FreeWord& word) {
  const Field& f = w.layout.hopf->field();
  std::optional<LazyUOperator> total;
  for (const auto& term : word.terms) {
    LazyUOperator prod = LazyUOperator::identity(w.layout);
    for (const auto& letter : term.letters) {
      LazyUOperator x = letter.kind == Letter::Kind::generator ? psi_generator(w, letter.generation, letter.i, letter.j)
                                                               : psi_alg(w, letter.element);
      prod = prod.compose(x);
    }
    prod = prod.scaled(term.coefficient);
    total = total ? total->plus(prod) : prod;
  }
  return total ? *total : LazyUOperator(w.layout, f.zero(), BlockSet::all());
}

LazyUOperator level_map(const Witness& w, long long n, std::size_t i, std::size_t j) {
  // odd levels live on U (x) V*, where the (i, j) unit pairs with e_ji^*
  return n % 2 == 0 ? psi_generator(w, n, i, j) : psi_generator(w, n, j, i);
}

bool phi_faithful(const HopfData& h) {
  const std::size_t d = h.dim();
  Matrix stacked(h.field(), d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const Matrix l = h.left_mult(i);
    for (std::size_t k = 0; k < d * d; ++k) stacked(i, k) = l.entries()[k];
  }
  return rank(stacked) == d;
}

RelationReport verify_relations(const Witness& w, std::optional<std::size_t> samples) {
  RelationReport rep;
  const BlockLayout& l = w.layout;
  const HopfData& h = *l.hopf;
  const Field& f = h.field();
  const std::size_t v = l.v_dim();
  const std::size_t cap = samples.value_or(static_cast<std::size_t>(-1));
  auto record = [&](std::optional<std::size_t> cmp, std::size_t& checked, std::size_t& failed, const std::string& what) {
    ++checked;
    if (cmp) {
      rep.blocks_compared += *cmp;
    } else {
      ++failed;
      if (rep.first_failure.empty()) rep.first_failure = what;
    }
  };

  // f_0(c . a) = f_0(c) phi(a)
  const ModuleCoalgebra c = coend(l.v_module());
  const auto gens = h.generators();
  std::vector<LazyUOperator> f0;
  for (std::size_t k = 0; k < c.dim; ++k) f0.push_back(psi_generator(w, 0, k / v, k % v));
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Matrix act = c.as_right_module().act(gens[g]);
    const LazyUOperator phi = psi_alg(w, gens[g]);
    for (std::size_t k = 0; k < c.dim && rep.module_checked < cap; ++k) {
      LazyUOperator lhs(l, f.zero(), BlockSet::all());
      for (std::size_t k2 = 0; k2 < c.dim; ++k2)
        if (!act(k2, k).is_zero()) lhs = lhs.plus(f0[k2].scaled(act(k2, k)));
      const LazyUOperator rhs = f0[k].compose(phi);
      record(lhs.equal_on_domain(rhs), rep.module_checked, rep.module_failed,
             "module relation at c=" + std::to_string(k) + ", generator " + std::to_string(g));
    }
  }

  // consecutive levels are mutually inverse for * (odd n) or the twist product (even n)
  std::size_t conv_seen = 0;
  for (long long n = 1; n < static_cast<long long>(w.levels.size()); ++n) {
    std::vector<LazyUOperator> prev, cur;
    for (std::size_t k = 0; k < v * v; ++k) {
      prev.push_back(level_map(w, n - 1, k / v, k % v));
      cur.push_back(level_map(w, n, k / v, k % v));
    }
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t q = 0; q < v; ++q) {
        if (conv_seen++ >= cap) continue;
        LazyUOperator sum(l, f.zero(), BlockSet::all());
        for (std::size_t j = 0; j < v; ++j)
          sum = sum.plus(n % 2 == 1 ? prev[i * v + j].compose(cur[j * v + q]) : prev[j * v + q].compose(cur[i * v + j]));
        LazyUOperator expect(l, i == q ? f.one() : f.zero(), BlockSet::all());
        const auto cmp = sum.equal_on_domain(expect);
        const std::string what = "inverse law between levels " + std::to_string(n - 1) + " and " + std::to_string(n) +
                                 " at (" + std::to_string(i) + "," + std::to_string(q) + ")";
        record(cmp, rep.conv_checked, rep.conv_failed, what);
        if (n == 1) {
          ++rep.depth1_checked;
          if (!cmp) ++rep.depth1_failed;
        }
      }
  }
  return rep;
}

}  // namespace nonflat

#include "nonflat/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace nonflat {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t as_size(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

const Json& array_of(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n)
    fail(what + " must be an array of length " + std::to_string(n));
  return j;
}

Rational parse_rational(const std::string& s) {
  try {
    Rational q(s);
    if (q.get_den() == 0) fail("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail("not a rational number: '" + s + "'");
  }
}

Side side_from_string(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  fail("side must be 'left' or 'right'");
}

CellId cell_id_from_string(const std::string& s) {
  if (s == "H") return {CellKind::head, 0};
  if (s.size() >= 2 && (s[0] == 'D' || s[0] == 'W')) {
    try {
      std::size_t used = 0;
      const int idx = std::stoi(s.substr(1), &used);
      if (used + 1 == s.size() && idx >= 0) return {s[0] == 'D' ? CellKind::diagonal : CellKind::shift, idx};
    } catch (const std::logic_error&) {
    }
  }
  fail("bad cell id '" + s + "'");
}

}  // namespace

Json to_json(const Field& f) {
  Json j;
  j["name"] = f.name();
  switch (f.kind()) {
    case FieldKind::rational: j["kind"] = "rational"; break;
    case FieldKind::prime:
      j["kind"] = "prime";
      j["p"] = f.modulus();
      break;
    case FieldKind::cyclotomic:
      j["kind"] = "cyclotomic";
      j["root_order"] = f.root_order();
      break;
  }
  return j;
}

Field field_from_json(const Json& j) {
  if (j.is_string()) return Field::parse(j.get<std::string>());
  const Json& name = member(j, "name");
  if (!name.is_string()) fail("field name must be a string");
  return Field::parse(name.get<std::string>());
}

Json to_json(const Scalar& s) {
  if (s.kind() != FieldKind::cyclotomic) return s.to_string();
  Json j;
  j["root_order"] = s.cyclotomic().ctx->n;
  Json coeffs = Json::array();
  for (const auto& c : s.cyclotomic().coeffs) coeffs.push_back(Scalar(c).to_string());
  j["coeffs"] = coeffs;
  return j;
}

Scalar scalar_from_json(const Json& j, const Field& f) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto mod = s.find(" mod ");
    if (mod != std::string::npos) {
      if (f.kind() != FieldKind::prime) fail("prime-field value '" + s + "' in " + f.name());
      std::uint64_t p = 0;
      try {
        p = std::stoull(s.substr(mod + 5));
      } catch (const std::logic_error&) {
        fail("bad modulus in '" + s + "'");
      }
      if (p != f.modulus()) fail("value '" + s + "' is not in " + f.name());
      return f.from_rational(parse_rational(s.substr(0, mod)));
    }
    return f.from_rational(parse_rational(s));
  }
  if (j.is_object()) {
    if (f.kind() != FieldKind::cyclotomic) fail("cyclotomic value in " + f.name());
    if (as_size(member(j, "root_order"), "root_order") != static_cast<std::size_t>(f.root_order()))
      fail("cyclotomic value of the wrong root order");
    const Json& cs = array_of(member(j, "coeffs"), static_cast<std::size_t>(f.degree()), "coeffs");
    CyclotomicValue v{f.cyclotomic_context(), {}};
    for (const auto& c : cs) {
      if (!c.is_string() && !c.is_number_integer()) fail("cyclotomic coefficient must be a rational");
      v.coeffs.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
    }
    return Scalar(std::move(v));
  }
  fail("unreadable scalar " + j.dump());
}

Json to_json(const Vector& v) {
  Json j = Json::array();
  for (const auto& s : v) j.push_back(to_json(s));
  return j;
}

Vector vector_from_json(const Json& j, const Field& f, std::size_t n) {
  array_of(j, n, "vector");
  Vector v;
  v.reserve(n);
  for (const auto& x : j) v.push_back(scalar_from_json(x, f));
  return v;
}

Json to_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& s : m.row(r)) row.push_back(to_json(s));
    j.push_back(std::move(row));
  }
  return j;
}

Matrix matrix_from_json(const Json& j, const Field& f, std::size_t rows, std::size_t cols) {
  array_of(j, rows, "matrix");
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Vector row = vector_from_json(j[r], f, cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

Json to_json(const HopfData& h) {
  const std::size_t d = h.dim();
  Json j;
  j["field"] = to_json(h.field());
  j["dim"] = d;
  Json mult = Json::array(), comult = Json::array();
  for (std::size_t a = 0; a < d; ++a) {
    Json ma = Json::array(), ca = Json::array();
    for (std::size_t b = 0; b < d; ++b) {
      Json mb = Json::array(), cb = Json::array();
      for (std::size_t c = 0; c < d; ++c) {
        mb.push_back(to_json(h.mult(a, b, c)));
        cb.push_back(to_json(h.comult(a, b, c)));
      }
      ma.push_back(std::move(mb));
      ca.push_back(std::move(cb));
    }
    mult.push_back(std::move(ma));
    comult.push_back(std::move(ca));
  }
  j["mult"] = std::move(mult);
  j["unit"] = to_json(h.unit());
  j["comult"] = std::move(comult);
  j["counit"] = to_json(h.counit());
  j["antipode"] = to_json(h.antipode());
  j["name"] = h.name();
  Json gens = Json::array();
  if (h.has_declared_generators())
    for (const auto& g : h.generators()) gens.push_back(to_json(g));
  j["generators"] = std::move(gens);
  return j;
}

HopfData hopf_from_json(const Json& j) {
  const Field f = field_from_json(member(j, "field"));
  const std::size_t d = as_size(member(j, "dim"), "dim");
  if (d == 0) fail("dim must be positive");
  auto tensor = [&](const char* key) {
    const Json& t = array_of(member(j, key), d, key);
    std::vector<Scalar> out;
    out.reserve(d * d * d);
    for (const auto& a : t) {
      array_of(a, d, key);
      for (const auto& b : a)
        for (auto& s : vector_from_json(b, f, d)) out.push_back(std::move(s));
    }
    return out;
  };
  HopfData h(f, d, tensor("mult"), vector_from_json(member(j, "unit"), f, d), tensor("comult"),
             vector_from_json(member(j, "counit"), f, d), matrix_from_json(member(j, "antipode"), f, d, d));
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name must be a string");
    h.set_name(j["name"].get<std::string>());
  }
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) fail("generators must be an array");
    std::vector<Vector> gens;
    for (const auto& g : j["generators"]) gens.push_back(vector_from_json(g, f, d));
    if (!gens.empty()) h.set_generators(std::move(gens));
  }
  return h;
}

Json to_json(const Rep& r) {
  Json j;
  j["hopf"] = to_json(*r.hopf);
  j["side"] = to_string(r.side);
  j["dim"] = r.dim;
  Json action = Json::array();
  for (const auto& m : r.action) action.push_back(to_json(m));
  j["action"] = std::move(action);
  return j;
}

Rep rep_from_json(const Json& j, HopfPtr h) {
  if (!h) h = std::make_shared<HopfData>(hopf_from_json(member(j, "hopf")));
  else if (j.contains("hopf") && j["hopf"].is_object() && hopf_from_json(j["hopf"]) != *h)
    fail("module refers to a different Hopf algebra");
  const Json& side = member(j, "side");
  if (!side.is_string()) fail("side must be a string");
  Rep r{h, side_from_string(side.get<std::string>()), as_size(member(j, "dim"), "dim"), {}};
  const Json& action = array_of(member(j, "action"), h->dim(), "action");
  for (const auto& m : action) r.action.push_back(matrix_from_json(m, h->field(), r.dim, r.dim));
  try {
    r.validate();
  } catch (const Error& e) {
    fail(std::string("module axioms fail: ") + e.what());
  }
  return r;
}

Rep rep_from_spec(const std::string& spec, HopfPtr h, Side side) {
  std::optional<Rep> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, '+')) {
    Rep piece;
    if (part == "regular") {
      piece = regular_module(h, side);
    } else if (part.rfind("trivial:", 0) == 0) {
      std::size_t n = 0;
      try {
        n = std::stoul(part.substr(8));
      } catch (const std::logic_error&) {
        fail("bad module summand '" + part + "'");
      }
      if (n == 0) fail("trivial summand needs positive dimension");
      piece = trivial_module(h, n, side);
    } else if (part.rfind("free:", 0) == 0) {
      std::size_t n = 0;
      try {
        n = std::stoul(part.substr(5));
      } catch (const std::logic_error&) {
        fail("bad module summand '" + part + "'");
      }
      if (n == 0) fail("free summand needs positive rank");
      piece = free_module(h, n, side);
    } else {
      fail("unknown module summand '" + part + "'");
    }
    out = out ? direct_sum_modules(*out, piece) : piece;
  }
  if (!out) fail("empty module description");
  return *out;
}

Json to_json(const EndoOnTensor& e, std::optional<Parity> parity) {
  Json j;
  j["u_dim"] = e.u_dim;
  j["v_dim"] = e.v_dim;
  j["matrix"] = to_json(e.matrix);
  if (parity) j["parity"] = *parity == Parity::even ? "even" : "odd";
  return j;
}

EndoOnTensor endo_from_json(const Json& j, const Field& f) {
  const std::size_t u = as_size(member(j, "u_dim"), "u_dim"), v = as_size(member(j, "v_dim"), "v_dim");
  return {u, v, matrix_from_json(member(j, "matrix"), f, u * v, u * v)};
}

Json to_json(const ModuleCoalgebra& c) {
  Json j;
  j["v_dim"] = c.v_dim;
  j["dim"] = c.dim;
  Json comult = Json::array();
  for (std::size_t k = 0; k < c.dim; ++k) {
    // sparse: the coend comultiplication has v terms per basis element
    Json terms = Json::array();
    for (std::size_t a = 0; a < c.dim; ++a)
      for (std::size_t b = 0; b < c.dim; ++b)
        if (!c.comult_at(k, a, b).is_zero()) terms.push_back(Json::array({a, b, to_json(c.comult_at(k, a, b))}));
    comult.push_back(std::move(terms));
  }
  j["comult"] = std::move(comult);
  j["counit"] = to_json(c.counit);
  Json action = Json::array();
  for (const auto& m : c.right_action) action.push_back(to_json(m));
  j["right_action"] = std::move(action);
  return j;
}

Json cells_to_json(const ShapedOperator& f) {
  Json cells = Json::array();
  for (const auto& c : f.cells) {
    Json cj;
    cj["id"] = to_string(c.id);
    cj["matrix"] = to_json(c.matrix);
    cells.push_back(std::move(cj));
  }
  return cells;
}

ShapedOperator level0_from_json(const Json& cells, const BlockLayout& layout) {
  if (!cells.is_array()) fail("cells must be an array");
  ShapedOperator f;
  f.layout = layout;
  f.level = 0;
  auto dim = [&](const std::vector<Piece>& ps) {
    std::size_t d = 0;
    for (const auto& p : ps) d += layout.u_block_dim(p.s) * layout.v_piece_dim(p.t);
    return d;
  };
  bool head = false;
  for (const auto& cj : cells) {
    const Json& idj = member(cj, "id");
    if (!idj.is_string()) fail("cell id must be a string");
    const CellId id = cell_id_from_string(idj.get<std::string>());
    if (id.kind == CellKind::diagonal) f.diag_max = std::max(f.diag_max, id.index);
    if (id.kind == CellKind::shift) {
      if (id.index == 0) fail("shift cells start at W1");
      f.shift_max = std::max(f.shift_max, id.index);
    }
    head |= id.kind == CellKind::head;
    auto [src, dst] = cell_pieces(0, id);
    Matrix m = matrix_from_json(member(cj, "matrix"), layout.hopf->field(), dim(dst), dim(src));
    f.cells.push_back({id, std::move(src), std::move(dst), std::move(m)});
  }
  // the cell list must be exactly D0..Dd, H, W1..Ws with no repeats
  const std::size_t expected = static_cast<std::size_t>(f.diag_max + 1 + 1 + f.shift_max);
  if (!head || f.cells.size() != expected) fail("cell list is incomplete or repeats a cell");
  std::set<CellId> seen;
  for (const auto& c : f.cells)
    if (!seen.insert(c.id).second) fail("repeated cell " + to_string(c.id));
  return f;
}

std::string content_hash(const HopfData& h) {
  const std::string text = to_json(h).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::invalid_argument, "SHA-256 unavailable");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::invalid_argument, "cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::invalid_argument, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::invalid_argument, "cannot move output into '" + path + "': " + ec.message());
  }
}

}  // namespace nonflat

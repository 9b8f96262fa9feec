#include "nonflat/scalar.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace nonflat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::infeasible: return "Infeasible";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::field_mismatch: return "FieldMismatch";
    case ErrorCode::not_a_group: return "NotAGroup";
    case ErrorCode::bad_root: return "BadRoot";
    case ErrorCode::non_invertible_antipode: return "NonInvertibleAntipode";
    case ErrorCode::mixed_sides: return "MixedSides";
    case ErrorCode::not_conv_invertible: return "NotConvInvertible";
    case ErrorCode::sampling_exhausted: return "SamplingExhausted";
    case ErrorCode::cell_singular: return "CellSingular";
    case ErrorCode::depth_exceeded: return "DepthExceeded";
    case ErrorCode::truncation_exceeded: return "TruncationExceeded";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::budget_exhausted: return "BudgetExhausted";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials, divisor monic.
Poly divide_exact(Poly num, const Poly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {};
  Poly q(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    Rational c = num[k];
    if (c == 0) continue;
    q[k - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  return q;
}

Poly cyclotomic_polynomial(int n) {
  Poly poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) poly = divide_exact(poly, cyclotomic_polynomial(d));
  trim(poly);
  return poly;
}

std::shared_ptr<const CyclotomicContext> shared_context(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CyclotomicContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<CyclotomicContext>();
  ctx->n = n;
  ctx->phi = cyclotomic_polynomial(n);
  ctx->degree = static_cast<int>(ctx->phi.size()) - 1;
  cache[n] = ctx;
  return ctx;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 r = 1, x = b % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce_rational(const Rational& q, std::uint64_t p) {
  mpz_class num = q.get_num() % static_cast<unsigned long>(p);
  if (num < 0) num += static_cast<unsigned long>(p);
  mpz_class den = q.get_den() % static_cast<unsigned long>(p);
  if (den == 0) throw Error(ErrorCode::invalid_argument, "denominator divisible by the characteristic");
  std::uint64_t n = num.get_ui(), d = den.get_ui();
  return static_cast<std::uint64_t>((unsigned __int128)n * mod_pow(d, p - 2, p) % p);
}

// Reduce a polynomial of degree < 2*deg modulo the monic phi.
void reduce_mod_phi(Poly& c, const CyclotomicContext& ctx) {
  const int d = ctx.degree;
  for (int k = static_cast<int>(c.size()) - 1; k >= d; --k) {
    if (c[k] == 0) continue;
    Rational lead = c[k];
    for (int j = 0; j <= d; ++j) c[k - d + j] -= lead * ctx.phi[j];
  }
  c.resize(d);
}

void require_same(const Scalar& a, const Scalar& b) {
  if (a.kind() != b.kind()) throw Error(ErrorCode::field_mismatch, "scalars from different fields");
  if (a.kind() == FieldKind::prime && a.prime().p != b.prime().p)
    throw Error(ErrorCode::field_mismatch, "prime fields differ");
  if (a.kind() == FieldKind::cyclotomic && a.cyclotomic().ctx->n != b.cyclotomic().ctx->n)
    throw Error(ErrorCode::field_mismatch, "cyclotomic fields differ");
}

}  // namespace

Field Field::rationals() { return Field(); }

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "modulus " + std::to_string(p) + " is not prime");
  if (p >= (1ULL << 62)) throw Error(ErrorCode::invalid_argument, "modulus too large");
  Field f;
  f.kind_ = FieldKind::prime;
  f.p_ = p;
  return f;
}

Field Field::cyclotomic(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "root order must be positive");
  Field f;
  f.kind_ = FieldKind::cyclotomic;
  f.cyc_ = shared_context(n);
  return f;
}

Field Field::parse(const std::string& text) {
  try {
    if (text == "Q" || text == "QQ") return rationals();
    if (text.rfind("Fp:", 0) == 0) return prime(std::stoull(text.substr(3)));
    if (text.rfind("cyc:", 0) == 0) return cyclotomic(std::stoi(text.substr(4)));
    if (text.size() > 1 && text[0] == 'F') return prime(std::stoull(text.substr(1)));
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::parse_error, "unrecognised field '" + text + "'");
}

int Field::root_order() const { return kind_ == FieldKind::cyclotomic ? cyc_->n : 0; }
int Field::degree() const { return kind_ == FieldKind::cyclotomic ? cyc_->degree : 1; }

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::rational: return "Q";
    case FieldKind::prime: return "Fp:" + std::to_string(p_);
    case FieldKind::cyclotomic: return "cyc:" + std::to_string(cyc_->n);
  }
  return "?";
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }
Scalar Field::from_int(long long v) const { return from_rational(Rational(static_cast<long>(v))); }

Scalar Field::from_rational(const Rational& q) const {
  switch (kind_) {
    case FieldKind::rational: return Scalar(q);
    case FieldKind::prime: return Scalar(PrimeValue{reduce_rational(q, p_), p_});
    case FieldKind::cyclotomic: {
      CyclotomicValue v{cyc_, std::vector<Rational>(cyc_->degree, 0)};
      v.coeffs[0] = q;
      return Scalar(std::move(v));
    }
  }
  return Scalar();
}

Scalar Field::zeta() const {
  if (kind_ != FieldKind::cyclotomic) throw Error(ErrorCode::invalid_argument, "zeta requires a cyclotomic field");
  CyclotomicValue v{cyc_, std::vector<Rational>(cyc_->degree, 0)};
  if (cyc_->degree == 1) {
    // n = 1 or 2: zeta is the rational root of phi
    v.coeffs[0] = -cyc_->phi[0];
  } else {
    v.coeffs[1] = 1;
  }
  return Scalar(std::move(v));
}

bool operator==(const Field& a, const Field& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == FieldKind::prime) return a.p_ == b.p_;
  if (a.kind_ == FieldKind::cyclotomic) return a.cyc_->n == b.cyc_->n;
  return true;
}

Field Scalar::field() const {
  switch (kind()) {
    case FieldKind::rational: return Field::rationals();
    case FieldKind::prime: {
      Field f;
      f.kind_ = FieldKind::prime;
      f.p_ = prime().p;
      return f;
    }
    case FieldKind::cyclotomic: {
      Field f;
      f.kind_ = FieldKind::cyclotomic;
      f.cyc_ = cyclotomic().ctx;
      return f;
    }
  }
  return Field::rationals();
}

bool Scalar::is_zero() const {
  switch (kind()) {
    case FieldKind::rational: return sgn(rational()) == 0;
    case FieldKind::prime: return prime().v == 0;
    case FieldKind::cyclotomic:
      for (const auto& c : cyclotomic().coeffs)
        if (sgn(c) != 0) return false;
      return true;
  }
  return false;
}

bool Scalar::is_one() const {
  switch (kind()) {
    case FieldKind::rational: return rational() == 1;
    case FieldKind::prime: return prime().v == 1 % prime().p;
    case FieldKind::cyclotomic: {
      const auto& c = cyclotomic().coeffs;
      if (c[0] != 1) return false;
      for (std::size_t k = 1; k < c.size(); ++k)
        if (sgn(c[k]) != 0) return false;
      return true;
    }
  }
  return false;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same(*this, o);
  switch (kind()) {
    case FieldKind::rational: std::get<Rational>(value_) += o.rational(); break;
    case FieldKind::prime: {
      auto& a = std::get<PrimeValue>(value_);
      a.v = (a.v + o.prime().v) % a.p;
      break;
    }
    case FieldKind::cyclotomic: {
      auto& a = std::get<CyclotomicValue>(value_).coeffs;
      const auto& b = o.cyclotomic().coeffs;
      for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
      break;
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same(*this, o);
  switch (kind()) {
    case FieldKind::rational: std::get<Rational>(value_) *= o.rational(); break;
    case FieldKind::prime: {
      auto& a = std::get<PrimeValue>(value_);
      a.v = static_cast<std::uint64_t>((unsigned __int128)a.v * o.prime().v % a.p);
      break;
    }
    case FieldKind::cyclotomic: {
      auto& av = std::get<CyclotomicValue>(value_);
      const auto& b = o.cyclotomic().coeffs;
      const int d = av.ctx->degree;
      Poly prod(2 * d, 0);
      for (int i = 0; i < d; ++i) {
        if (sgn(av.coeffs[i]) == 0) continue;
        for (int j = 0; j < d; ++j)
          if (sgn(b[j]) != 0) prod[i + j] += av.coeffs[i] * b[j];
      }
      reduce_mod_phi(prod, *av.ctx);
      av.coeffs = std::move(prod);
      break;
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

void Scalar::sub_mul(const Scalar& a, const Scalar& b) {
  if (kind() == FieldKind::rational && a.kind() == FieldKind::rational && b.kind() == FieldKind::rational) {
    Rational t = a.rational() * b.rational();
    std::get<Rational>(value_) -= t;
    return;
  }
  *this -= a * b;
}

Scalar Scalar::operator-() const {
  switch (kind()) {
    case FieldKind::rational: return Scalar(Rational(-rational()));
    case FieldKind::prime: {
      const auto& a = prime();
      return Scalar(PrimeValue{a.v == 0 ? 0 : a.p - a.v, a.p});
    }
    case FieldKind::cyclotomic: {
      CyclotomicValue v = cyclotomic();
      for (auto& c : v.coeffs) c = -c;
      return Scalar(std::move(v));
    }
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::singular_matrix, "division by zero");
  switch (kind()) {
    case FieldKind::rational: return Scalar(Rational(1 / rational()));
    case FieldKind::prime: {
      const auto& a = prime();
      return Scalar(PrimeValue{mod_pow(a.v, a.p - 2, a.p), a.p});
    }
    case FieldKind::cyclotomic: {
      // Solve (multiplication-by-this) * x = 1 over Q.
      const auto& av = cyclotomic();
      const int d = av.ctx->degree;
      std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, 0));
      for (int col = 0; col < d; ++col) {
        Poly prod(2 * d, 0);
        for (int i = 0; i < d; ++i) prod[i + col] += av.coeffs[i];
        reduce_mod_phi(prod, *av.ctx);
        for (int row = 0; row < d; ++row) m[row][col] = prod[row];
      }
      m[0][d] = 1;
      for (int c = 0; c < d; ++c) {
        int piv = c;
        while (piv < d && m[piv][c] == 0) ++piv;
        if (piv == d) throw Error(ErrorCode::singular_matrix, "non-invertible cyclotomic element");
        std::swap(m[piv], m[c]);
        Rational inv = 1 / m[c][c];
        for (int k = c; k <= d; ++k) m[c][k] *= inv;
        for (int r = 0; r < d; ++r) {
          if (r == c || m[r][c] == 0) continue;
          Rational f = m[r][c];
          for (int k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
        }
      }
      CyclotomicValue out{av.ctx, std::vector<Rational>(d)};
      for (int r = 0; r < d; ++r) out.coeffs[r] = m[r][d];
      return Scalar(std::move(out));
    }
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FieldKind::rational: return a.rational() == b.rational();
    case FieldKind::prime: return a.prime().p == b.prime().p && a.prime().v == b.prime().v;
    case FieldKind::cyclotomic:
      return a.cyclotomic().ctx->n == b.cyclotomic().ctx->n && a.cyclotomic().coeffs == b.cyclotomic().coeffs;
  }
  return false;
}

std::string Scalar::to_string() const {
  switch (kind()) {
    case FieldKind::rational: return rational().get_str();
    case FieldKind::prime: return std::to_string(prime().v) + " mod " + std::to_string(prime().p);
    case FieldKind::cyclotomic: {
      std::ostringstream os;
      os << '[';
      const auto& c = cyclotomic().coeffs;
      for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k].get_str();
      os << "] cyc " << cyclotomic().ctx->n;
      return os.str();
    }
  }
  return "?";
}

}  // namespace nonflat

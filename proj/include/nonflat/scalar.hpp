#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "nonflat/error.hpp"

namespace nonflat {

using Rational = mpq_class;

enum class FieldKind { rational, prime, cyclotomic };

struct CyclotomicContext;
class Scalar;

/// Descriptor of the base field. Cheap to copy; all scalars built from the
/// same descriptor compare field-equal.
class Field {
 public:
  static Field rationals();
  static Field prime(std::uint64_t p);
  static Field cyclotomic(int n);

  /// Accepts "Q", "Fp:<p>", "F<p>" and "cyc:<n>".
  static Field parse(const std::string& text);

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }
  int root_order() const;
  /// Degree over the prime field's rationals (1 for Q and Fp).
  int degree() const;
  /// 0 for Q and cyclotomic fields.
  std::uint64_t characteristic() const { return kind_ == FieldKind::prime ? p_ : 0; }
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const Rational& q) const;
  /// Primitive root of unity generating a cyclotomic field.
  Scalar zeta() const;

  const std::shared_ptr<const CyclotomicContext>& cyclotomic_context() const { return cyc_; }

  friend bool operator==(const Field& a, const Field& b);

 private:
  friend class Scalar;

  FieldKind kind_ = FieldKind::rational;
  std::uint64_t p_ = 0;
  std::shared_ptr<const CyclotomicContext> cyc_;
};

struct PrimeValue {
  std::uint64_t v;
  std::uint64_t p;
};

struct CyclotomicValue {
  std::shared_ptr<const CyclotomicContext> ctx;
  std::vector<Rational> coeffs;  // length == degree of the n-th cyclotomic polynomial
};

struct CyclotomicContext {
  int n = 0;
  int degree = 0;
  // monic integer polynomial, coefficient of x^k at index k, size degree + 1
  std::vector<Rational> phi;
};

/// Exact element of Q, F_p or Q(zeta_n).
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }
  explicit Scalar(PrimeValue v) : value_(v) {}
  explicit Scalar(CyclotomicValue v) : value_(std::move(v)) {}

  Field field() const;
  FieldKind kind() const { return static_cast<FieldKind>(value_.index()); }

  bool is_zero() const;
  bool is_one() const;

  const Rational& rational() const { return std::get<Rational>(value_); }
  const PrimeValue& prime() const { return std::get<PrimeValue>(value_); }
  const CyclotomicValue& cyclotomic() const { return std::get<CyclotomicValue>(value_); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  /// this -= a * b, the inner loop of elimination.
  void sub_mul(const Scalar& a, const Scalar& b);

  Scalar operator-() const;
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Rationals print as "a/b" (or "a" when integral), prime-field values as
  /// "v mod p", cyclotomic values as "[c0,c1,...] cyc n".
  std::string to_string() const;

 private:
  std::variant<Rational, PrimeValue, CyclotomicValue> value_;
};

bool is_prime(std::uint64_t p);

}  // namespace nonflat

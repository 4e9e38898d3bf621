#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "powerstab/errors.hpp"

namespace powerstab {

/// Arbitrary-precision signed integer.
class Integer {
 public:
  Integer() = default;
  Integer(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(mpz_class value) : v_(std::move(value)) {}

  /// Parses an optionally signed decimal literal such as "-7".
  static Integer parse(std::string_view text);

  std::string to_string() const { return v_.get_str(); }
  const mpz_class& mpz() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  Integer abs() const { return Integer(mpz_class(::abs(v_))); }

  friend Integer operator+(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ + b.v_)); }
  friend Integer operator-(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ - b.v_)); }
  friend Integer operator*(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ * b.v_)); }
  Integer operator-() const { return Integer(mpz_class(-v_)); }

  friend bool operator==(const Integer& a, const Integer& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpz_class v_;
};

/// Quotient and remainder with 0 <= remainder < |divisor|.
struct IntegerDivision {
  Integer quotient;
  Integer remainder;
};

IntegerDivision euclidean_divide(const Integer& a, const Integer& b);

struct ExtendedGcd {
  Integer d;  ///< gcd(a, b) >= 0
  Integer s;
  Integer t;  ///< d = s*a + t*b
};

ExtendedGcd int_ext_gcd(const Integer& a, const Integer& b);

/// Exact rational in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& value) : v_(value.mpz()) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

  /// Parses "3/4", "-7" or "0".
  static Rational parse(std::string_view text);

  std::string to_string() const { return v_.get_str(); }
  const mpq_class& mpq() const { return v_; }
  mpq_class& mpq() { return v_; }

  Integer numerator() const { return Integer(mpz_class(v_.get_num())); }
  Integer denominator() const { return Integer(mpz_class(v_.get_den())); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_one() const { return v_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  /// Throws DomainError on division by zero.
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

 private:
  mpq_class v_;
};

enum class RationalOp { Add, Sub, Mul, Div };

Rational rat_arith(RationalOp op, const Rational& a, const Rational& b);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

enum class FpOp { Add, Sub, Mul, Inv };

/// Residue class modulo a prime.
class FpElement {
 public:
  /// Throws DomainError when `modulus` is not prime.
  FpElement(std::int64_t value, std::uint64_t modulus);

  std::uint64_t residue() const { return residue_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return residue_ == 0; }

  friend bool operator==(const FpElement&, const FpElement&) = default;

 private:
  struct Unchecked {};
  FpElement(Unchecked, std::uint64_t residue, std::uint64_t modulus)
      : residue_(residue), modulus_(modulus) {}

  friend FpElement fp_arith(FpOp op, const FpElement& a, const FpElement& b);

  std::uint64_t residue_;
  std::uint64_t modulus_;
};

/// For Inv only `a` is used. Throws RingMismatch on differing moduli and
/// DomainError on the inverse of zero.
FpElement fp_arith(FpOp op, const FpElement& a, const FpElement& b);

/// Coefficient domain of a polynomial ring. Polynomial coefficients are
/// always held as Rational values; the domain keeps them canonical
/// (integral for ZZ, residues in [0, p) for GF(p)).
class CoefficientDomain {
 public:
  enum class Kind { Integer, Rational, PrimeField };

  static CoefficientDomain integers() { return CoefficientDomain(Kind::Integer, 0); }
  static CoefficientDomain rationals() { return CoefficientDomain(Kind::Rational, 0); }
  /// Throws DomainError unless p is prime.
  static CoefficientDomain prime_field(std::uint64_t p);

  Kind kind() const { return kind_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_field() const { return kind_ != Kind::Integer; }
  bool is_integer() const { return kind_ == Kind::Integer; }

  /// "ZZ", "QQ" or "Fp(7)".
  std::string name() const;

  /// Maps a rational into the domain. Throws DomainError for non-integers
  /// over ZZ and for denominators divisible by p over GF(p).
  Rational canonical(const Rational& value) const;
  bool contains(const Rational& value) const;

  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  /// Field inverse. Throws DomainError for zero or over ZZ.
  Rational inv(const Rational& a) const;
  /// Exact quotient a/b; over ZZ throws NotDivisible when b does not divide a.
  Rational divide_exact(const Rational& a, const Rational& b) const;
  bool is_unit(const Rational& a) const;

  /// In-place reduction of an mpq value that is already integral (FP) or
  /// arbitrary (QQ). Used on hot paths by polynomial arithmetic.
  void reduce_in_place(mpq_class& value) const;

  friend bool operator==(const CoefficientDomain&, const CoefficientDomain&) = default;

 private:
  CoefficientDomain(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint64_t modulus_;
};

}  // namespace powerstab

#include "powerstab/coefficients.hpp"

#include <array>
#include <cctype>

namespace powerstab {

namespace {

bool is_decimal(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

mpz_class parse_mpz(std::string_view text) {
  if (!is_decimal(text)) throw DomainError("not a decimal integer: '" + std::string(text) + "'");
  std::string digits(text.front() == '+' ? text.substr(1) : text);
  return mpz_class(digits, 10);
}

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace

Integer Integer::parse(std::string_view text) { return Integer(parse_mpz(text)); }

IntegerDivision euclidean_divide(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw DomainError("integer division by zero");
  mpz_class q;
  mpz_class r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  // fdiv gives sign(r) = sign(b); shift into [0, |b|).
  if (sgn(r) < 0) {
    r += ::abs(b.mpz());
    q += sgn(b.mpz()) < 0 ? 1 : -1;
  }
  return {Integer(std::move(q)), Integer(std::move(r))};
}

ExtendedGcd int_ext_gcd(const Integer& a, const Integer& b) {
  mpz_class d;
  mpz_class s;
  mpz_class t;
  mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return {Integer(std::move(d)), Integer(std::move(s)), Integer(std::move(t))};
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den.is_zero()) throw DomainError("zero denominator");
  v_ = mpq_class(num.mpz(), den.mpz());
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Integer::parse(text));
  return Rational(Integer::parse(text.substr(0, slash)), Integer::parse(text.substr(slash + 1)));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("rational division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

Rational rat_arith(RationalOp op, const Rational& a, const Rational& b) {
  switch (op) {
    case RationalOp::Add: return a + b;
    case RationalOp::Sub: return a - b;
    case RationalOp::Mul: return a * b;
    case RationalOp::Div: return a / b;
  }
  throw DomainError("unknown rational operation");
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (const auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  for (const auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FpElement::FpElement(std::int64_t value, std::uint64_t modulus) : residue_(0), modulus_(modulus) {
  if (!is_prime_u64(modulus)) throw DomainError("modulus " + std::to_string(modulus) + " is not prime");
  const auto m = static_cast<__int128>(modulus);
  __int128 r = static_cast<__int128>(value) % m;
  if (r < 0) r += m;
  residue_ = static_cast<std::uint64_t>(r);
}

FpElement fp_arith(FpOp op, const FpElement& a, const FpElement& b) {
  const std::uint64_t p = a.modulus_;
  if (op != FpOp::Inv && b.modulus_ != p) {
    throw RingMismatch("modulus mismatch: " + std::to_string(p) + " vs " + std::to_string(b.modulus_));
  }
  switch (op) {
    case FpOp::Add: {
      const u128 s = static_cast<u128>(a.residue_) + b.residue_;
      return {FpElement::Unchecked{}, static_cast<std::uint64_t>(s % p), p};
    }
    case FpOp::Sub:
      return {FpElement::Unchecked{}, a.residue_ >= b.residue_ ? a.residue_ - b.residue_ : p - (b.residue_ - a.residue_), p};
    case FpOp::Mul:
      return {FpElement::Unchecked{}, mul_mod(a.residue_, b.residue_, p), p};
    case FpOp::Inv:
      if (a.residue_ == 0) throw DomainError("inverse of zero modulo " + std::to_string(p));
      return {FpElement::Unchecked{}, pow_mod(a.residue_, p - 2, p), p};
  }
  throw DomainError("unknown field operation");
}

CoefficientDomain CoefficientDomain::prime_field(std::uint64_t p) {
  if (!is_prime_u64(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
  return {Kind::PrimeField, p};
}

std::string CoefficientDomain::name() const {
  switch (kind_) {
    case Kind::Integer: return "ZZ";
    case Kind::Rational: return "QQ";
    case Kind::PrimeField: return "Fp(" + std::to_string(modulus_) + ")";
  }
  return "?";
}

void CoefficientDomain::reduce_in_place(mpq_class& value) const {
  if (kind_ != Kind::PrimeField) return;
  mpz_class m(static_cast<unsigned long>(modulus_));
  if (value.get_den() != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), value.get_den().get_mpz_t(), m.get_mpz_t()) == 0) {
      throw DomainError("denominator not invertible modulo " + std::to_string(modulus_));
    }
    mpz_class num = value.get_num() * inv;
    value = mpq_class(num);
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_num().get_mpz_t(), m.get_mpz_t());
  value = mpq_class(r);
}

Rational CoefficientDomain::canonical(const Rational& value) const {
  switch (kind_) {
    case Kind::Integer:
      if (!value.is_integer()) throw DomainError("coefficient " + value.to_string() + " is not in ZZ");
      return value;
    case Kind::Rational:
      return value;
    case Kind::PrimeField: {
      mpq_class v = value.mpq();
      reduce_in_place(v);
      return Rational(std::move(v));
    }
  }
  return value;
}

bool CoefficientDomain::contains(const Rational& value) const {
  switch (kind_) {
    case Kind::Integer: return value.is_integer();
    case Kind::Rational: return true;
    case Kind::PrimeField:
      return value.is_integer() && value.sign() >= 0 && value.mpq().get_num() < mpz_class(static_cast<unsigned long>(modulus_));
  }
  return false;
}

Rational CoefficientDomain::add(const Rational& a, const Rational& b) const {
  mpq_class v = a.mpq() + b.mpq();
  reduce_in_place(v);
  return Rational(std::move(v));
}

Rational CoefficientDomain::sub(const Rational& a, const Rational& b) const {
  mpq_class v = a.mpq() - b.mpq();
  reduce_in_place(v);
  return Rational(std::move(v));
}

Rational CoefficientDomain::mul(const Rational& a, const Rational& b) const {
  mpq_class v = a.mpq() * b.mpq();
  reduce_in_place(v);
  return Rational(std::move(v));
}

Rational CoefficientDomain::neg(const Rational& a) const {
  mpq_class v = -a.mpq();
  reduce_in_place(v);
  return Rational(std::move(v));
}

Rational CoefficientDomain::inv(const Rational& a) const {
  if (a.is_zero()) throw DomainError("inverse of zero");
  switch (kind_) {
    case Kind::Integer:
      if (a.mpq() == 1 || a.mpq() == -1) return a;
      throw DomainError(a.to_string() + " is not a unit in ZZ");
    case Kind::Rational:
      return Rational(1) / a;
    case Kind::PrimeField: {
      mpq_class v(1, 1);
      v /= a.mpq();
      reduce_in_place(v);
      return Rational(std::move(v));
    }
  }
  return a;
}

Rational CoefficientDomain::divide_exact(const Rational& a, const Rational& b) const {
  if (b.is_zero()) throw DomainError("division by zero");
  if (kind_ == Kind::Integer) {
    if (!mpz_divisible_p(a.mpq().get_num().get_mpz_t(), b.mpq().get_num().get_mpz_t())) {
      throw NotDivisible(b.to_string() + " does not divide " + a.to_string());
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.mpq().get_num().get_mpz_t(), b.mpq().get_num().get_mpz_t());
    return Rational(Integer(std::move(q)));
  }
  return mul(a, inv(b));
}

bool CoefficientDomain::is_unit(const Rational& a) const {
  if (a.is_zero()) return false;
  if (kind_ == Kind::Integer) return a.mpq() == 1 || a.mpq() == -1;
  return true;
}

}  // namespace powerstab

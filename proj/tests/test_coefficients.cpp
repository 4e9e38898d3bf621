#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "powerstab/coefficients.hpp"

using namespace powerstab;

namespace {

Integer random_big(std::mt19937_64& rng) {
  // |value| < 10^30: three 10-digit limbs.
  std::uniform_int_distribution<long> limb(0, 9'999'999'999L);
  mpz_class v = 0;
  for (int i = 0; i < 3; ++i) v = v * mpz_class("10000000000") + limb(rng);
  if (rng() & 1U) v = -v;
  return Integer(v);
}

}  // namespace

TEST_SUITE("coefficients") {
  TEST_CASE("extended gcd of 12 and 8") {
    const auto g = int_ext_gcd(12, 8);
    CHECK(g.d == Integer(4));
    CHECK(g.s * Integer(12) + g.t * Integer(8) == Integer(4));
  }

  TEST_CASE("extended gcd with zero") {
    const auto g = int_ext_gcd(0, 5);
    CHECK(g.d == Integer(5));
    CHECK(g.s == Integer(0));
    CHECK(g.t == Integer(1));
    CHECK(int_ext_gcd(0, 0).d == Integer(0));
    CHECK(int_ext_gcd(-6, 4).d == Integer(2));
  }

  TEST_CASE("bezout identity on random big pairs") {
    std::mt19937_64 rng(20240101);
    for (int i = 0; i < 200; ++i) {
      const Integer a = random_big(rng);
      const Integer b = random_big(rng);
      const auto g = int_ext_gcd(a, b);
      CHECK(g.d.mpz() == oracle::euclid_gcd(a.mpz(), b.mpz()));
      CHECK(g.s * a + g.t * b == g.d);
    }
  }

  TEST_CASE("euclidean division keeps a non-negative remainder") {
    const auto q = euclidean_divide(-7, 2);
    CHECK(q.quotient == Integer(-4));
    CHECK(q.remainder == Integer(1));
    const auto r = euclidean_divide(7, -2);
    CHECK(r.remainder == Integer(1));
    CHECK(r.quotient * Integer(-2) + r.remainder == Integer(7));
    CHECK_THROWS_AS(euclidean_divide(1, 0), DomainError);
  }

  TEST_CASE("integer parsing") {
    CHECK(Integer::parse("-7") == Integer(-7));
    CHECK(Integer::parse("123456789012345678901234567890").to_string() == "123456789012345678901234567890");
    CHECK_THROWS(Integer::parse("12a"));
  }

  TEST_CASE("rational arithmetic") {
    CHECK(rat_arith(RationalOp::Add, Rational::parse("1/2"), Rational::parse("1/3")) == Rational::parse("5/6"));
    CHECK(rat_arith(RationalOp::Mul, Rational::parse("-9/4"), Rational(0)).to_string() == "0");
    CHECK(rat_arith(RationalOp::Div, Rational::parse("7/4"), Rational::parse("7/4")) == Rational(1));
    CHECK(rat_arith(RationalOp::Sub, Rational(1), Rational::parse("3/2")) == Rational::parse("-1/2"));
    CHECK_THROWS_AS(rat_arith(RationalOp::Div, Rational(1), Rational(0)), DomainError);
    CHECK(Rational::parse("4/6").to_string() == "2/3");
    CHECK(Rational::parse("3/-6").to_string() == "-1/2");
  }

  TEST_CASE("prime field arithmetic") {
    CHECK(fp_arith(FpOp::Inv, FpElement(3, 7), FpElement(0, 7)).residue() == 5);
    CHECK(fp_arith(FpOp::Add, FpElement(6, 7), FpElement(1, 7)).residue() == 0);
    CHECK(FpElement(-1, 7).residue() == 6);
    for (int a = 1; a < 11; ++a) {
      const FpElement x(a, 11);
      CHECK(fp_arith(FpOp::Mul, x, fp_arith(FpOp::Inv, x, x)).residue() == 1);
    }
    CHECK_THROWS_AS(fp_arith(FpOp::Inv, FpElement(0, 7), FpElement(0, 7)), DomainError);
    CHECK_THROWS_AS(fp_arith(FpOp::Add, FpElement(1, 7), FpElement(1, 11)), RingMismatch);
    CHECK_THROWS_AS(FpElement(1, 8), DomainError);
  }

  TEST_CASE("primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));
    CHECK_FALSE(is_prime_u64(3215031751ULL));
  }

  TEST_CASE("coefficient domains") {
    const auto zz = CoefficientDomain::integers();
    const auto qq = CoefficientDomain::rationals();
    const auto f7 = CoefficientDomain::prime_field(7);
    CHECK_THROWS_AS(zz.canonical(Rational::parse("1/2")), DomainError);
    CHECK(qq.canonical(Rational::parse("1/2")) == Rational::parse("1/2"));
    CHECK(f7.canonical(Rational::parse("1/2")) == Rational(4));
    CHECK_THROWS_AS(f7.canonical(Rational::parse("1/7")), DomainError);
    CHECK(f7.inv(Rational(3)) == Rational(5));
    CHECK_THROWS_AS(zz.inv(Rational(2)), DomainError);
    CHECK(zz.divide_exact(Rational(12), Rational(-4)) == Rational(-3));
    CHECK_THROWS_AS(zz.divide_exact(Rational(5), Rational(2)), NotDivisible);
    CHECK(zz.is_unit(Rational(-1)));
    CHECK_FALSE(zz.is_unit(Rational(2)));
    CHECK(f7.name() == "Fp(7)");
    CHECK_THROWS_AS(CoefficientDomain::prime_field(9), DomainError);
  }
}

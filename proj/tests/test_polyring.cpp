#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "powerstab/corpus.hpp"
#include "powerstab/polyring.hpp"

using namespace powerstab;

namespace {

Polynomial P(const char* text, const Ring& ring) { return parse_poly(text, ring); }

}  // namespace

TEST_SUITE("polyring") {
  TEST_CASE("ring specifications") {
    const auto zx = RingSpec::parse("ZZ[X]");
    CHECK(zx->coefficients().is_integer());
    CHECK(zx->main_variable() == 0u);
    const auto yx = RingSpec::parse("QQ[Y][X]");
    CHECK(yx->variables() == std::vector<std::string>{"Y", "X"});
    CHECK(yx->main_variable() == 1u);
    CHECK(yx->base_variables() == std::vector<std::size_t>{0});
    const auto fp = RingSpec::parse("Fp(7)[Y][X]");
    CHECK(fp->coefficients().modulus() == 7);
    CHECK(fp->to_string() == "Fp(7)[Y][X]");
    CHECK_THROWS(RingSpec::parse("QQ[X,X]"));
    CHECK_THROWS(RingSpec::parse("RR[X]"));
    CHECK_THROWS(RingSpec::parse("Fp(8)[X]"));
  }

  TEST_CASE("multiplication") {
    const auto r = RingSpec::parse("ZZ[X]");
    CHECK(P("X+1", r) * P("X-1", r) == P("X^2-1", r));
    CHECK((P("X^3 + 5", r) * Polynomial(r)).is_zero());
  }

  TEST_CASE("monomial curve identity against the naive multiplier") {
    const auto r = RingSpec::parse("QQ[Y,Z,W]");
    const auto f = P("W^3 - Y*Z", r);
    const auto g = P("Y^2 - W*Z", r);
    const auto h = P("Z^2 - W^2*Y", r);
    const auto lhs = oracle::naive_multiply(f, f) - oracle::naive_multiply(g, h);
    const auto q = P("W^5 + W*Y^3 - 3*W^2*Y*Z + Z^3", r);
    CHECK(lhs == oracle::naive_multiply(P("W", r), q));
    CHECK(f * f - g * h == lhs);
    CHECK(exact_divide(f * f - g * h, P("W", r)) == q);
  }

  TEST_CASE("products agree with the naive multiplier and with evaluation") {
    std::mt19937_64 rng(7);
    for (const char* spec : {"QQ[X,Y,Z]", "ZZ[X,Y]", "Fp(11)[Y][X]"}) {
      const auto r = RingSpec::parse(spec);
      for (int i = 0; i < 30; ++i) {
        const auto f = oracle::random_homogeneous(rng, r, 1 + i % 4, 9, 5) + oracle::random_homogeneous(rng, r, i % 3, 9, 3);
        const auto g = oracle::random_homogeneous(rng, r, 2, 9, 4) - oracle::random_homogeneous(rng, r, 0, 9, 1);
        CHECK(f * g == oracle::naive_multiply(f, g));
        if (r->coefficients().is_field() && r->coefficients().modulus() != 0) continue;
        std::vector<mpq_class> pt;
        for (std::size_t v = 0; v < r->num_variables(); ++v) pt.emplace_back(static_cast<long>(v) * 3 - 2, 1 + v);
        CHECK(oracle::evaluate(f * g, pt) == oracle::evaluate(f, pt) * oracle::evaluate(g, pt));
        CHECK(oracle::evaluate(f + g, pt) == oracle::evaluate(f, pt) + oracle::evaluate(g, pt));
      }
    }
  }

  TEST_CASE("ring laws") {
    std::mt19937_64 rng(11);
    const auto r = RingSpec::parse("QQ[Y][X]");
    for (int i = 0; i < 20; ++i) {
      const auto a = oracle::random_homogeneous(rng, r, 2, 5, 3) + oracle::random_homogeneous(rng, r, 1, 5, 2);
      const auto b = oracle::random_homogeneous(rng, r, 3, 5, 3);
      const auto c = oracle::random_homogeneous(rng, r, 1, 5, 2);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      CHECK(poly_arith(PolyOp::Neg, a, a) == -a);
      CHECK(a.pow(3) == a * a * a);
    }
  }

  TEST_CASE("monomial orders") {
    const auto r = RingSpec::parse("QQ[X,Y]");
    const auto f = P("X^2 + X*Y^3", r);
    CHECK(format_poly(Polynomial::from_terms(r, {leading_term(f, MonomialOrder::lex())})) == "X^2");
    CHECK(format_poly(Polynomial::from_terms(r, {leading_term(f, MonomialOrder::grevlex())})) == "X*Y^3");

    const auto yx = RingSpec::parse("QQ[Y][X]");
    const std::size_t front[] = {1};
    const auto block = MonomialOrder::block_elimination(front);
    const auto g = P("X^2 + Y^5*X + Y^9", yx);
    CHECK(format_poly(Polynomial::from_terms(yx, {leading_term(g, block)})) == "X^2");
  }

  TEST_CASE("order axioms on random monomials") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<unsigned> e(0, 4);
    const std::size_t n = 4;
    const std::size_t front[] = {1, 3};
    const std::vector<MonomialOrder> orders = {MonomialOrder::lex(), MonomialOrder::grevlex(),
                                               MonomialOrder::block_elimination(front),
                                               MonomialOrder::block_elimination(front, MonomialOrder::Kind::Grevlex)};
    auto rand_mono = [&] {
      Monomial m;
      for (std::size_t v = 0; v < n; ++v) m.set(v, e(rng));
      return m;
    };
    for (const auto& ord : orders) {
      for (int i = 0; i < 300; ++i) {
        const auto a = rand_mono(), b = rand_mono(), c = rand_mono();
        const int ab = ord.compare(a, b, n);
        CHECK(ab == -ord.compare(b, a, n));
        CHECK((ab == 0) == (a == b));
        // multiplicative
        CHECK((ord.compare(a * c, b * c, n) > 0) == (ab > 0));
        // 1 is minimal
        CHECK(ord.compare(a, Monomial(), n) >= 0);
        if (ab > 0 && ord.compare(b, c, n) > 0) CHECK(ord.compare(a, c, n) > 0);
      }
    }
    // elimination property: a monomial containing a front variable beats any without
    for (int i = 0; i < 300; ++i) {
      auto a = rand_mono(), b = rand_mono();
      a.set(1, a[1] + 1);
      b.set(1, 0);
      b.set(3, 0);
      CHECK(orders[2].compare(a, b, n) > 0);
      CHECK(orders[3].compare(a, b, n) > 0);
    }
  }

  TEST_CASE("exact division") {
    const auto r = RingSpec::parse("QQ[X,Y]");
    CHECK(exact_divide(P("X^2-1", r), P("X-1", r)) == P("X+1", r));
    CHECK_THROWS_AS(exact_divide(P("X", r), P("Y", r)), NotDivisible);
    CHECK_THROWS_AS(exact_divide(P("X", r), Polynomial(r)), DomainError);
    const auto z = RingSpec::parse("ZZ[X]");
    CHECK_THROWS_AS(exact_divide(P("X", z), P("2", z)), NotDivisible);
    CHECK_THROWS_AS(P("X", r) + P("X", z), RingMismatch);
  }

  TEST_CASE("parsing") {
    const auto z = RingSpec::parse("ZZ[X]");
    const auto f = P("X^2 - 2", z);
    CHECK(f == Polynomial::variable(z, "X").pow(2) - Polynomial::constant(z, 2));
    CHECK_THROWS_AS(P("1/2", z), DomainError);
    CHECK_THROWS_AS(P("X^", z), ParseError);
    CHECK_THROWS_AS(P("X + Q", z), ParseError);
    CHECK_THROWS_AS(P("(X + 1", z), ParseError);
    const auto r = RingSpec::parse("QQ[Y,Z,W]");
    CHECK(P("W^3 - Y*Z", r) == P("-Z*Y + W*W*W", r));
    CHECK(P("(Y+1)^2", r) == P("Y^2 + 2*Y + 1", r));
    CHECK(P("2Y", r) == P("2*Y", r));
    CHECK(P("1/2*Y - -3", r) == P("3 + 1/2*Y", r));
    CHECK(P("3", RingSpec::parse("Fp(7)[X]")) == P("10", RingSpec::parse("Fp(7)[X]")));
    CHECK(parse_poly_list("X, X^2-2", z).size() == 2);
    CHECK_THROWS_AS(parse_poly_list("X,,1", z), ParseError);
  }

  TEST_CASE("formatting") {
    const auto z = RingSpec::parse("ZZ[X]");
    CHECK(format_poly(Polynomial(z)) == "0");
    CHECK(format_poly(P("X^2 - 2", z)) == "X^2 - 2");
    CHECK(format_poly(P("-X", z)) == "-X");
    const auto q = RingSpec::parse("QQ[X,Y]");
    CHECK(format_poly(P("1/2*X - 3/4*Y", q)) == "1/2*X - 3/4*Y");
  }

  TEST_CASE("format then parse round-trips on corpus polynomials") {
    std::vector<Polynomial> polys;
    for (const auto& item : default_corpus()) {
      for (const auto& g : item.ideal.generators()) polys.push_back(g);
      if (item.second) {
        for (const auto& g : item.second->generators()) polys.push_back(g);
      }
    }
    REQUIRE(polys.size() > 20);
    for (const auto& f : polys) CHECK(parse_poly(format_poly(f), f.ring()) == f);
  }

  TEST_CASE("evaluate_map") {
    const auto src = RingSpec::parse("QQ[Y,Z,W]");
    const auto t = RingSpec::parse("QQ[T]");
    const std::map<std::string, Polynomial> phi = {
        {"W", P("T^3", t)}, {"Y", P("T^4", t)}, {"Z", P("T^5", t)}};
    CHECK(evaluate_map(P("W^3 - Y*Z", src), phi).is_zero());
    CHECK(evaluate_map(P("Y^2 - W*Z", src), phi).is_zero());
    CHECK(evaluate_map(P("Y + W", src), phi) == P("T^4 + T^3", t));
    const std::map<std::string, Polynomial> id = {{"W", P("W", src)}};
    CHECK(evaluate_map(P("W", src), id) == P("W", src));
    CHECK_THROWS_AS(evaluate_map(P("Y", src), id), UsageError);
  }
}

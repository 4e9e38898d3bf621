#include <doctest.h>

#include "oracles.hpp"
#include "powerstab/corpus.hpp"
#include "powerstab/stability.hpp"

using namespace powerstab;

namespace {

Polynomial P(const char* text, const Ring& ring) { return parse_poly(text, ring); }
Ideal I(const char* gens, const Ring& ring) { return Ideal::parse(gens, ring); }

}  // namespace

TEST_SUITE("stability") {
  TEST_CASE("stability rings") {
    CHECK(require_stability_ring(RingSpec::parse("QQ[Y][X]")) == 1);
    CHECK_THROWS_AS(require_stability_ring(RingSpec::parse("ZZ[X,Y]")), UsageError);
  }

  TEST_CASE("contractions of powers") {
    const auto z = RingSpec::parse("ZZ[X]");
    const auto i = square_cube_ideal(2);
    const auto c1 = contract_power(i, 1);
    REQUIRE(c1.d);
    CHECK(*c1.d == Integer(4));
    CHECK(contract_power(i, 2).d == Integer(8));
    CHECK(c1.generators == std::vector<Polynomial>{P("4", z)});

    const auto yx = RingSpec::parse("QQ[Y][X]");
    const auto c3 = contract_power(I("Y, X^2 + X + 1", yx), 3);
    CHECK(c3.generators == std::vector<Polynomial>{P("Y^3", yx)});
    CHECK(contract_power(I("X^2 + 1", yx), 2).generators.empty());
    CHECK(contract_power(I("X", z), 1).d == Integer(0));
  }

  TEST_CASE("verdict text") {
    CHECK(Verdict{Verdict::Kind::StableUpTo, 4}.to_string() == "STABLE_UP_TO(4)");
    CHECK(Verdict::parse("UNSTABLE_AT(2)") == Verdict{Verdict::Kind::UnstableAt, 2});
    CHECK_THROWS(Verdict::parse("STABLE(2)"));
  }

  TEST_CASE("square-cube ideals are unstable at 2") {
    for (int p : {2, 3, 5}) {
      const auto rep = check_power_stable(square_cube_ideal(p), 3);
      CHECK(rep.verdict == Verdict{Verdict::Kind::UnstableAt, 2});
      REQUIRE(rep.witness);
      CHECK(format_poly(*rep.witness) == std::to_string(p * p * p));
      CHECK(verify_witness(rep.ideal, 2, *rep.witness));
      CHECK(rep.records.size() == 2);
      CHECK(rep.records[0].equal);
      CHECK_FALSE(rep.records[1].equal);
    }
  }

  TEST_CASE("principal and gadget ideals") {
    const auto yx = RingSpec::parse("QQ[Y][X]");
    const auto stable = check_power_stable(I("X - Y", yx), 5);
    CHECK(stable.verdict == Verdict{Verdict::Kind::StableUpTo, 5});
    CHECK_FALSE(stable.witness);

    const auto g = check_power_stable(contraction_gadget(), 2);
    CHECK(g.verdict == Verdict{Verdict::Kind::UnstableAt, 2});
    REQUIRE(g.witness);
    CHECK(*g.witness == P("Y^3", yx));
    CHECK_FALSE(verify_witness(contraction_gadget(), 2, P("Y^4", yx)));
  }

  TEST_CASE("parallel checks match sequential ones") {
    for (const auto& item : default_corpus()) {
      if (item.ideal.ring()->free_variables().size() || !item.ideal.ring()->main_variable()) continue;
      const auto a = check_power_stable(item.ideal, 3, 1);
      const auto b = check_power_stable(item.ideal, 3, 4);
      CHECK(a.verdict == b.verdict);
      CHECK(a.records.size() == b.records.size());
      CHECK(a.witness.has_value() == b.witness.has_value());
    }
  }

  TEST_CASE("graded criterion") {
    const auto rep = graded_criterion(square_cube_ideal(2), 1);
    CHECK_FALSE(rep.holds());
    CHECK(rep.first_failure() == 1u);
    const auto z = RingSpec::parse("ZZ[X]");
    REQUIRE(rep.records.back().witness);
    CHECK(*rep.records.back().witness == P("8", z));

    const auto yx = RingSpec::parse("QQ[Y][X]");
    CHECK(graded_criterion(I("Y, X^2 + X + 1", yx), 3).holds());
    const auto zero = graded_criterion(contraction_gadget(), 0);
    CHECK(zero.holds());
    CHECK(zero.records.size() == 1);
  }

  TEST_CASE("monic certificates") {
    const auto yx = RingSpec::parse("QQ[Y][X]");
    const auto c = monic_certificate(I("Y^2, X^2 + Y*X + 1, Y^2*X", yx));
    REQUIRE(c);
    CHECK(c->f == P("X^2 + Y*X + 1", yx));
    CHECK(c->base_generators == std::vector<Polynomial>{P("Y^2", yx)});
    CHECK_FALSE(c->transcript.empty());
    CHECK_FALSE(monic_certificate(square_cube_ideal(2)));
    CHECK_FALSE(monic_certificate(I("Y", yx)));
  }

  TEST_CASE("regular image certificates") {
    const auto z = RingSpec::parse("ZZ[X]");
    const auto c = regular_image_certificate(I("4, X^2 + X + 1", z));
    REQUIRE(c);
    CHECK(c->d == Integer(4));
    CHECK(c->annihilator_bound == Integer(4));

    std::string reason;
    CHECK_FALSE(regular_image_certificate(I("4, 2*X + 2", z), &reason));
    CHECK(reason.find("c = 2") != std::string::npos);

    for (int p : {2, 3, 5, 7}) {
      const auto text = std::to_string(p) + ", X";
      CHECK(regular_image_certificate(Ideal::parse(text, z)));
    }
  }

  TEST_CASE("annihilator bound matches brute force") {
    const auto z = RingSpec::parse("ZZ[X]");
    for (long d = 1; d <= 36; ++d) {
      for (const char* h : {"X^2 + X + 1", "2*X + 2", "6*X^3 + 4*X", "9*X + 12", "X"}) {
        const auto poly = P(h, z);
        std::vector<mpz_class> coeffs;
        for (const auto& t : poly.terms()) coeffs.push_back(t.coeff.mpq().get_num());
        CHECK(mccoy_annihilator(Integer(d), poly).mpz() == oracle::brute_annihilator(d, coeffs));
      }
    }
    CHECK(mccoy_annihilator(Integer(0), P("X", z)) == Integer(0));
  }

  TEST_CASE("primary obstructions") {
    const auto p = monomial_curve_prime();
    const auto r = p.ring();
    const auto c = primary_obstruction(p, 2, {P("W", r), P("Y", r), P("Z", r)});
    REQUIRE(c);
    CHECK(c->w == P("W", r));
    CHECK(c->verified);
    CHECK_FALSE(member(c->q, ideal_power(p, 2)));
    CHECK(member(c->w * c->q, ideal_power(p, 2)));

    const auto xy = RingSpec::parse("QQ[X,Y]");
    CHECK_FALSE(primary_obstruction(I("X", xy), 2, {P("Y", xy)}));
    CHECK_FALSE(primary_obstruction(I("Y, X", xy), 2, {P("X + 1", xy)}));
    CHECK_THROWS_AS(primary_obstruction(I("1", xy), 2), UsageError);
  }
}

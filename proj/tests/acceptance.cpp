// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "powerstab/corpus.hpp"
#include "powerstab/stability.hpp"

using namespace powerstab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome* out;
  void operator()(bool ok, const std::string& what) const {
    if (ok) return;
    if (out->pass) out->detail = what;
    out->pass = false;
  }
};

Polynomial P(const std::string& text, const Ring& ring) { return parse_poly(text, ring); }

bool is_stable_up_to(const StabilityReport& r, unsigned t) {
  return r.verdict == Verdict{Verdict::Kind::StableUpTo, t};
}

// Sum of random terms Y^a Z^b X^c with a + b <= base_degree and c <= x_degree.
Polynomial random_poly(std::mt19937_64& rng, const Ring& ring, unsigned base_degree, unsigned terms) {
  std::uniform_int_distribution<unsigned> deg(0, base_degree);
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::vector<Term> out;
  for (unsigned k = 0; k < terms; ++k) {
    const unsigned d = deg(rng);
    std::uniform_int_distribution<unsigned> split(0, d);
    const unsigned a = split(rng);
    Monomial m;
    m.set(0, a);
    m.set(1, d - a);
    out.push_back({Rational(coeff(rng)), m});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

Outcome square_cube() {
  Outcome o;
  Check check{&o};
  const auto z = RingSpec::parse("ZZ[X]");
  for (int p : {2, 3, 5}) {
    const auto start = std::chrono::steady_clock::now();
    const auto ps = std::to_string(p);
    const auto i = Ideal::parse("X^2 - " + ps + ", X^3", z);
    const auto c = contract_power(i, 1);
    check(c.generators == std::vector<Polynomial>{P(std::to_string(p * p), z)}, "I ∩ R != (p^2) for p=" + ps);
    check(member(P(std::to_string(p * p * p), z), ideal_power(i, 2)), "p^3 not in I^2 for p=" + ps);
    const auto rep = check_power_stable(i, 4);
    check(rep.verdict == Verdict{Verdict::Kind::UnstableAt, 2}, "verdict " + rep.verdict.to_string() + " for p=" + ps);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(secs < 1.0, "p=" + ps + " took " + std::to_string(secs) + " s");
  }
  return o;
}

Outcome monomial_curve() {
  Outcome o;
  Check check{&o};
  const auto p = monomial_curve_prime();
  const auto r = p.ring();
  check(ideal_equal(kernel_of_map(monomial_curve_map()), p), "kernel differs from id(f,g,h)");
  const auto f = P("W^3 - Y*Z", r), g = P("Y^2 - W*Z", r), h = P("Z^2 - W^2*Y", r);
  const auto q = exact_divide(f * f - g * h, P("W", r));
  const auto p2 = ideal_power(p, 2);
  check(!member(P("W", r), p), "W in P");
  check(member(P("W", r) * q, p2), "W*Q not in P^2");
  check(!member(q, p2), "Q in P^2");
  const auto cert = primary_obstruction(p, 2, {P("W", r), P("Y", r), P("Z", r)});
  check(cert && cert->w == P("W", r) && cert->verified, "no verified obstruction with w=W");
  return o;
}

Outcome monic_suite() {
  Outcome o;
  Check check{&o};
  const auto r = RingSpec::parse("QQ[Y,Z][X]");
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<unsigned> ngens(1, 3), deg(1, 3), terms(1, 4);
  for (int k = 0; k < 50; ++k) {
    std::vector<Polynomial> gens;
    const unsigned n = ngens(rng);
    for (unsigned j = 0; j < n; ++j) {
      auto g = random_poly(rng, r, deg(rng), terms(rng));
      if (g.is_zero() || g.is_constant()) g = g + P("Y", r);
      gens.push_back(g);
    }
    Polynomial f = Polynomial::variable(r, "X").pow(deg(rng));
    const unsigned fdeg = static_cast<unsigned>(f.degree_in(2));
    for (unsigned e = 0; e < fdeg; ++e) f = f + random_poly(rng, r, 2, 2) * Polynomial::variable(r, "X").pow(e);
    gens.push_back(f);
    const Ideal i(r, gens);
    const auto rep = check_power_stable(i, 4);
    check(is_stable_up_to(rep, 4), "instance " + std::to_string(k) + " " + i.to_string() + ": " + rep.verdict.to_string());
    check(monic_certificate(i).has_value(), "no monic certificate for instance " + std::to_string(k));
  }
  return o;
}

Outcome principal_and_extension() {
  Outcome o;
  Check check{&o};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto i = principal_ideal(seed);
    check(is_stable_up_to(check_power_stable(i, 5), 5), "principal seed " + std::to_string(seed));
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto i = extended_ideal(seed);
    check(is_stable_up_to(check_power_stable(i, 5), 5), "extension seed " + std::to_string(seed));
    for (unsigned t = 1; t <= 5; ++t) {
      const auto c = contract_power(i, t).as_ideal();
      check(ideal_equal(c, ideal_power(i, t)), "extension seed " + std::to_string(seed) + " t=" + std::to_string(t));
    }
  }
  return o;
}

Outcome gadget() {
  Outcome o;
  Check check{&o};
  const auto i = contraction_gadget();
  const auto r = i.ring();
  check(contract_power(i, 1).generators == std::vector<Polynomial>{P("Y^2", r)}, "I ∩ R != (Y^2)");
  check(member(P("Y^3", r), ideal_power(i, 2)), "Y^3 not in I^2");
  check(check_power_stable(i, 4).verdict == Verdict{Verdict::Kind::UnstableAt, 2}, "verdict is not UNSTABLE_AT(2)");
  return o;
}

Outcome finite_equivalence() {
  Outcome o;
  Check check{&o};
  int compared = 0;
  for (const auto& item : default_corpus()) {
    const auto& ring = item.ideal.ring();
    if (!ring->main_variable() || !ring->free_variables().empty()) continue;
    const bool crit = graded_criterion(item.ideal, 3).holds();
    const bool stable = check_power_stable(item.ideal, 4).stable();
    check(crit == stable, item.label + ": criterion " + (crit ? "holds" : "fails") + ", stability " +
                              (stable ? "holds" : "fails"));
    ++compared;
  }
  check(compared >= 10, "only " + std::to_string(compared) + " corpus ideals compared");

  const auto i = square_cube_ideal(2);
  const auto rep = graded_criterion(i, 3);
  check(rep.first_failure() == 1u, "example ideal does not fail at n=1");
  if (rep.first_failure() == 1u && rep.records.back().witness) {
    const auto& w = *rep.records.back().witness;
    const auto j = contract_power(i, 1).as_ideal();
    check(member(w, j), "witness not in J");
    check(member(w, contract_power(i, 2).as_ideal()), "witness not in I^2 ∩ R");
    check(!member(w, ideal_power(j, 2)), "witness in J^2");
  } else {
    check(false, "missing witness");
  }
  return o;
}

Outcome comaximal() {
  Outcome o;
  Check check{&o};
  int antecedent = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [a, b] = comaximal_pair(seed);
    const auto ca = contract_power(a, 1).as_ideal();
    const auto cb = contract_power(b, 1).as_ideal();
    check(member(Polynomial::constant(a.ring(), 1), ideal_combine(IdealOp::Sum, ca, cb)),
          "contractions not comaximal for seed " + std::to_string(seed));
    if (!check_power_stable(a, 3).stable() || !check_power_stable(b, 3).stable()) continue;
    ++antecedent;
    check(is_stable_up_to(check_power_stable(intersect(a, b), 3), 3), "intersection unstable for seed " + std::to_string(seed));
  }
  check(antecedent == 10, "components stable in only " + std::to_string(antecedent) + " of 10 pairs");
  return o;
}

Outcome groebner_oracles() {
  Outcome o;
  Check check{&o};
  std::mt19937_64 rng(8);
  const std::vector<Ring> rings = {RingSpec::parse("QQ[X,Y,Z]"), RingSpec::parse("Fp(7)[X,Y,Z]"),
                                   RingSpec::parse("QQ[Y][X]"), RingSpec::parse("Fp(101)[A,B,C]")};
  std::uniform_int_distribution<unsigned> deg(1, 3), terms(2, 4);
  for (int k = 0; k < 20; ++k) {
    const auto& r = rings[k % rings.size()];
    std::vector<Polynomial> gens;
    for (int j = 0; j < 3; ++j) {
      gens.push_back(oracle::random_homogeneous(rng, r, deg(rng), 6, terms(rng)) +
                     oracle::random_homogeneous(rng, r, deg(rng) - 1, 6, 1));
    }
    for (const auto& ord : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
      const auto base = groebner_basis(gens, ord);
      check(is_groebner(base), "is_groebner false on ideal " + std::to_string(k));
      for (int s = 0; s < 5; ++s) {
        auto shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        shuffled.push_back(shuffled[0] * shuffled[1]);
        const auto other = groebner_basis(shuffled, ord);
        check(other.elements == base.elements, "reduced basis changed under shuffle, ideal " + std::to_string(k));
      }
    }
  }

  // Macaulay-matrix membership agreement, homogeneous instances up to degree 6.
  const std::vector<Ring> mrings = {RingSpec::parse("QQ[X,Y,Z]"), RingSpec::parse("Fp(5)[X,Y,Z]"),
                                    RingSpec::parse("ZZ[X,Y]")};
  int agreements = 0;
  for (int k = 0; k < 10; ++k) {
    const auto& r = mrings[k % mrings.size()];
    const std::vector<Polynomial> gens = {oracle::random_homogeneous(rng, r, 2, 4, 3),
                                          oracle::random_homogeneous(rng, r, 3, 4, 3)};
    const Ideal ideal(r, gens);
    check(is_groebner(ideal.basis()), "is_groebner false on Macaulay instance " + std::to_string(k));
    for (unsigned d = 3; d <= 6; ++d) {
      const auto inside = gens[0] * oracle::random_homogeneous(rng, r, d - 2, 3, 2) +
                          gens[1] * oracle::random_homogeneous(rng, r, d - 3, 3, 2);
      const auto outside = oracle::random_homogeneous(rng, r, d, 3, 3);
      for (const auto& f : {inside, outside, inside + outside}) {
        const bool mine = member(f, ideal);
        check(mine == oracle::macaulay_member(f, gens), "membership disagrees on instance " + std::to_string(k));
        ++agreements;
      }
    }
  }
  check(agreements == 120, "only " + std::to_string(agreements) + " membership comparisons");
  return o;
}

Outcome zx_primes() {
  Outcome o;
  Check check{&o};
  const auto z = RingSpec::parse("ZZ[X]");
  const std::vector<std::pair<std::uint64_t, std::string>> maximal = {
      {2, "X"}, {2, "X^2 + X + 1"}, {3, "X^2 + 1"}, {5, "X^2 + 2"}, {7, "X^3 + 2"}, {2, "X^3 + X + 1"}, {11, "X + 3"}};
  std::vector<Ideal> primes;
  for (const auto& [p, f] : maximal) {
    check(irreducible_mod_p(P(f, z), p), f + " reducible mod " + std::to_string(p));
    primes.push_back(Ideal::parse(std::to_string(p) + ", " + f, z));
  }
  for (const char* f : {"X^2 + 1", "2*X + 3", "X^3 - 2", "5*X^2 + 3*X + 1"}) primes.push_back(Ideal::parse(f, z));
  for (int p : {2, 3, 5, 7}) primes.push_back(Ideal::parse(std::to_string(p), z));
  check(primes.size() == 15, "expected 15 instances");
  for (const auto& i : primes) check(is_stable_up_to(check_power_stable(i, 3), 3), i.to_string() + " not stable up to 3");
  return o;
}

Outcome radical_intersections() {
  Outcome o;
  Check check{&o};
  const auto lists = default_radical_components();
  check(lists.size() == 8, "expected 8 component lists");
  for (const auto& comps : lists) {
    const auto i = radical_zx(comps);
    check(is_stable_up_to(check_power_stable(i, 3), 3), i.to_string() + " not stable up to 3");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "square-cube ideals over ZZ", 3, square_cube},
      {2, "monomial curve kernel and obstruction", 10, monomial_curve},
      {3, "monic suite, 50 random instances", 120, monic_suite},
      {4, "principal ideals and extensions", 60, principal_and_extension},
      {5, "contraction gadget", 1, gadget},
      {6, "graded criterion equivalence", 30, finite_equivalence},
      {7, "comaximal pairs", 60, comaximal},
      {8, "Groebner engine oracles", 120, groebner_oracles},
      {9, "primes of ZZ[X]", 60, zx_primes},
      {10, "radical intersections in ZZ[X]", 60, radical_intersections},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.pass && secs >= c.limit_seconds) {
      out = {false, "exceeded " + std::to_string(static_cast<int>(c.limit_seconds)) + " s"};
    }
    if (!out.pass) ++failures;
    std::printf("criterion %2d: %s  %-40s %8.3f s%s%s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, secs,
                out.detail.empty() ? "" : "  ", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

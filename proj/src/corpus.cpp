#include "powerstab/corpus.hpp"

#include <random>

#include "powerstab/errors.hpp"

namespace powerstab {

namespace {

using Rng = std::mt19937_64;

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Random polynomial in the given variables, total degree <= max_degree,
/// with integer coefficients in [-c, c].
Polynomial random_poly(Rng& rng, const Ring& ring, const std::vector<std::size_t>& vars, unsigned max_degree, long c,
                       unsigned terms) {
  std::vector<Term> out;
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m;
    unsigned left = static_cast<unsigned>(pick(rng, 0, max_degree));
    for (std::size_t v : vars) {
      const auto e = static_cast<unsigned>(pick(rng, 0, left));
      m.set(v, m[v] + e);
      left -= e;
    }
    out.push_back({Rational(pick(rng, -c, c)), m});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

/// X^deg + lower terms whose coefficients are random polynomials in `base`.
Polynomial random_monic(Rng& rng, const Ring& ring, std::size_t x, const std::vector<std::size_t>& base, unsigned deg,
                        unsigned coeff_degree, long c) {
  Polynomial f = Polynomial::variable(ring, x).pow(deg);
  for (unsigned i = 0; i < deg; ++i) {
    const Polynomial coeff = base.empty() ? Polynomial::constant(ring, Rational(pick(rng, -c, c)))
                                          : random_poly(rng, ring, base, coeff_degree, c, 2);
    f = f + coeff * Polynomial::variable(ring, x).pow(i);
  }
  return f;
}

std::uint64_t parse_prime(const std::string& text) {
  std::size_t used = 0;
  unsigned long long p = 0;
  try {
    p = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw UsageError("expected a prime, got '" + text + "'");
  if (!is_prime_u64(p)) throw UsageError(std::to_string(p) + " is not prime");
  return p;
}

/// "2:X^2+X+1;3:X" -> {(2, "X^2+X+1"), (3, "X")}.
std::vector<std::pair<std::uint64_t, std::string>> parse_components(const std::string& text) {
  std::vector<std::pair<std::uint64_t, std::string>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    const std::string item = text.substr(start, end - start);
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("radical_zx component '" + item + "' must look like p:f");
    out.emplace_back(parse_prime(item.substr(0, colon)), item.substr(colon + 1));
    start = end + 1;
  }
  return out;
}

std::vector<std::uint64_t> residues(const Polynomial& f, std::uint64_t p) {
  std::vector<std::uint64_t> out(f.degree_in(0) + 1, 0);
  const mpz_class m(static_cast<unsigned long>(p));
  for (const auto& t : f.terms()) {
    mpz_class r = t.coeff.mpq().get_num() % m;
    if (r < 0) r += m;
    out[t.monomial[0]] = r.get_ui();
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

/// Remainder of a by the monic g over Fp, both low-to-high coefficient vectors.
bool divides_mod_p(const std::vector<std::uint64_t>& g, std::vector<std::uint64_t> a, std::uint64_t p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t i = a.size(); i-- > dg;) {
    const unsigned __int128 c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) {
      const auto sub = static_cast<std::uint64_t>((c * g[j]) % p);
      auto& slot = a[i - dg + j];
      slot = (slot + p - sub) % p;
    }
  }
  for (std::size_t i = 0; i < dg; ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

}  // namespace

Ideal principal_ideal(std::uint64_t seed) {
  Rng rng(seed);
  const bool integers = seed % 2 == 0;
  const Ring ring = RingSpec::parse(integers ? "ZZ[X]" : "QQ[Y][X]");
  const std::size_t x = *ring->main_variable();
  const auto base = ring->base_variables();
  const auto deg = static_cast<unsigned>(pick(rng, 1, 3));
  Polynomial f(ring);
  while (f.is_zero() || f.degree_in(x) == 0) {
    f = Polynomial(ring);
    for (unsigned i = 0; i <= deg; ++i) {
      const Polynomial coeff = base.empty() ? Polynomial::constant(ring, Rational(pick(rng, -9, 9)))
                                            : random_poly(rng, ring, base, 2, 5, 2);
      f = f + coeff * Polynomial::variable(ring, x).pow(i);
    }
  }
  return Ideal(ring, {f});
}

Ideal extended_ideal(std::uint64_t seed) {
  Rng rng(seed);
  if (seed % 3 == 0) {
    const Ring ring = RingSpec::parse("ZZ[X]");
    return Ideal(ring, {Polynomial::constant(ring, Rational(pick(rng, 2, 30)))});
  }
  const Ring ring = RingSpec::parse("QQ[Y,Z][X]");
  const auto base = ring->base_variables();
  std::vector<Polynomial> gens;
  const auto count = pick(rng, 1, 3);
  while (static_cast<long>(gens.size()) < count) {
    Polynomial g = random_poly(rng, ring, base, 2, 4, 2);
    if (!g.is_zero() && !g.is_constant()) gens.push_back(g);
  }
  return Ideal(ring, gens);
}

Ideal square_cube_ideal(std::uint64_t p) {
  if (!is_prime_u64(p)) throw UsageError(std::to_string(p) + " is not prime");
  const Ring ring = RingSpec::parse("ZZ[X]");
  return Ideal(ring, parse_poly_list("X^2 - " + std::to_string(p) + ", X^3", ring));
}

Ideal monomial_curve_prime() {
  const Ring ring = RingSpec::parse("QQ[Y,Z,W]");
  return Ideal(ring, parse_poly_list("W^3 - Y*Z, Y^2 - W*Z, Z^2 - W^2*Y", ring));
}

RingMap monomial_curve_map() {
  const Ring source = RingSpec::parse("QQ[Y,Z,W]");
  const Ring target = RingSpec::parse("QQ[T]");
  return RingMap{source,
                 target,
                 {{"W", parse_poly("T^3", target)}, {"Y", parse_poly("T^4", target)}, {"Z", parse_poly("T^5", target)}}};
}

Ideal contraction_gadget() {
  const Ring ring = RingSpec::parse("QQ[Y][X]");
  return Ideal(ring, parse_poly_list("X^2 - Y, Y*X", ring));
}

std::pair<Ideal, Ideal> comaximal_pair(std::uint64_t seed) {
  Rng rng(seed);
  if (seed % 2 == 0) {
    const Ring ring = RingSpec::parse("ZZ[X]");
    static constexpr long primes[] = {2, 3, 5, 7};
    const auto i = pick(rng, 0, 3);
    auto j = pick(rng, 0, 2);
    if (j >= i) ++j;
    auto component = [&](long p) {
      const Polynomial d = Polynomial::constant(ring, Rational(p)).pow(static_cast<unsigned>(pick(rng, 1, 2)));
      const Polynomial f = random_monic(rng, ring, 0, {}, static_cast<unsigned>(pick(rng, 1, 2)), 0, 3);
      return Ideal(ring, {d, f});
    };
    Ideal a = component(primes[i]);
    Ideal b = component(primes[j]);
    return {std::move(a), std::move(b)};
  }
  const Ring ring = RingSpec::parse("QQ[Y][X]");
  const std::size_t x = *ring->main_variable();
  const auto base = ring->base_variables();
  const long a0 = pick(rng, -3, 3);
  long b0 = pick(rng, -3, 2);
  if (b0 >= a0) ++b0;
  auto component = [&](long root) {
    const Polynomial y = Polynomial::variable(ring, base[0]);
    const Polynomial lin = y - Polynomial::constant(ring, Rational(root));
    const Polynomial f = random_monic(rng, ring, x, base, static_cast<unsigned>(pick(rng, 1, 2)), 1, 3);
    return Ideal(ring, {lin.pow(static_cast<unsigned>(pick(rng, 1, 2))), f});
  };
  Ideal a = component(a0);
  Ideal b = component(b0);
  return {std::move(a), std::move(b)};
}

bool irreducible_mod_p(const Polynomial& f, std::uint64_t p) {
  if (f.ring()->num_variables() != 1) throw UsageError("irreducible_mod_p: expected a univariate polynomial");
  if (!is_prime_u64(p)) throw UsageError(std::to_string(p) + " is not prime");
  const auto a = residues(f, p);
  if (a.size() < 2) return false;  // units and zero mod p
  const std::size_t d = a.size() - 1;
  if (d > 6) throw UsageError("irreducible_mod_p: degree above 6 is not supported");
  if (d == 1) return true;
  long double candidates = 1;
  for (std::size_t k = 0; k < d / 2; ++k) candidates *= static_cast<long double>(p);
  if (candidates > 5e6L) throw UsageError("irreducible_mod_p: p too large for the brute-force check");
  for (std::size_t k = 1; k <= d / 2; ++k) {
    std::vector<std::uint64_t> g(k + 1, 0);
    g[k] = 1;
    while (true) {
      if (divides_mod_p(g, a, p)) return false;
      std::size_t i = 0;
      while (i < k && ++g[i] == p) g[i++] = 0;
      if (i == k) break;
    }
  }
  return true;
}

Ideal radical_zx(const std::vector<std::pair<std::uint64_t, std::string>>& components) {
  if (components.empty()) throw UsageError("radical_zx: at least one component is required");
  const Ring ring = RingSpec::parse("ZZ[X]");
  std::optional<Ideal> acc;
  for (const auto& [p, text] : components) {
    if (!is_prime_u64(p)) throw UsageError(std::to_string(p) + " is not prime");
    const Polynomial f = parse_poly(text, ring);
    if (!irreducible_mod_p(f, p)) {
      throw UsageError("radical_zx: " + format_poly(f) + " is not irreducible mod " + std::to_string(p));
    }
    Ideal m(ring, {Polynomial::constant(ring, Rational(static_cast<long>(p))), f});
    acc = acc ? intersect(*acc, m) : std::move(m);
  }
  return *acc;
}

std::vector<CorpusEntry> corpus_catalog() {
  return {
      {"principal", "--seed", "random principal ideal (f); stable for every t"},
      {"extension_JX", "--seed", "extension J R[X] of a random ideal J of R; contraction of the t-th power is J^t"},
      {"example_3_12", "p (prime, default 2)", "(X^2 - p, X^3) in ZZ[X]; contraction (p^2), unstable at t=2"},
      {"hochster_P", "", "prime (W^3 - YZ, Y^2 - WZ, Z^2 - W^2 Y) of the curve (T^4, T^5, T^3); P^2 is not P-primary"},
      {"hochster_toric_map", "", "kernel of W -> T^3, Y -> T^4, Z -> T^5 computed by elimination"},
      {"gadget_3_14", "", "(X^2 - Y, YX) in QQ[Y][X]; contraction (Y^2), Y^3 in I^2, unstable at t=2"},
      {"comaximal_pair", "--seed", "two ideals with comaximal contractions and their intersection"},
      {"radical_zx", "\"p:f;p:f;...\"", "intersection of maximal ideals (p, f) of ZZ[X], f irreducible mod p"},
  };
}

CorpusItem corpus(std::string_view name, const std::vector<std::string>& args, std::uint64_t seed) {
  const std::string n(name);
  const std::string seed_label = "(seed=" + std::to_string(seed) + ")";
  auto max_args = [&](std::size_t k) {
    if (args.size() > k) throw UsageError("corpus " + n + ": too many parameters");
  };
  if (n == "principal") {
    max_args(0);
    return {n + seed_label, principal_ideal(seed), std::nullopt, std::nullopt};
  }
  if (n == "extension_JX") {
    max_args(0);
    return {n + seed_label, extended_ideal(seed), std::nullopt, std::nullopt};
  }
  if (n == "example_3_12") {
    max_args(1);
    const std::uint64_t p = args.empty() ? 2 : parse_prime(args[0]);
    return {n + "(p=" + std::to_string(p) + ")", square_cube_ideal(p), std::nullopt, std::nullopt};
  }
  if (n == "hochster_P") {
    max_args(0);
    return {n, monomial_curve_prime(), std::nullopt, std::nullopt};
  }
  if (n == "hochster_toric_map") {
    max_args(0);
    RingMap map = monomial_curve_map();
    return {n, kernel_of_map(map), std::nullopt, map};
  }
  if (n == "gadget_3_14") {
    max_args(0);
    return {n, contraction_gadget(), std::nullopt, std::nullopt};
  }
  if (n == "comaximal_pair") {
    max_args(0);
    auto [a, b] = comaximal_pair(seed);
    return {n + seed_label, std::move(a), std::move(b), std::nullopt};
  }
  if (n == "radical_zx") {
    max_args(1);
    const auto comps = args.empty() ? default_radical_components().front() : parse_components(args[0]);
    std::string label = n + "(";
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (k > 0) label += ";";
      label += std::to_string(comps[k].first) + ":" + comps[k].second;
    }
    return {label + ")", radical_zx(comps), std::nullopt, std::nullopt};
  }
  throw UsageError("unknown corpus entry '" + n + "' (see corpus --list)");
}

std::vector<std::vector<std::pair<std::uint64_t, std::string>>> default_radical_components() {
  return {
      {{2, "X^2 + X + 1"}},
      {{2, "X"}, {3, "X"}},
      {{2, "X^2 + X + 1"}, {3, "X^2 + 1"}},
      {{5, "X^2 + 2"}, {2, "X + 1"}},
      {{3, "X^3 + 2*X + 1"}},
      {{2, "X"}, {2, "X + 1"}},
      {{7, "X"}, {3, "X^2 + 1"}, {2, "X^2 + X + 1"}},
      {{2, "X^3 + X + 1"}, {5, "X"}},
  };
}

std::vector<CorpusItem> default_corpus() {
  std::vector<CorpusItem> out;
  for (std::uint64_t s = 0; s < 4; ++s) out.push_back(corpus("principal", {}, s));
  for (std::uint64_t s = 0; s < 3; ++s) out.push_back(corpus("extension_JX", {}, s));
  for (const char* p : {"2", "3", "5"}) out.push_back(corpus("example_3_12", {p}));
  out.push_back(corpus("gadget_3_14"));
  for (std::uint64_t s = 0; s < 2; ++s) out.push_back(corpus("comaximal_pair", {}, s));
  for (const auto& comps : default_radical_components()) {
    std::string arg;
    for (const auto& [p, f] : comps) arg += (arg.empty() ? "" : ";") + std::to_string(p) + ":" + f;
    out.push_back(corpus("radical_zx", {arg}));
  }
  out.push_back(corpus("hochster_P"));
  return out;
}

}  // namespace powerstab

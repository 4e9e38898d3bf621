#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "powerstab/ideal.hpp"

namespace powerstab {

/// Random principal ideal (f); even seeds in ZZ[X], odd seeds in QQ[Y][X].
Ideal principal_ideal(std::uint64_t seed);

/// J R[X] for a random J ⊆ R; every third seed uses R = ZZ, otherwise QQ[Y,Z].
Ideal extended_ideal(std::uint64_t seed);

/// (X^2 - p, X^3) in ZZ[X]. Throws UsageError unless p is prime.
Ideal square_cube_ideal(std::uint64_t p);

/// Kernel of W -> T^3, Y -> T^4, Z -> T^5 written out: (W^3 - YZ, Y^2 - WZ, Z^2 - W^2 Y) in QQ[Y,Z,W].
Ideal monomial_curve_prime();
RingMap monomial_curve_map();

/// (X^2 - Y, YX) in QQ[Y][X].
Ideal contraction_gadget();

/// Two ideals with comaximal contractions, each built from a monic polynomial.
std::pair<Ideal, Ideal> comaximal_pair(std::uint64_t seed);

/// f mod p has no factor of degree 1..deg/2 (brute force; degree <= 6).
bool irreducible_mod_p(const Polynomial& f, std::uint64_t p);

/// Intersection of the maximal ideals (p, f) of ZZ[X]. Rejects non-prime p
/// and f reducible mod p.
Ideal radical_zx(const std::vector<std::pair<std::uint64_t, std::string>>& components);

struct CorpusEntry {
  std::string name;
  std::string params;
  std::string description;
};

std::vector<CorpusEntry> corpus_catalog();

struct CorpusItem {
  std::string label;
  Ideal ideal;
  std::optional<Ideal> second;
  std::optional<RingMap> map;
};

/// Builds a catalog entry by name. `args` are positional parameters
/// (p for example_3_12, "p:f;p:f" for radical_zx); `seed` feeds the random entries.
CorpusItem corpus(std::string_view name, const std::vector<std::string>& args = {}, std::uint64_t seed = 0);

/// The fixed set of instances exercised by `corpus --all`.
std::vector<CorpusItem> default_corpus();

/// Fixed radical_zx parameter lists used by default_corpus and the test suites.
std::vector<std::vector<std::pair<std::uint64_t, std::string>>> default_radical_components();

}  // namespace powerstab

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "powerstab/polyring.hpp"

namespace powerstab {

/// Resource caps for a single basis computation. Exceeding either raises
/// BudgetExceeded.
struct GroebnerOptions {
  std::size_t max_pairs = 100000;
  std::uint64_t max_degree = 60;
};

/// Reduced Groebner basis. Over ZZ the basis is strong: every ideal element
/// has a leading term divisible (coefficient and monomial) by some element's
/// leading term. Elements are sorted by ascending leading monomial.
struct GroebnerBasis {
  Ring ring;
  MonomialOrder order;
  std::vector<Polynomial> elements;
  bool reduced = false;
  bool strong = false;

  /// Normal form of f modulo the basis.
  Polynomial reduce(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }
};

/// f = sum(quotients[i] * divisors[i]) + remainder.
struct Division {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Full reduction of every term of f. Field mode: monomial divisibility.
/// ZZ mode: coefficient c at a divisible monomial is replaced by its least
/// non-negative remainder modulo the divisor's leading coefficient.
Division divide(const Polynomial& f, std::span<const Polynomial> divisors, const MonomialOrder& order);

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> divisors, const MonomialOrder& order);

/// S-polynomial under `order`. Over ZZ uses lcm of the leading coefficients.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// ZZ only: s*(m/lm f)*f + t*(m/lm g)*g where s*lc(f) + t*lc(g) = gcd.
Polynomial g_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// Throws UsageError on empty or all-zero input, BudgetExceeded on caps.
GroebnerBasis groebner_basis(std::span<const Polynomial> generators, const MonomialOrder& order,
                             const GroebnerOptions& options = {});

/// Buchberger criterion replayed without any pair pruning: every
/// S-polynomial (and G-polynomial over ZZ) reduces to zero.
bool is_groebner(const GroebnerBasis& basis);

}  // namespace powerstab

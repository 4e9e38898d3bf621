#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "powerstab/coefficients.hpp"

namespace powerstab {

inline constexpr std::size_t kMaxVariables = 16;

/// Base variables generate the coefficient subring R; the main variable is X
/// of R[X]. Free variables belong to neither (auxiliary tags, plain ZZ rings).
enum class VariableRole { Base, Main, Free };

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

/// Coefficient domain plus an ordered list of named variables.
/// Declaration order is authoritative for LEX/GREVLEX tie-breaking.
class RingSpec {
 public:
  RingSpec(CoefficientDomain coefficients, std::vector<std::string> names, std::vector<VariableRole> roles);

  /// Ring text: "ZZ[X]", "QQ[Y,Z,W]", "QQ[Y][X]", "Fp(7)[Y][X]".
  /// Two bracket groups: base variables, then the single main variable.
  /// One group: the last variable is main; the others are base variables
  /// over a field and free variables over ZZ.
  static Ring parse(std::string_view text);

  static Ring make(CoefficientDomain coefficients, std::vector<std::string> names,
                   std::vector<VariableRole> roles);

  const CoefficientDomain& coefficients() const { return coefficients_; }
  std::size_t num_variables() const { return names_.size(); }
  const std::vector<std::string>& variables() const { return names_; }
  const std::string& variable_name(std::size_t index) const { return names_.at(index); }
  VariableRole role(std::size_t index) const { return roles_.at(index); }
  std::optional<std::size_t> main_variable() const;
  std::vector<std::size_t> base_variables() const;
  std::vector<std::size_t> free_variables() const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws UsageError for unknown names.
  std::size_t require_index(std::string_view name) const;

  /// A copy with one extra free variable named "<prefix><k>" for the first
  /// unused k (prefix must start with '_', which user text cannot produce).
  Ring with_auxiliary(std::string_view prefix) const;

  std::string to_string() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  CoefficientDomain coefficients_;
  std::vector<std::string> names_;
  std::vector<VariableRole> roles_;
};

bool same_ring(const Ring& a, const Ring& b);
void require_same_ring(const Ring& a, const Ring& b, std::string_view context);

/// Exponent vector over at most kMaxVariables variables.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  static Monomial variable(std::size_t index, Exponent power = 1);

  Exponent operator[](std::size_t index) const { return exp_[index]; }
  void set(std::size_t index, Exponent value);
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  /// Precondition: divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp_ == b.exp_; }

  std::size_t hash() const;

 private:
  std::array<Exponent, kMaxVariables> exp_{};
  std::uint64_t degree_ = 0;
};

/// Total, multiplicative well-orders on monomials.
class MonomialOrder {
 public:
  enum class Kind { Lex, Grevlex, BlockElim };

  static MonomialOrder grevlex();
  /// Lex in declaration order.
  static MonomialOrder lex();
  /// Lex with the listed variables most significant first; unlisted
  /// variables follow in declaration order.
  static MonomialOrder lex(std::span<const std::size_t> priority);
  /// Elimination order: compares the `front` block first, then the rest,
  /// each block under `inner` (Lex or Grevlex) in declaration order.
  static MonomialOrder block_elimination(std::span<const std::size_t> front, Kind inner = Kind::Lex);

  Kind kind() const { return kind_; }
  Kind inner() const { return inner_; }
  bool in_front_block(std::size_t var) const { return (front_mask_ >> var) & 1U; }
  std::vector<std::size_t> front_block(std::size_t num_variables) const;

  /// Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b, std::size_t num_variables) const;

  std::string to_string(const RingSpec& ring) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, Kind inner) : kind_(kind), inner_(inner) {}

  int compare_block(const Monomial& a, const Monomial& b, std::size_t n, std::uint32_t mask, Kind how) const;

  Kind kind_;
  Kind inner_;
  std::array<std::uint8_t, kMaxVariables> priority_{};
  std::uint32_t front_mask_ = 0;
};

struct Term {
  Rational coeff;
  Monomial monomial;
};

/// Sparse polynomial: terms strictly descending under its order, no zero
/// coefficients, coefficients canonical for the ring's domain.
class Polynomial {
 public:
  explicit Polynomial(Ring ring, MonomialOrder order = MonomialOrder::grevlex());

  /// Combines duplicate monomials, drops zeros and sorts.
  static Polynomial from_terms(Ring ring, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::grevlex());
  /// Trusted constructor: `terms` must already be strictly descending under
  /// `order` with nonzero canonical coefficients.
  static Polynomial from_sorted_terms(Ring ring, MonomialOrder order, std::vector<Term> terms);
  static Polynomial constant(Ring ring, const Rational& value);
  static Polynomial variable(Ring ring, std::size_t index);
  static Polynomial variable(Ring ring, std::string_view name);

  const Ring& ring() const { return ring_; }
  const CoefficientDomain& domain() const { return ring_->coefficients(); }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  /// Value of a constant polynomial (zero for the zero polynomial).
  Rational constant_value() const;

  /// Leading term under the polynomial's own order. Throws DomainError on zero.
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  const Rational& leading_coefficient() const { return leading_term().coeff; }

  Polynomial with_order(const MonomialOrder& order) const;

  std::uint64_t total_degree() const;
  Monomial::Exponent degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;
  bool free_of(std::span<const std::size_t> vars) const;

  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Rational& c, const Monomial& m) const;
  Polynomial pow(unsigned exponent) const;
  /// Over a field: divides by the leading coefficient. Over ZZ: makes the
  /// leading coefficient positive.
  Polynomial normalized() const;

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  Polynomial operator-() const;

  /// Same ring and same terms, regardless of the stored order.
  friend bool operator==(const Polynomial& f, const Polynomial& g);

 private:
  Polynomial(Ring ring, MonomialOrder order, std::vector<Term> sorted_terms);

  Ring ring_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

enum class PolyOp { Add, Sub, Mul, Neg };

/// For Neg only `f` is used. Throws RingMismatch across rings.
Polynomial poly_arith(PolyOp op, const Polynomial& f, const Polynomial& g);

/// Maximal term of f under `order`. Throws DomainError on zero.
Term leading_term(const Polynomial& f, const MonomialOrder& order);

/// q with f = q*g. Throws NotDivisible when g does not divide f exactly.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

/// Throws ParseError, or DomainError for coefficients outside the domain.
Polynomial parse_poly(std::string_view text, const Ring& ring);

/// Comma-separated polynomial list; empty entries are rejected.
std::vector<Polynomial> parse_poly_list(std::string_view text, const Ring& ring);

std::string format_poly(const Polynomial& f);

/// Substitutes assignment[v] for every variable v occurring in f. All images
/// share one target ring; throws UsageError on a missing assignment and
/// RingMismatch on inconsistent targets.
Polynomial evaluate_map(const Polynomial& f, const std::map<std::string, Polynomial>& assignment);

/// Moves f into `target` by variable name. Throws RingMismatch when f uses a
/// variable unknown to `target` or the coefficient domains differ.
Polynomial change_ring(const Polynomial& f, const Ring& target,
                       MonomialOrder order = MonomialOrder::grevlex());

}  // namespace powerstab

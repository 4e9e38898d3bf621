#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "powerstab/groebner.hpp"
#include "powerstab/polyring.hpp"

namespace powerstab {

/// Finitely generated ideal. Generators are free of zeros and duplicates;
/// an empty list is the zero ideal. Groebner bases are memoized per order
/// and shared between copies.
class Ideal {
 public:
  Ideal(Ring ring, std::vector<Polynomial> generators, GroebnerOptions options = {});

  /// Comma-separated generator text, e.g. "X^2 - 2, X^3".
  static Ideal parse(std::string_view generators, const Ring& ring, GroebnerOptions options = {});

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const GroebnerOptions& options() const { return options_; }
  bool is_zero() const { return generators_.empty(); }

  /// Reduced basis (strong over ZZ) under `order`; empty for the zero ideal.
  const GroebnerBasis& basis(const MonomialOrder& order = MonomialOrder::grevlex()) const;

  /// "(X^2 - 2, X^3)"; the zero ideal prints as "(0)".
  std::string to_string() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::pair<MonomialOrder, std::shared_ptr<const GroebnerBasis>>> entries;
  };

  Ring ring_;
  std::vector<Polynomial> generators_;
  GroebnerOptions options_;
  std::shared_ptr<Cache> cache_;
};

/// Elimination order used by every contraction in the library.
MonomialOrder elimination_order(std::span<const std::size_t> eliminated);

/// All products of t generators (multisets), deduplicated. Throws UsageError for t = 0.
Ideal ideal_power(const Ideal& ideal, unsigned t);

enum class IdealOp { Sum, Product };
Ideal ideal_combine(IdealOp op, const Ideal& a, const Ideal& b);

/// a ∩ b through id(u*a, (1 - u)*b) with the tag variable u eliminated.
Ideal intersect(const Ideal& a, const Ideal& b);

/// (I : f) = {g : g*f ∈ I}. Throws DomainError for f = 0.
Ideal quotient(const Ideal& ideal, const Polynomial& f);

/// (I : f^∞). Fields: id(I, 1 - y*f) with y eliminated. ZZ: iterated quotients.
Ideal saturate(const Ideal& ideal, const Polynomial& f);

/// I ∩ K[remaining variables], as an ideal of the same ring.
Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> variables);
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& variables);

bool member(const Polynomial& f, const Ideal& ideal);

struct RadicalMembership {
  bool member = false;
  /// Smallest k <= power_cap with f^k ∈ I, when one exists.
  std::optional<unsigned> exponent;
};

/// Decided by 1 ∈ id(I, 1 - y*f) in both field and ZZ mode.
RadicalMembership radical_member(const Polynomial& f, const Ideal& ideal, unsigned power_cap = 12);

/// b ⊆ a.
bool ideal_contains(const Ideal& a, const Ideal& b);
bool ideal_equal(const Ideal& a, const Ideal& b);

/// Ring homomorphism given by images of the source variables.
struct RingMap {
  Ring source;
  Ring target;
  std::map<std::string, Polynomial> images;

  /// Throws UsageError unless every source variable has an image in `target`.
  void validate() const;
  Polynomial apply(const Polynomial& f) const;
};

/// Kernel via the graph ideal id(v - image(v)) with the target variables
/// eliminated. Returned as an ideal of the source ring.
Ideal kernel_of_map(const RingMap& map, GroebnerOptions options = {});

}  // namespace powerstab

#include "powerstab/ideal.hpp"

#include <algorithm>
#include <numeric>

namespace powerstab {

namespace {

void push_unique(std::vector<Polynomial>& out, Polynomial p) {
  if (p.is_zero()) return;
  if (std::none_of(out.begin(), out.end(), [&](const Polynomial& q) { return q == p; })) out.push_back(std::move(p));
}

/// Rewrites f into `target`, sending variable v of f's ring to index_map[v].
Polynomial translate(const Polynomial& f, const Ring& target, const std::vector<std::size_t>& index_map) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < index_map.size(); ++v) {
      if (t.monomial[v] != 0) m.set(index_map[v], t.monomial[v]);
    }
    terms.push_back({t.coeff, m});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

/// Basis elements of id(gens) free of `eliminated`, in `ring`.
std::vector<Polynomial> eliminate_generators(const std::vector<Polynomial>& gens, std::span<const std::size_t> eliminated,
                                             const GroebnerOptions& options) {
  const auto order = elimination_order(eliminated);
  const auto gb = groebner_basis(gens, order, options);
  std::vector<Polynomial> out;
  for (const auto& g : gb.elements) {
    if (g.free_of(eliminated)) out.push_back(g.with_order(MonomialOrder::grevlex()));
  }
  return out;
}

}  // namespace

Ideal::Ideal(Ring ring, std::vector<Polynomial> generators, GroebnerOptions options)
    : ring_(std::move(ring)), options_(options), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    require_same_ring(ring_, g.ring(), "ideal");
    push_unique(generators_, g.with_order(MonomialOrder::grevlex()));
  }
}

Ideal Ideal::parse(std::string_view generators, const Ring& ring, GroebnerOptions options) {
  return Ideal(ring, parse_poly_list(generators, ring), options);
}

const GroebnerBasis& Ideal::basis(const MonomialOrder& order) const {
  {
    std::lock_guard lock(cache_->mutex);
    for (const auto& [o, gb] : cache_->entries) {
      if (o == order) return *gb;
    }
  }
  auto computed = std::make_shared<const GroebnerBasis>(
      generators_.empty() ? GroebnerBasis{ring_, order, {}, true, !ring_->coefficients().is_field()}
                          : groebner_basis(generators_, order, options_));
  std::lock_guard lock(cache_->mutex);
  for (const auto& [o, gb] : cache_->entries) {
    if (o == order) return *gb;  // another filler won; bases are identical
  }
  cache_->entries.emplace_back(order, std::move(computed));
  return *cache_->entries.back().second;
}

std::string Ideal::to_string() const {
  if (generators_.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    if (k > 0) out += ", ";
    out += format_poly(generators_[k]);
  }
  return out + ")";
}

MonomialOrder elimination_order(std::span<const std::size_t> eliminated) {
  return MonomialOrder::block_elimination(eliminated, MonomialOrder::Kind::Lex);
}

Ideal ideal_power(const Ideal& ideal, unsigned t) {
  if (t == 0) throw UsageError("ideal_power: the exponent must be at least 1");
  const auto& gens = ideal.generators();
  if (gens.empty()) return ideal;
  // products[k] holds all products of the current length whose largest factor index is k.
  std::vector<std::vector<Polynomial>> products(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) products[k].push_back(gens[k]);
  for (unsigned step = 1; step < t; ++step) {
    std::vector<std::vector<Polynomial>> next(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      for (std::size_t j = 0; j <= k; ++j) {
        for (const auto& p : products[j]) next[k].push_back(p * gens[k]);
      }
    }
    products = std::move(next);
  }
  std::vector<Polynomial> out;
  for (auto& bucket : products) {
    for (auto& p : bucket) push_unique(out, std::move(p));
  }
  return Ideal(ideal.ring(), std::move(out), ideal.options());
}

Ideal ideal_combine(IdealOp op, const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_combine");
  std::vector<Polynomial> out;
  if (op == IdealOp::Sum) {
    out = a.generators();
    out.insert(out.end(), b.generators().begin(), b.generators().end());
  } else {
    for (const auto& f : a.generators()) {
      for (const auto& g : b.generators()) out.push_back(f * g);
    }
  }
  return Ideal(a.ring(), std::move(out), a.options());
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "intersect");
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  const Ring tagged = a.ring()->with_auxiliary("_t");
  const std::size_t u = tagged->num_variables() - 1;
  const Polynomial tag = Polynomial::variable(tagged, u);
  const Polynomial one_minus_tag = Polynomial::constant(tagged, Rational(1)) - tag;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(tag * change_ring(f, tagged));
  for (const auto& g : b.generators()) gens.push_back(one_minus_tag * change_ring(g, tagged));
  const std::size_t eliminated[] = {u};
  std::vector<Polynomial> out;
  for (const auto& p : eliminate_generators(gens, eliminated, a.options())) out.push_back(change_ring(p, a.ring()));
  return Ideal(a.ring(), std::move(out), a.options());
}

Ideal quotient(const Ideal& ideal, const Polynomial& f) {
  require_same_ring(ideal.ring(), f.ring(), "quotient");
  if (f.is_zero()) throw DomainError("quotient by the zero polynomial");
  const Ideal both = intersect(ideal, Ideal(ideal.ring(), {f}, ideal.options()));
  std::vector<Polynomial> out;
  for (const auto& g : both.generators()) out.push_back(exact_divide(g, f));
  return Ideal(ideal.ring(), std::move(out), ideal.options());
}

Ideal saturate(const Ideal& ideal, const Polynomial& f) {
  require_same_ring(ideal.ring(), f.ring(), "saturate");
  if (f.is_zero()) throw DomainError("saturation by the zero polynomial");
  if (ideal.is_zero()) return ideal;
  if (ideal.ring()->coefficients().is_field()) {
    const Ring extended = ideal.ring()->with_auxiliary("_y");
    const std::size_t y = extended->num_variables() - 1;
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(change_ring(g, extended));
    gens.push_back(Polynomial::constant(extended, Rational(1)) -
                   Polynomial::variable(extended, y) * change_ring(f, extended));
    const std::size_t eliminated[] = {y};
    std::vector<Polynomial> out;
    for (const auto& p : eliminate_generators(gens, eliminated, ideal.options())) {
      out.push_back(change_ring(p, ideal.ring()));
    }
    return Ideal(ideal.ring(), std::move(out), ideal.options());
  }
  Ideal current = ideal;
  for (std::size_t rounds = 0;; ++rounds) {
    if (rounds > ideal.options().max_pairs) throw BudgetExceeded("saturate: quotient chain did not stabilize");
    Ideal next = quotient(current, f);
    if (ideal_contains(current, next)) return current;
    current = std::move(next);
  }
}

Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> variables) {
  for (auto v : variables) {
    if (v >= ideal.ring()->num_variables()) throw UsageError("eliminate: variable index out of range");
  }
  if (variables.empty() || ideal.is_zero()) return ideal;
  return Ideal(ideal.ring(), eliminate_generators(ideal.generators(), variables, ideal.options()), ideal.options());
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& variables) {
  std::vector<std::size_t> idx;
  for (const auto& name : variables) idx.push_back(ideal.ring()->require_index(name));
  return eliminate(ideal, idx);
}

bool member(const Polynomial& f, const Ideal& ideal) {
  require_same_ring(ideal.ring(), f.ring(), "member");
  if (f.is_zero()) return true;
  if (ideal.is_zero()) return false;
  return ideal.basis().contains(f);
}

RadicalMembership radical_member(const Polynomial& f, const Ideal& ideal, unsigned power_cap) {
  require_same_ring(ideal.ring(), f.ring(), "radical_member");
  RadicalMembership out;
  if (f.is_zero()) {
    out.member = true;
    out.exponent = 1;
    return out;
  }
  if (ideal.is_zero()) return out;  // R is a domain: only 0 is nilpotent
  const Ring extended = ideal.ring()->with_auxiliary("_y");
  const std::size_t y = extended->num_variables() - 1;
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(change_ring(g, extended));
  gens.push_back(Polynomial::constant(extended, Rational(1)) - Polynomial::variable(extended, y) * change_ring(f, extended));
  const auto gb = groebner_basis(gens, MonomialOrder::grevlex(), ideal.options());
  out.member = gb.contains(Polynomial::constant(extended, Rational(1)));
  if (out.member) {
    Polynomial power = f;
    for (unsigned k = 1; k <= power_cap; ++k) {
      if (member(power, ideal)) {
        out.exponent = k;
        break;
      }
      power = power * f;
    }
  }
  return out;
}

bool ideal_contains(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_contains");
  return std::all_of(b.generators().begin(), b.generators().end(), [&](const Polynomial& g) { return member(g, a); });
}

bool ideal_equal(const Ideal& a, const Ideal& b) { return ideal_contains(a, b) && ideal_contains(b, a); }

void RingMap::validate() const {
  if (!source || !target) throw UsageError("ring map: source and target rings are required");
  if (!(source->coefficients() == target->coefficients())) {
    throw UsageError("ring map: coefficient domains differ (" + source->coefficients().name() + " vs " +
                     target->coefficients().name() + ")");
  }
  for (const auto& name : source->variables()) {
    const auto it = images.find(name);
    if (it == images.end()) throw UsageError("ring map: no image for '" + name + "'");
    if (!same_ring(it->second.ring(), target)) throw UsageError("ring map: image of '" + name + "' is not in the target ring");
  }
  for (const auto& [name, image] : images) {
    if (!source->index_of(name)) throw UsageError("ring map: '" + name + "' is not a source variable");
  }
}

Polynomial RingMap::apply(const Polynomial& f) const {
  validate();
  require_same_ring(source, f.ring(), "ring map");
  if (f.is_constant()) return Polynomial::constant(target, f.constant_value());
  return evaluate_map(f, images);
}

Ideal kernel_of_map(const RingMap& map, GroebnerOptions options) {
  map.validate();
  const auto& src = *map.source;
  const auto& tgt = *map.target;
  // Joint ring: source variables keep their names, target variables become
  // reserved auxiliaries so identical names on both sides cannot collide.
  std::vector<std::string> names = src.variables();
  std::vector<VariableRole> roles;
  for (std::size_t v = 0; v < src.num_variables(); ++v) roles.push_back(src.role(v));
  std::vector<std::size_t> target_index(tgt.num_variables());
  std::vector<std::size_t> eliminated;
  for (std::size_t v = 0; v < tgt.num_variables(); ++v) {
    target_index[v] = names.size();
    eliminated.push_back(names.size());
    names.push_back("_k" + std::to_string(v));
    roles.push_back(VariableRole::Free);
  }
  const Ring joint = RingSpec::make(src.coefficients(), names, roles);

  std::vector<Polynomial> graph;
  for (std::size_t v = 0; v < src.num_variables(); ++v) {
    const Polynomial image = translate(map.images.at(src.variable_name(v)), joint, target_index);
    graph.push_back(Polynomial::variable(joint, v) - image);
  }
  std::vector<Polynomial> out;
  for (const auto& p : eliminate_generators(graph, eliminated, options)) out.push_back(change_ring(p, map.source));
  return Ideal(map.source, std::move(out), options);
}

}  // namespace powerstab

#include "powerstab/groebner.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace powerstab {

namespace {

struct Descending {
  const MonomialOrder* order;
  std::size_t n;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b, n) > 0; }
};

using Workspace = std::map<Monomial, mpq_class, Descending>;

/// w -= q * mm * g, optionally skipping g's leading term (known to cancel).
void subtract_multiple(Workspace& w, const Polynomial& g, const mpq_class& q, const Monomial& mm,
                       const CoefficientDomain& domain, bool skip_lead) {
  const auto& terms = g.terms();
  for (std::size_t k = skip_lead ? 1 : 0; k < terms.size(); ++k) {
    auto [it, inserted] = w.try_emplace(terms[k].monomial * mm);
    it->second -= q * terms[k].coeff.mpq();
    domain.reduce_in_place(it->second);
    if (sgn(it->second) == 0) w.erase(it);
  }
}

/// Quotient q with c - q*b in [0, |b|).
mpz_class euclid_quotient(const mpz_class& c, const mpz_class& b) {
  mpz_class q;
  mpz_class babs = abs(b);
  mpz_fdiv_q(q.get_mpz_t(), c.get_mpz_t(), babs.get_mpz_t());
  if (sgn(b) < 0) q = -q;
  return q;
}

std::vector<Polynomial> in_order(std::span<const Polynomial> polys, const MonomialOrder& order) {
  std::vector<Polynomial> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.with_order(order));
  return out;
}

/// Core reduction loop. `divisors` must already be stored in `order`.
Polynomial reduce_full(const Polynomial& f, const std::vector<const Polynomial*>& divisors,
                       const MonomialOrder& order, std::vector<std::vector<Term>>* quotients) {
  const Ring& ring = f.ring();
  const auto& domain = ring->coefficients();
  const bool field = domain.is_field();
  Workspace w(Descending{&order, ring->num_variables()});
  for (const auto& t : f.terms()) w.emplace(t.monomial, t.coeff.mpq());

  std::vector<Term> remainder;
  while (!w.empty()) {
    auto top = w.begin();
    const Monomial m = top->first;
    bool reduced = false;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
      const Polynomial& g = *divisors[k];
      const Term& lt = g.leading_term();
      if (!lt.monomial.divides(m)) continue;
      const Monomial mm = m.quotient(lt.monomial);
      mpq_class q;
      if (field) {
        q = top->second / lt.coeff.mpq();
        domain.reduce_in_place(q);
        w.erase(top);
        subtract_multiple(w, g, q, mm, domain, true);
      } else {
        const mpz_class qz = euclid_quotient(top->second.get_num(), lt.coeff.mpq().get_num());
        if (sgn(qz) == 0) continue;
        q = qz;
        subtract_multiple(w, g, q, mm, domain, false);
      }
      if (quotients) (*quotients)[k].push_back({Rational(q), mm});
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder.push_back({Rational(top->second), m});
      w.erase(top);
    }
  }
  return Polynomial::from_sorted_terms(ring, order, std::move(remainder));
}

void check_inputs(const Polynomial& f, std::span<const Polynomial> divisors) {
  for (const auto& g : divisors) {
    require_same_ring(f.ring(), g.ring(), "normal_form");
    if (g.is_zero()) throw UsageError("normal_form: zero divisor polynomial");
  }
}

}  // namespace

Division divide(const Polynomial& f, std::span<const Polynomial> divisors, const MonomialOrder& order) {
  check_inputs(f, divisors);
  const auto converted = in_order(divisors, order);
  std::vector<const Polynomial*> ptrs;
  for (const auto& g : converted) ptrs.push_back(&g);
  std::vector<std::vector<Term>> q(divisors.size());
  Polynomial r = reduce_full(f.with_order(order), ptrs, order, &q);
  Division out{{}, std::move(r)};
  for (auto& terms : q) out.quotients.push_back(Polynomial::from_terms(f.ring(), std::move(terms), order));
  return out;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> divisors, const MonomialOrder& order) {
  check_inputs(f, divisors);
  std::vector<Polynomial> converted;
  std::vector<const Polynomial*> ptrs;
  converted.reserve(divisors.size());
  for (const auto& g : divisors) {
    if (g.order() == order) {
      ptrs.push_back(&g);
    } else {
      converted.push_back(g.with_order(order));
      ptrs.push_back(&converted.back());
    }
  }
  return reduce_full(f.with_order(order), ptrs, order, nullptr);
}

Polynomial s_polynomial(const Polynomial& f_any, const Polynomial& g_any, const MonomialOrder& order) {
  require_same_ring(f_any.ring(), g_any.ring(), "s_polynomial");
  const Polynomial f = f_any.with_order(order);
  const Polynomial g = g_any.with_order(order);
  const Term& a = f.leading_term();
  const Term& b = g.leading_term();
  const Monomial m = a.monomial.lcm(b.monomial);
  const auto& domain = f.domain();
  if (domain.is_field()) {
    return f.times_term(domain.inv(a.coeff), m.quotient(a.monomial)) -
           g.times_term(domain.inv(b.coeff), m.quotient(b.monomial));
  }
  mpz_class c;
  mpz_lcm(c.get_mpz_t(), a.coeff.mpq().get_num().get_mpz_t(), b.coeff.mpq().get_num().get_mpz_t());
  const mpz_class ca = c / a.coeff.mpq().get_num();
  const mpz_class cb = c / b.coeff.mpq().get_num();
  return f.times_term(Rational(Integer(ca)), m.quotient(a.monomial)) -
         g.times_term(Rational(Integer(cb)), m.quotient(b.monomial));
}

Polynomial g_polynomial(const Polynomial& f_any, const Polynomial& g_any, const MonomialOrder& order) {
  require_same_ring(f_any.ring(), g_any.ring(), "g_polynomial");
  if (f_any.domain().is_field()) throw DomainError("G-polynomials are defined over ZZ only");
  const Polynomial f = f_any.with_order(order);
  const Polynomial g = g_any.with_order(order);
  const Term& a = f.leading_term();
  const Term& b = g.leading_term();
  const Monomial m = a.monomial.lcm(b.monomial);
  const auto eg = int_ext_gcd(a.coeff.numerator(), b.coeff.numerator());
  return f.times_term(Rational(eg.s), m.quotient(a.monomial)) + g.times_term(Rational(eg.t), m.quotient(b.monomial));
}

Polynomial GroebnerBasis::reduce(const Polynomial& f) const {
  require_same_ring(ring, f.ring(), "reduce");
  std::vector<const Polynomial*> ptrs;
  for (const auto& g : elements) ptrs.push_back(&g);
  return reduce_full(f.with_order(order), ptrs, order, nullptr);
}

namespace {

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  bool g_pair;  // ZZ: G-polynomial instead of S-polynomial
};

class BuchbergerState {
 public:
  BuchbergerState(Ring ring, const MonomialOrder& order, const GroebnerOptions& options)
      : ring_(std::move(ring)), order_(order), options_(options), n_(ring_->num_variables()),
        field_(ring_->coefficients().is_field()) {}

  void add_generator(const Polynomial& f) {
    Polynomial h = f.with_order(order_).normalized();
    if (h.is_zero()) return;
    insert(std::move(h));
  }

  void run() {
    std::size_t processed = 0;
    while (!pairs_.empty()) {
      const std::size_t pick = select_pair();
      const Pair p = pairs_[pick];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(pick));
      if (++processed > options_.max_pairs) {
        throw BudgetExceeded("Groebner basis: more than " + std::to_string(options_.max_pairs) + " critical pairs");
      }
      Polynomial spoly = p.g_pair ? g_polynomial(polys_[p.i], polys_[p.j], order_)
                                  : s_polynomial(polys_[p.i], polys_[p.j], order_);
      if (spoly.is_zero()) continue;
      Polynomial h = reduce_full(spoly, active_pointers(), order_, nullptr).normalized();
      if (h.is_zero()) continue;
      insert(std::move(h));
    }
  }

  GroebnerBasis finish() {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) idx.push_back(k);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const int c = order_.compare(polys_[a].leading_monomial(), polys_[b].leading_monomial(), n_);
      if (c != 0) return c < 0;
      return cmp(polys_[a].leading_coefficient().mpq(), polys_[b].leading_coefficient().mpq()) < 0;
    });

    std::vector<Polynomial> kept;
    for (auto k : idx) {
      const Term& lt = polys_[k].leading_term();
      const bool redundant = std::any_of(kept.begin(), kept.end(), [&](const Polynomial& h) {
        const Term& lh = h.leading_term();
        if (!lh.monomial.divides(lt.monomial)) return false;
        return field_ || mpz_divisible_p(lt.coeff.mpq().get_num().get_mpz_t(), lh.coeff.mpq().get_num().get_mpz_t());
      });
      if (!redundant) kept.push_back(polys_[k]);
    }

    for (std::size_t k = 0; k < kept.size(); ++k) {
      std::vector<const Polynomial*> others;
      for (std::size_t l = 0; l < kept.size(); ++l) {
        if (l != k) others.push_back(&kept[l]);
      }
      const Term lead = kept[k].leading_term();
      std::vector<Term> tail(kept[k].terms().begin() + 1, kept[k].terms().end());
      Polynomial rest = reduce_full(Polynomial::from_sorted_terms(ring_, order_, std::move(tail)), others, order_, nullptr);
      std::vector<Term> terms;
      terms.reserve(rest.size() + 1);
      terms.push_back(lead);
      terms.insert(terms.end(), rest.terms().begin(), rest.terms().end());
      kept[k] = Polynomial::from_sorted_terms(ring_, order_, std::move(terms));
    }

    return GroebnerBasis{ring_, order_, std::move(kept), true, !field_};
  }

 private:
  std::vector<const Polynomial*> active_pointers() const {
    std::vector<const Polynomial*> out;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) out.push_back(&polys_[k]);
    }
    return out;
  }

  std::size_t select_pair() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      const int c = order_.compare(a.lcm, b.lcm, n_);
      if (c < 0) {
        best = k;
      } else if (c == 0) {
        const auto ka = std::make_tuple(!a.g_pair, a.i, a.j);
        const auto kb = std::make_tuple(!b.g_pair, b.i, b.j);
        if (ka < kb) best = k;
      }
    }
    return best;
  }

  void insert(Polynomial h) {
    if (h.total_degree() > options_.max_degree) {
      throw BudgetExceeded("Groebner basis: degree " + std::to_string(h.total_degree()) + " exceeds the cap of " +
                           std::to_string(options_.max_degree));
    }
    polys_.push_back(std::move(h));
    active_.push_back(true);
    const std::size_t hi = polys_.size() - 1;
    if (field_) {
      update_field(hi);
    } else {
      update_integer(hi);
    }
  }

  /// Gebauer-Moeller installation of new pairs.
  void update_field(std::size_t hi) {
    const Monomial lh = polys_[hi].leading_monomial();
    struct Candidate {
      std::size_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Candidate> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active_[g]) continue;
      const Monomial lg = polys_[g].leading_monomial();
      c.push_back({g, lg.lcm(lh), lg.coprime(lh)});
    }

    std::vector<Candidate> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k].coprime) {
        d.push_back(c[k]);
        continue;
      }
      bool dominated = false;
      for (std::size_t l = k + 1; l < c.size() && !dominated; ++l) dominated = c[l].lcm.divides(c[k].lcm);
      for (std::size_t l = 0; l < d.size() && !dominated; ++l) dominated = d[l].lcm.divides(c[k].lcm);
      if (!dominated) d.push_back(c[k]);
    }

    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + d.size());
    for (const auto& p : pairs_) {
      const bool drop = lh.divides(p.lcm) && !(polys_[p.i].leading_monomial().lcm(lh) == p.lcm) &&
                        !(polys_[p.j].leading_monomial().lcm(lh) == p.lcm);
      if (!drop) kept.push_back(p);
    }
    for (const auto& e : d) {
      if (!e.coprime) kept.push_back({e.g, hi, e.lcm, false});
    }
    pairs_ = std::move(kept);

    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && lh.divides(polys_[g].leading_monomial())) active_[g] = false;
    }
  }

  void update_integer(std::size_t hi) {
    const Term& th = polys_[hi].leading_term();
    const mpz_class& ch = th.coeff.mpq().get_num();
    for (std::size_t g = 0; g < hi; ++g) {
      const Term& tg = polys_[g].leading_term();
      const mpz_class& cg = tg.coeff.mpq().get_num();
      const Monomial l = tg.monomial.lcm(th.monomial);
      mpz_class d;
      mpz_gcd(d.get_mpz_t(), cg.get_mpz_t(), ch.get_mpz_t());
      if (!(tg.monomial.coprime(th.monomial) && d == 1)) pairs_.push_back({g, hi, l, false});
      const bool divides = mpz_divisible_p(cg.get_mpz_t(), ch.get_mpz_t()) || mpz_divisible_p(ch.get_mpz_t(), cg.get_mpz_t());
      if (!divides) pairs_.push_back({g, hi, l, true});
    }
  }

  Ring ring_;
  MonomialOrder order_;
  GroebnerOptions options_;
  std::size_t n_;
  bool field_;
  std::vector<Polynomial> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

GroebnerBasis groebner_basis(std::span<const Polynomial> generators, const MonomialOrder& order,
                             const GroebnerOptions& options) {
  if (generators.empty()) throw UsageError("groebner_basis: no generators");
  const Ring& ring = generators.front().ring();
  bool any = false;
  for (const auto& g : generators) {
    require_same_ring(ring, g.ring(), "groebner_basis");
    any = any || !g.is_zero();
  }
  if (!any) throw UsageError("groebner_basis: all generators are zero");

  BuchbergerState state(ring, order, options);
  for (const auto& g : generators) state.add_generator(g);
  state.run();
  return state.finish();
}

bool is_groebner(const GroebnerBasis& basis) {
  const auto& elems = basis.elements;
  for (const auto& g : elems) {
    if (g.is_zero()) return false;
  }
  const bool field = basis.ring->coefficients().is_field();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (!basis.reduce(s_polynomial(elems[i], elems[j], basis.order)).is_zero()) return false;
      if (!field && !basis.reduce(g_polynomial(elems[i], elems[j], basis.order)).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace powerstab

#include "powerstab/stability.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "powerstab/errors.hpp"

namespace powerstab {

namespace {

bool is_base_element(const Polynomial& f, std::size_t x) { return !f.involves(x); }

/// Coefficient of X^deg(f) as a polynomial in the remaining variables.
Polynomial leading_form_in(const Polynomial& f, std::size_t x) {
  const auto deg = f.degree_in(x);
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    if (t.monomial[x] != deg) continue;
    Monomial m = t.monomial;
    m.set(x, 0);
    terms.push_back({t.coeff, m});
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

/// f rescaled to be monic in X, when its leading coefficient in X is a unit of R.
std::optional<Polynomial> monic_associate(const Polynomial& f, std::size_t x) {
  if (f.is_zero() || f.degree_in(x) == 0) return std::nullopt;
  const Polynomial lead = leading_form_in(f, x);
  if (!lead.is_constant() || !f.domain().is_unit(lead.constant_value())) return std::nullopt;
  return f.scaled(f.domain().inv(lead.constant_value()));
}

Ideal base_power(const ContractionResult& j, unsigned t, const GroebnerOptions& options) {
  return ideal_power(j.as_ideal(options), t);
}

PowerRecord compare_power(const ContractionResult& j, const ContractionResult& c, const GroebnerOptions& options) {
  PowerRecord rec;
  rec.t = c.power;
  rec.contraction = c.generators;
  const Ideal jt = c.power == 1 ? j.as_ideal(options) : base_power(j, c.power, options);
  rec.base_power = jt.basis().elements;
  const Ideal ct = c.as_ideal(options);
  rec.equal = ideal_contains(jt, ct) && ideal_contains(ct, jt);
  return rec;
}

std::string poly_list(const std::vector<Polynomial>& gens) {
  if (gens.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k > 0) out += ", ";
    out += format_poly(gens[k]);
  }
  return out + ")";
}

}  // namespace

std::size_t require_stability_ring(const Ring& ring) {
  const auto x = ring->main_variable();
  if (!x) throw UsageError("ring " + ring->to_string() + " has no main variable");
  if (!ring->free_variables().empty()) {
    throw UsageError("ring " + ring->to_string() + " has variables outside R and X");
  }
  return *x;
}

ContractionResult contract_power(const Ideal& ideal, unsigned t) {
  const std::size_t x = require_stability_ring(ideal.ring());
  if (t == 0) throw UsageError("contract_power: t must be at least 1");
  ContractionResult out;
  out.ring = ideal.ring();
  out.power = t;
  if (ideal.is_zero()) {
    if (ideal.ring()->coefficients().is_integer()) out.d = Integer(0);
    return out;
  }
  const Ideal power = t == 1 ? ideal : ideal_power(ideal, t);
  if (ideal.ring()->coefficients().is_integer()) {
    // A strong basis meets ZZ exactly in the constant element, if any.
    Integer d(0);
    for (const auto& g : power.basis().elements) {
      if (g.is_constant()) d = g.constant_value().numerator().abs();
    }
    out.d = d;
    if (!d.is_zero()) out.generators.push_back(Polynomial::constant(out.ring, Rational(d)));
    return out;
  }
  const std::size_t eliminated[] = {x};
  out.generators = eliminate(power, eliminated).generators();
  return out;
}

std::string Verdict::to_string() const {
  return (kind == Kind::StableUpTo ? "STABLE_UP_TO(" : "UNSTABLE_AT(") + std::to_string(t) + ")";
}

Verdict Verdict::parse(std::string_view text) {
  auto read = [&](std::string_view prefix, Kind kind) -> std::optional<Verdict> {
    if (text.size() <= prefix.size() + 1 || text.substr(0, prefix.size()) != prefix || text.back() != ')') return {};
    const auto digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) return {};
    return Verdict{kind, static_cast<unsigned>(std::stoul(std::string(digits)))};
  };
  if (auto v = read("STABLE_UP_TO(", Kind::StableUpTo)) return *v;
  if (auto v = read("UNSTABLE_AT(", Kind::UnstableAt)) return *v;
  throw ParseError("bad verdict '" + std::string(text) + "'", 0);
}

StabilityReport check_power_stable(const Ideal& ideal, unsigned T, unsigned jobs) {
  const std::size_t x = require_stability_ring(ideal.ring());
  if (T == 0) throw UsageError("check_power_stable: T must be at least 1");
  StabilityReport report{ideal, T, {}, {Verdict::Kind::StableUpTo, T}, std::nullopt, {}};
  const auto& options = ideal.options();

  std::vector<std::optional<ContractionResult>> contractions(T + 1);
  if (jobs > 1 && T > 1) {
    std::vector<std::exception_ptr> errors(T + 1);
    std::atomic<unsigned> next{1};
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < std::min(jobs, T); ++k) {
      pool.emplace_back([&] {
        for (unsigned t = next++; t <= T; t = next++) {
          try {
            contractions[t] = contract_power(ideal, t);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    // Surface the lowest failing power so errors match the sequential run.
    for (unsigned t = 1; t <= T; ++t) {
      if (errors[t]) std::rethrow_exception(errors[t]);
    }
  }
  auto get = [&](unsigned t) -> const ContractionResult& {
    if (!contractions[t]) contractions[t] = contract_power(ideal, t);
    return *contractions[t];
  };

  const ContractionResult& j = get(1);
  for (unsigned t = 1; t <= T; ++t) {
    const ContractionResult& c = get(t);
    report.records.push_back(compare_power(j, c, options));
    if (report.records.back().equal) continue;
    report.verdict = {Verdict::Kind::UnstableAt, t};
    const Ideal jt = base_power(j, t, options);
    for (const auto& g : c.generators) {
      if (is_base_element(g, x) && !member(g, jt)) {
        report.witness = g;
        break;
      }
    }
    break;
  }
  return report;
}

bool verify_witness(const Ideal& ideal, unsigned t, const Polynomial& witness) {
  const std::size_t x = require_stability_ring(ideal.ring());
  if (witness.involves(x)) return false;
  if (!member(witness, ideal_power(ideal, t))) return false;
  const auto j = contract_power(ideal, 1);
  return !member(witness, base_power(j, t, ideal.options()));
}

bool GradedCriterionReport::holds() const {
  return std::all_of(records.begin(), records.end(), [](const CriterionRecord& r) { return r.holds; });
}

std::optional<unsigned> GradedCriterionReport::first_failure() const {
  for (const auto& r : records) {
    if (!r.holds) return r.n;
  }
  return std::nullopt;
}

GradedCriterionReport graded_criterion(const Ideal& ideal, unsigned N) {
  require_stability_ring(ideal.ring());
  GradedCriterionReport report{ideal, N, {}};
  report.records.push_back({0, true, std::nullopt});
  if (N == 0) return report;
  const auto& options = ideal.options();
  const ContractionResult j = contract_power(ideal, 1);
  for (unsigned n = 1; n <= N; ++n) {
    CriterionRecord rec{n, true, std::nullopt};
    const Ideal jn = base_power(j, n, options);
    const Ideal next = contract_power(ideal, n + 1).as_ideal(options);
    const Ideal meet = intersect(jn, next);
    const Ideal jn1 = base_power(j, n + 1, options);
    for (const auto& g : meet.generators()) {
      if (!member(g, jn1)) {
        rec.holds = false;
        rec.witness = g;
        break;
      }
    }
    report.records.push_back(rec);
    if (!rec.holds) break;
  }
  return report;
}

std::optional<MonicCertificate> monic_certificate(const Ideal& ideal) {
  const std::size_t x = require_stability_ring(ideal.ring());
  std::vector<Polynomial> base;
  for (const auto& g : ideal.generators()) {
    if (is_base_element(g, x)) base.push_back(g);
  }
  for (const auto& g0 : ideal.generators()) {
    const auto monic = monic_associate(g0, x);
    if (!monic) continue;
    const Polynomial& f = *monic;
    std::vector<Polynomial> gens = base;
    gens.push_back(f);
    const Ideal candidate(ideal.ring(), gens, ideal.options());
    MonicCertificate cert{base, f, {}};
    bool ok = true;
    for (const auto& g : ideal.generators()) {
      if (is_base_element(g, x) || g == g0) continue;
      if (!member(g, candidate)) {
        ok = false;
        break;
      }
      cert.transcript.push_back(format_poly(g) + " in id(J, f)");
    }
    if (!ok) continue;
    cert.transcript.insert(cert.transcript.begin(),
                           "f = " + format_poly(f) + " monic of degree " + std::to_string(f.degree_in(x)) + " in " +
                               ideal.ring()->variable_name(x) + ", J = " + poly_list(base));
    return cert;
  }
  return std::nullopt;
}

Integer mccoy_annihilator(const Integer& d, const Polynomial& h) {
  if (d.is_zero()) return Integer(h.is_zero() ? 1 : 0);
  const mpz_class m = abs(d.mpz());
  mpz_class l = 1;
  for (const auto& t : h.terms()) {
    const mpz_class c = t.coeff.mpq().get_num();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), c.get_mpz_t());
    const mpz_class q = m / g;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_mpz_t());
  }
  return Integer(l);
}

std::optional<RegularImageCertificate> regular_image_certificate(const Ideal& ideal, std::string* reason) {
  require_stability_ring(ideal.ring());
  if (!ideal.ring()->coefficients().is_integer()) throw UsageError("regular-image certificate needs ZZ coefficients");
  auto fail = [&](std::string why) -> std::optional<RegularImageCertificate> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  const Integer d = *contract_power(ideal, 1).d;
  std::vector<Polynomial> candidates = ideal.generators();
  for (const auto& g : ideal.basis().elements) {
    if (std::none_of(candidates.begin(), candidates.end(), [&](const Polynomial& c) { return c == g; })) {
      candidates.push_back(g);
    }
  }
  std::optional<std::string> first_failure;
  for (const auto& h : candidates) {
    if (h.is_constant()) continue;
    std::vector<Polynomial> gens{h};
    if (!d.is_zero()) gens.insert(gens.begin(), Polynomial::constant(ideal.ring(), Rational(d)));
    if (!ideal_equal(Ideal(ideal.ring(), gens, ideal.options()), ideal)) continue;
    const Integer c = mccoy_annihilator(d, h);
    if (c == d.abs()) {
      RegularImageCertificate cert{d, h, c, {}};
      cert.transcript.push_back("I = id(" + d.to_string() + ", " + format_poly(h) + ")");
      cert.transcript.push_back("lcm of d/gcd(d, h_i) over coefficients = " + c.to_string());
      cert.transcript.push_back("no nonzero c mod " + d.to_string() + " annihilates h");
      return cert;
    }
    if (!first_failure) {
      first_failure = "c = " + c.to_string() + " annihilates " + format_poly(h) + " mod " + d.to_string();
    }
  }
  if (first_failure) return fail(*first_failure);
  return fail("no presentation I = id(d, h) among the generators and basis");
}

std::optional<ObstructionCertificate> primary_obstruction(const Ideal& prime, unsigned t,
                                                          std::vector<Polynomial> witnesses) {
  if (t == 0) throw UsageError("primary_obstruction: t must be at least 1");
  if (prime.is_zero() || member(Polynomial::constant(prime.ring(), Rational(1)), prime)) {
    throw UsageError("primary_obstruction: P must be a proper nonzero ideal");
  }
  if (witnesses.empty()) {
    for (std::size_t v = 0; v < prime.ring()->num_variables(); ++v) {
      witnesses.push_back(Polynomial::variable(prime.ring(), v));
    }
  }
  const Ideal pt = ideal_power(prime, t);
  for (const auto& w : witnesses) {
    require_same_ring(prime.ring(), w.ring(), "primary_obstruction");
    if (w.is_zero() || member(w, prime)) continue;
    const Ideal q_ideal = quotient(pt, w);
    for (const auto& q : q_ideal.generators()) {
      if (member(q, pt)) continue;
      ObstructionCertificate cert{w, q, t, false};
      cert.verified = member(w * q, pt) && !member(w, prime) && !member(q, pt);
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace powerstab

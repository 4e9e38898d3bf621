#include "powerstab/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace powerstab {

// ---------------------------------------------------------------- RingSpec

RingSpec::RingSpec(CoefficientDomain coefficients, std::vector<std::string> names, std::vector<VariableRole> roles)
    : coefficients_(coefficients), names_(std::move(names)), roles_(std::move(roles)) {
  if (names_.size() != roles_.size()) throw UsageError("ring: every variable needs a role");
  if (names_.size() > kMaxVariables) {
    throw UsageError("ring: at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
  std::set<std::string> seen;
  int mains = 0;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw UsageError("ring: empty variable name");
    if (!seen.insert(names_[i]).second) throw UsageError("ring: duplicate variable '" + names_[i] + "'");
    if (roles_[i] == VariableRole::Main) ++mains;
    if (roles_[i] == VariableRole::Base && coefficients_.is_integer()) {
      throw UsageError("ring: over ZZ the coefficient ring is ZZ itself; base variable '" + names_[i] +
                       "' is not allowed");
    }
  }
  if (mains > 1) throw UsageError("ring: at most one main variable");
}

Ring RingSpec::make(CoefficientDomain coefficients, std::vector<std::string> names, std::vector<VariableRole> roles) {
  return std::make_shared<const RingSpec>(coefficients, std::move(names), std::move(roles));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

std::vector<std::string> split_names(std::string_view group, std::string_view whole) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= group.size()) {
    const auto comma = group.find(',', start);
    const auto piece = trim(group.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!is_identifier(piece)) {
      throw UsageError("ring '" + std::string(whole) + "': bad variable name '" + std::string(piece) + "'");
    }
    out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Ring RingSpec::parse(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto open = whole.find('[');
  if (open == std::string_view::npos) throw UsageError("ring '" + std::string(whole) + "': expected '['");
  const std::string_view head = trim(whole.substr(0, open));

  CoefficientDomain domain = CoefficientDomain::integers();
  if (head == "ZZ") {
    domain = CoefficientDomain::integers();
  } else if (head == "QQ") {
    domain = CoefficientDomain::rationals();
  } else if ((head.starts_with("Fp(") || head.starts_with("GF(")) && head.ends_with(")")) {
    const auto digits = trim(head.substr(3, head.size() - 4));
    std::uint64_t p = 0;
    if (digits.empty() || digits.size() > 19 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw UsageError("ring '" + std::string(whole) + "': bad modulus");
    }
    p = std::stoull(std::string(digits));
    domain = CoefficientDomain::prime_field(p);
  } else {
    throw UsageError("ring '" + std::string(whole) + "': unknown coefficient domain '" + std::string(head) + "'");
  }

  std::vector<std::vector<std::string>> groups;
  std::size_t pos = open;
  while (pos < whole.size()) {
    if (whole[pos] != '[') throw UsageError("ring '" + std::string(whole) + "': expected '['");
    const auto close = whole.find(']', pos);
    if (close == std::string_view::npos) throw UsageError("ring '" + std::string(whole) + "': missing ']'");
    groups.push_back(split_names(whole.substr(pos + 1, close - pos - 1), whole));
    pos = close + 1;
    while (pos < whole.size() && std::isspace(static_cast<unsigned char>(whole[pos]))) ++pos;
  }

  std::vector<std::string> names;
  std::vector<VariableRole> roles;
  if (groups.size() == 1) {
    names = groups[0];
    const VariableRole others = domain.is_integer() ? VariableRole::Free : VariableRole::Base;
    roles.assign(names.size(), others);
    roles.back() = VariableRole::Main;
  } else if (groups.size() == 2) {
    if (groups[1].size() != 1) {
      throw UsageError("ring '" + std::string(whole) + "': the last bracket group must hold exactly one variable");
    }
    names = groups[0];
    roles.assign(names.size(), VariableRole::Base);
    names.push_back(groups[1][0]);
    roles.push_back(VariableRole::Main);
  } else {
    throw UsageError("ring '" + std::string(whole) + "': expected one or two bracket groups");
  }
  return make(domain, std::move(names), std::move(roles));
}

std::optional<std::size_t> RingSpec::main_variable() const {
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    if (roles_[i] == VariableRole::Main) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> RingSpec::base_variables() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    if (roles_[i] == VariableRole::Base) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> RingSpec::free_variables() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    if (roles_[i] == VariableRole::Free) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> RingSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t RingSpec::require_index(std::string_view name) const {
  if (auto idx = index_of(name)) return *idx;
  throw UsageError("unknown variable '" + std::string(name) + "' in ring " + to_string());
}

Ring RingSpec::with_auxiliary(std::string_view prefix) const {
  for (int k = 0;; ++k) {
    std::string candidate = std::string(prefix) + std::to_string(k);
    if (!index_of(candidate)) {
      auto names = names_;
      auto roles = roles_;
      names.push_back(std::move(candidate));
      roles.push_back(VariableRole::Free);
      return make(coefficients_, std::move(names), std::move(roles));
    }
  }
}

std::string RingSpec::to_string() const {
  std::string out = coefficients_.name();
  const auto main = main_variable();
  const auto base = base_variables();
  auto join = [&](const std::vector<std::size_t>& idx) {
    std::string s = "[";
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) s += ",";
      s += names_[idx[k]];
    }
    return s + "]";
  };
  if (!base.empty() && main) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (roles_[i] != VariableRole::Main) rest.push_back(i);
    }
    return out + join(rest) + "[" + names_[*main] + "]";
  }
  std::vector<std::size_t> all(names_.size());
  std::iota(all.begin(), all.end(), 0);
  // One group: keep the main variable last so the text parses back.
  if (main) {
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(*main));
    all.push_back(*main);
  }
  return out + join(all);
}

bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

void require_same_ring(const Ring& a, const Ring& b, std::string_view context) {
  if (!same_ring(a, b)) {
    throw RingMismatch(std::string(context) + ": ring mismatch (" + a->to_string() + " vs " + b->to_string() + ")");
  }
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t index, Exponent power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t index, Exponent value) {
  degree_ = degree_ - exp_.at(index) + value;
  exp_[index] = value;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exp_[i] > other.exp_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exp_[i] != 0 && other.exp_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial q;
  for (std::size_t i = 0; i < kMaxVariables; ++i) q.exp_[i] = exp_[i] - divisor.exp_[i];
  q.degree_ = degree_ - divisor.degree_;
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial l;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    l.exp_[i] = std::max(exp_[i], other.exp_[i]);
    l.degree_ += l.exp_[i];
  }
  return l;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.exp_[i] = a.exp_[i] + b.exp_[i];
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto e : exp_) h = (h ^ e) * 1099511628211ULL;
  return h;
}

// ----------------------------------------------------------- MonomialOrder

MonomialOrder MonomialOrder::grevlex() { return {Kind::Grevlex, Kind::Grevlex}; }

MonomialOrder MonomialOrder::lex() {
  MonomialOrder o(Kind::Lex, Kind::Lex);
  std::iota(o.priority_.begin(), o.priority_.end(), 0);
  return o;
}

MonomialOrder MonomialOrder::lex(std::span<const std::size_t> priority) {
  MonomialOrder o(Kind::Lex, Kind::Lex);
  std::array<bool, kMaxVariables> used{};
  std::size_t k = 0;
  for (auto v : priority) {
    if (v >= kMaxVariables || used[v]) throw UsageError("lex order: bad or repeated variable index");
    used[v] = true;
    o.priority_[k++] = static_cast<std::uint8_t>(v);
  }
  for (std::size_t v = 0; v < kMaxVariables; ++v) {
    if (!used[v]) o.priority_[k++] = static_cast<std::uint8_t>(v);
  }
  return o;
}

MonomialOrder MonomialOrder::block_elimination(std::span<const std::size_t> front, Kind inner) {
  if (inner == Kind::BlockElim) throw UsageError("block order: inner order must be lex or grevlex");
  MonomialOrder o(Kind::BlockElim, inner);
  for (auto v : front) {
    if (v >= kMaxVariables) throw UsageError("block order: bad variable index");
    o.front_mask_ |= 1U << v;
  }
  return o;
}

std::vector<std::size_t> MonomialOrder::front_block(std::size_t num_variables) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < num_variables; ++v) {
    if (in_front_block(v)) out.push_back(v);
  }
  return out;
}

int MonomialOrder::compare_block(const Monomial& a, const Monomial& b, std::size_t n, std::uint32_t mask,
                                 Kind how) const {
  if (how == Kind::Lex) {
    for (std::size_t i = 0; i < n; ++i) {
      if (((mask >> i) & 1U) == 0) continue;
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }
  std::uint64_t da = 0;
  std::uint64_t db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (((mask >> i) & 1U) == 0) continue;
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = n; i-- > 0;) {
    if (((mask >> i) & 1U) == 0) continue;
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b, std::size_t n) const {
  switch (kind_) {
    case Kind::Grevlex: {
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      for (std::size_t i = n; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      }
      return 0;
    }
    case Kind::Lex: {
      for (std::size_t k = 0; k < kMaxVariables; ++k) {
        const std::size_t i = priority_[k];
        if (i >= n) continue;
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      }
      return 0;
    }
    case Kind::BlockElim: {
      if (int c = compare_block(a, b, n, front_mask_, inner_); c != 0) return c;
      return compare_block(a, b, n, ~front_mask_, inner_);
    }
  }
  return 0;
}

std::string MonomialOrder::to_string(const RingSpec& ring) const {
  const std::size_t n = ring.num_variables();
  switch (kind_) {
    case Kind::Grevlex:
      return "grevlex";
    case Kind::Lex: {
      std::string s = "lex(";
      bool first = true;
      for (std::size_t k = 0; k < kMaxVariables; ++k) {
        if (priority_[k] >= n) continue;
        if (!first) s += ">";
        s += ring.variable_name(priority_[k]);
        first = false;
      }
      return s + ")";
    }
    case Kind::BlockElim: {
      std::string s = "elim({";
      bool first = true;
      for (auto v : front_block(n)) {
        if (!first) s += ",";
        s += ring.variable_name(v);
        first = false;
      }
      return s + "}, " + (inner_ == Kind::Lex ? "lex" : "grevlex") + ")";
    }
  }
  return "?";
}

// -------------------------------------------------------------- Polynomial

namespace {

/// Sorts descending under `order`, combines equal monomials, drops zeros.
std::vector<Term> canonicalize(std::vector<Term> terms, const RingSpec& ring, const MonomialOrder& order) {
  const std::size_t n = ring.num_variables();
  const auto& domain = ring.coefficients();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return order.compare(a.monomial, b.monomial, n) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff.mpq() += t.coeff.mpq();
    } else {
      if (!out.empty()) {
        domain.reduce_in_place(out.back().coeff.mpq());
        if (out.back().coeff.is_zero()) out.pop_back();
      }
      out.push_back(std::move(t));
    }
  }
  if (!out.empty()) {
    domain.reduce_in_place(out.back().coeff.mpq());
    if (out.back().coeff.is_zero()) out.pop_back();
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(Ring ring, MonomialOrder order) : ring_(std::move(ring)), order_(order) {}

Polynomial::Polynomial(Ring ring, MonomialOrder order, std::vector<Term> sorted_terms)
    : ring_(std::move(ring)), order_(order), terms_(std::move(sorted_terms)) {}

Polynomial Polynomial::from_terms(Ring ring, std::vector<Term> terms, MonomialOrder order) {
  const auto& domain = ring->coefficients();
  for (auto& t : terms) {
    if (!domain.is_field() && !t.coeff.is_integer()) {
      throw DomainError("coefficient " + t.coeff.to_string() + " is not in ZZ");
    }
    for (std::size_t i = ring->num_variables(); i < kMaxVariables; ++i) {
      if (t.monomial[i] != 0) throw RingMismatch("monomial uses a variable outside the ring");
    }
  }
  auto sorted = canonicalize(std::move(terms), *ring, order);
  return {std::move(ring), order, std::move(sorted)};
}

Polynomial Polynomial::from_sorted_terms(Ring ring, MonomialOrder order, std::vector<Term> terms) {
  return {std::move(ring), order, std::move(terms)};
}

Polynomial Polynomial::constant(Ring ring, const Rational& value) {
  std::vector<Term> t;
  t.push_back({value, Monomial{}});
  return from_terms(std::move(ring), std::move(t));
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
  if (index >= ring->num_variables()) throw UsageError("variable index out of range");
  std::vector<Term> t;
  t.push_back({Rational(1), Monomial::variable(index)});
  return from_terms(std::move(ring), std::move(t));
}

Polynomial Polynomial::variable(Ring ring, std::string_view name) {
  const auto idx = ring->require_index(name);
  return variable(std::move(ring), idx);
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_[0].coeff;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.front();
}

Polynomial Polynomial::with_order(const MonomialOrder& order) const {
  if (order == order_) return *this;
  auto terms = terms_;
  const std::size_t n = ring_->num_variables();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return order.compare(a.monomial, b.monomial, n) > 0;
  });
  return {ring_, order, std::move(terms)};
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

Monomial::Exponent Polynomial::degree_in(std::size_t var) const {
  Monomial::Exponent d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
  return d;
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.monomial[var] != 0; });
}

bool Polynomial::free_of(std::span<const std::size_t> vars) const {
  return std::none_of(vars.begin(), vars.end(), [&](std::size_t v) { return involves(v); });
}

Polynomial Polynomial::scaled(const Rational& c) const { return times_term(c, Monomial{}); }

Polynomial Polynomial::times_term(const Rational& c, const Monomial& m) const {
  const auto& domain = ring_->coefficients();
  Rational cc = domain.canonical(c);
  if (cc.is_zero()) return Polynomial(ring_, order_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    mpq_class v = t.coeff.mpq() * cc.mpq();
    domain.reduce_in_place(v);
    out.push_back({Rational(std::move(v)), t.monomial * m});
  }
  // Multiplication by a monomial preserves the order; no resort needed.
  return {ring_, order_, std::move(out)};
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, Rational(1)).with_order(order_);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::normalized() const {
  if (terms_.empty()) return *this;
  const auto& domain = ring_->coefficients();
  const Rational& lc = terms_.front().coeff;
  if (domain.is_field()) return lc.is_one() ? *this : scaled(domain.inv(lc));
  return lc.sign() < 0 ? -*this : *this;
}

namespace {

Polynomial merge(const Polynomial& f, const Polynomial& g_any, bool subtract) {
  require_same_ring(f.ring(), g_any.ring(), subtract ? "subtract" : "add");
  const Polynomial g = g_any.with_order(f.order());
  const auto& domain = f.domain();
  const std::size_t n = f.ring()->num_variables();
  const auto& a = f.terms();
  const auto& b = g.terms();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = 0;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = f.order().compare(a[i].monomial, b[j].monomial, n);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      Term t = b[j++];
      if (subtract) {
        t.coeff.mpq() = -t.coeff.mpq();
        domain.reduce_in_place(t.coeff.mpq());
      }
      out.push_back(std::move(t));
    } else {
      mpq_class v = a[i].coeff.mpq();
      if (subtract) v -= b[j].coeff.mpq(); else v += b[j].coeff.mpq();
      domain.reduce_in_place(v);
      if (sgn(v) != 0) out.push_back({Rational(std::move(v)), a[i].monomial});
      ++i;
      ++j;
    }
  }
  return Polynomial::from_sorted_terms(f.ring(), f.order(), std::move(out));
}

}  // namespace

Polynomial operator+(const Polynomial& f, const Polynomial& g) { return merge(f, g, false); }

Polynomial operator-(const Polynomial& f, const Polynomial& g) { return merge(f, g, true); }

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  require_same_ring(f.ring(), g.ring(), "multiply");
  if (f.is_zero() || g.is_zero()) return Polynomial(f.ring(), f.order());
  std::vector<Term> out;
  out.reserve(f.size() * g.size());
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      out.push_back({Rational(mpq_class(a.coeff.mpq() * b.coeff.mpq())), a.monomial * b.monomial});
    }
  }
  return {f.ring(), f.order(), canonicalize(std::move(out), *f.ring(), f.order())};
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

bool operator==(const Polynomial& f, const Polynomial& g) {
  if (!same_ring(f.ring_, g.ring_) || f.size() != g.size()) return false;
  const Polynomial h = g.with_order(f.order_);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f.terms_[i].monomial == h.terms_[i].monomial) || !(f.terms_[i].coeff == h.terms_[i].coeff)) return false;
  }
  return true;
}

Polynomial poly_arith(PolyOp op, const Polynomial& f, const Polynomial& g) {
  switch (op) {
    case PolyOp::Add: return f + g;
    case PolyOp::Sub: return f - g;
    case PolyOp::Mul: return f * g;
    case PolyOp::Neg: return -f;
  }
  throw UsageError("unknown polynomial operation");
}

Term leading_term(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw DomainError("leading term of the zero polynomial");
  const std::size_t n = f.ring()->num_variables();
  const Term* best = &f.terms().front();
  for (const auto& t : f.terms()) {
    if (order.compare(t.monomial, best->monomial, n) > 0) best = &t;
  }
  return *best;
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g_any) {
  require_same_ring(f.ring(), g_any.ring(), "exact_divide");
  if (g_any.is_zero()) throw DomainError("division by the zero polynomial");
  const Polynomial g = g_any.with_order(f.order());
  const auto& domain = f.domain();
  const Term& lg = g.leading_term();
  Polynomial r = f;
  std::vector<Term> quotient;
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!lg.monomial.divides(lr.monomial)) {
      throw NotDivisible(format_poly(g_any) + " does not divide " + format_poly(f));
    }
    Rational c;
    try {
      c = domain.divide_exact(lr.coeff, lg.coeff);
    } catch (const NotDivisible&) {
      throw NotDivisible(format_poly(g_any) + " does not divide " + format_poly(f));
    }
    const Monomial m = lr.monomial.quotient(lg.monomial);
    r = r - g.times_term(c, m);
    quotient.push_back({std::move(c), m});
  }
  return Polynomial::from_terms(f.ring(), std::move(quotient), f.order());
}

// -------------------------------------------------------- parse and format

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const Ring& ring, std::size_t offset)
      : text_(text), ring_(ring), offset_(offset) {}

  Polynomial parse_all() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    Polynomial p = parse_sum();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, offset_ + pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Polynomial parse_sum() {
    skip_ws();
    Polynomial acc(ring_);
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = peek() == '-';
      ++pos_;
    }
    Polynomial t = parse_term();
    acc = negate ? acc - t : acc + t;
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      skip_ws();
      bool neg = c == '-';
      if (peek() == '-' || peek() == '+') {  // unary sign at term head
        if (peek() == '-') neg = !neg;
        ++pos_;
      }
      Polynomial next = parse_term();
      acc = neg ? acc - next : acc + next;
    }
    return acc;
  }

  Polynomial parse_term() {
    skip_ws();
    bool prev_was_number = false;
    Polynomial acc = parse_factor(prev_was_number);
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * parse_factor(prev_was_number);
      } else if (prev_was_number && (std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '_')) {
        acc = acc * parse_factor(prev_was_number);  // "2X" and "3(X+1)"
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_') {
        fail("expected '*' between factors");
      } else {
        break;
      }
    }
    return acc;
  }

  std::uint32_t parse_exponent() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a non-negative integer exponent");
    std::uint64_t e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
      if (e > 1000000) fail("exponent too large");
    }
    return static_cast<std::uint32_t>(e);
  }

  Polynomial parse_factor(bool& was_number) {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      was_number = true;
      const std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      std::string lit(text_.substr(start, pos_ - start));
      skip_ws();
      if (peek() == '/') {
        const std::size_t slash = pos_;
        ++pos_;
        skip_ws();
        const std::size_t dstart = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (dstart == pos_) fail("expected a denominator");
        if (!ring_->coefficients().is_field()) {
          throw DomainError("coefficient " + lit + "/" + std::string(text_.substr(dstart, pos_ - dstart)) +
                            " is not in ZZ (position " + std::to_string(offset_ + slash) + ")");
        }
        const Integer den = Integer::parse(text_.substr(dstart, pos_ - dstart));
        if (den.is_zero()) fail("zero denominator");
        return Polynomial::constant(ring_, Rational(Integer::parse(lit), den));
      }
      return Polynomial::constant(ring_, Rational(Integer::parse(lit)));
    }
    was_number = false;
    if (c == '(') {
      ++pos_;
      Polynomial inner = parse_sum();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        inner = inner.pow(parse_exponent());
      }
      return inner;
    }
    if (c == '_') fail("identifiers starting with '_' are reserved");
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto idx = ring_->index_of(name);
      if (!idx) {
        throw ParseError("unknown variable '" + std::string(name) + "' for ring " + ring_->to_string(),
                         offset_ + start);
      }
      skip_ws();
      Monomial::Exponent e = 1;
      if (peek() == '^') {
        ++pos_;
        e = parse_exponent();
      }
      std::vector<Term> t;
      t.push_back({Rational(1), Monomial::variable(*idx, e)});
      return Polynomial::from_terms(ring_, std::move(t));
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

std::string format_monomial(const Monomial& m, const RingSpec& ring) {
  std::string out;
  for (std::size_t i = 0; i < ring.num_variables(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.variable_name(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

Polynomial parse_poly(std::string_view text, const Ring& ring) { return PolyParser(text, ring, 0).parse_all(); }

std::vector<Polynomial> parse_poly_list(std::string_view text, const Ring& ring) {
  std::vector<Polynomial> out;
  if (trim(text).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      const std::string_view piece = text.substr(start, i - start);
      if (trim(piece).empty()) throw ParseError("empty generator", start);
      out.push_back(PolyParser(piece, ring, start).parse_all());
      start = i + 1;
    }
  }
  return out;
}

std::string format_poly(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const auto& ring = *f.ring();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    const bool negative = t.coeff.sign() < 0;
    mpq_class mag = abs(t.coeff.mpq());
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = format_monomial(t.monomial, ring);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

Polynomial evaluate_map(const Polynomial& f, const std::map<std::string, Polynomial>& assignment) {
  const auto& ring = *f.ring();
  Ring target;
  for (std::size_t v = 0; v < ring.num_variables(); ++v) {
    if (!f.involves(v)) continue;
    const auto it = assignment.find(ring.variable_name(v));
    if (it == assignment.end()) throw UsageError("evaluate_map: no image for variable '" + ring.variable_name(v) + "'");
  }
  for (const auto& [name, image] : assignment) {
    if (!target) {
      target = image.ring();
    } else {
      require_same_ring(target, image.ring(), "evaluate_map targets");
    }
  }
  if (!target) return f;
  if (!(target->coefficients() == ring.coefficients())) {
    throw RingMismatch("evaluate_map: coefficient domains differ (" + ring.coefficients().name() + " vs " +
                       target->coefficients().name() + ")");
  }

  std::vector<std::vector<Polynomial>> powers(ring.num_variables());
  auto power_of = [&](std::size_t v, Monomial::Exponent e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * assignment.at(ring.variable_name(v)));
    return cache[e];
  };

  Polynomial result(target);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target, t.coeff);
    for (std::size_t v = 0; v < ring.num_variables(); ++v) {
      if (t.monomial[v] != 0) term = term * power_of(v, t.monomial[v]);
    }
    result = result + term;
  }
  return result;
}

Polynomial change_ring(const Polynomial& f, const Ring& target, MonomialOrder order) {
  const auto& src = *f.ring();
  if (!(src.coefficients() == target->coefficients())) {
    throw RingMismatch("change_ring: coefficient domains differ");
  }
  std::vector<std::optional<std::size_t>> map(src.num_variables());
  for (std::size_t v = 0; v < src.num_variables(); ++v) map[v] = target->index_of(src.variable_name(v));
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < src.num_variables(); ++v) {
      if (t.monomial[v] == 0) continue;
      if (!map[v]) {
        throw RingMismatch("change_ring: variable '" + src.variable_name(v) + "' does not exist in " +
                           target->to_string());
      }
      m.set(*map[v], t.monomial[v]);
    }
    terms.push_back({t.coeff, m});
  }
  return Polynomial::from_terms(target, std::move(terms), order);
}

}  // namespace powerstab

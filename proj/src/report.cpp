#include "powerstab/report.hpp"

#include <sstream>

#include "json_util.hpp"
#include "powerstab/errors.hpp"

namespace powerstab {

namespace detail {

Json ring_to_json(const Ring& ring) {
  Json j;
  const auto& k = ring->coefficients();
  if (k.kind() == CoefficientDomain::Kind::PrimeField) {
    j["coefficients"] = Json{{"Fp", k.modulus()}};
  } else {
    j["coefficients"] = k.name();
  }
  Json base = Json::array();
  for (auto v : ring->base_variables()) base.push_back(ring->variable_name(v));
  j["base_vars"] = base;
  if (const auto x = ring->main_variable()) {
    j["main_var"] = ring->variable_name(*x);
  } else {
    j["main_var"] = nullptr;
  }
  if (const auto free = ring->free_variables(); !free.empty()) {
    Json vars = Json::array();
    for (auto v : free) vars.push_back(ring->variable_name(v));
    j["free_vars"] = vars;
  }
  return j;
}

Ring ring_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coefficients")) throw ParseError("ring: missing coefficients", 0);
  const Json& c = j.at("coefficients");
  CoefficientDomain domain = CoefficientDomain::integers();
  if (c.is_object() && c.contains("Fp")) {
    domain = CoefficientDomain::prime_field(c.at("Fp").get<std::uint64_t>());
  } else if (c == "QQ") {
    domain = CoefficientDomain::rationals();
  } else if (c != "ZZ") {
    throw ParseError("ring: bad coefficients " + c.dump(), 0);
  }
  std::vector<std::string> names;
  std::vector<VariableRole> roles;
  for (const auto& n : j.value("base_vars", Json::array())) {
    names.push_back(n.get<std::string>());
    roles.push_back(VariableRole::Base);
  }
  for (const auto& n : j.value("free_vars", Json::array())) {
    names.push_back(n.get<std::string>());
    roles.push_back(VariableRole::Free);
  }
  if (j.contains("main_var") && !j.at("main_var").is_null()) {
    names.push_back(j.at("main_var").get<std::string>());
    roles.push_back(VariableRole::Main);
  }
  return RingSpec::make(domain, names, roles);
}

Json polys_to_json(const std::vector<Polynomial>& polys) {
  Json out = Json::array();
  for (const auto& p : polys) out.push_back(format_poly(p));
  return out;
}

std::vector<Polynomial> polys_from_json(const Json& j, const Ring& ring) {
  std::vector<Polynomial> out;
  for (const auto& s : j) out.push_back(parse_poly(s.get<std::string>(), ring));
  return out;
}

}  // namespace detail

using detail::Json;

namespace {

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

OutputFormat parse_format(std::string_view text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "json") return OutputFormat::Json;
  throw UsageError("unknown format '" + std::string(text) + "' (text or json)");
}

std::string verdict_summary(const StabilityReport& report) {
  if (!report.stable()) {
    std::string out = "unstable at t=" + std::to_string(report.verdict.t);
    if (report.witness) out += " (witness " + format_poly(*report.witness) + ")";
    return out;
  }
  if (!report.certificates.empty()) {
    return "certified stable (all t) by " + report.certificates.front() + " certificate; checked up to t=" +
           std::to_string(report.verdict.t);
  }
  return "stable up to t=" + std::to_string(report.verdict.t) + " (not certified for all t)";
}

std::string emit_report(const StabilityReport& report, OutputFormat format) {
  if (format == OutputFormat::Text) {
    std::ostringstream out;
    out << "ring: " << report.ideal.ring()->to_string() << "\n";
    out << "ideal: " << report.ideal.to_string() << "\n";
    for (const auto& r : report.records) {
      out << "t=" << r.t << ": I^t∩R = " << poly_list(r.contraction) << ", (I∩R)^t = " << poly_list(r.base_power)
          << (r.equal ? ", equal" : ", differ") << "\n";
    }
    out << "verdict: " << report.verdict.to_string() << "\n";
    if (report.witness) out << "witness: " << format_poly(*report.witness) << "\n";
    out << verdict_summary(report) << "\n";
    return out.str();
  }
  Json j;
  j["ideal"] = report.ideal.to_string();
  j["ring"] = detail::ring_to_json(report.ideal.ring());
  j["generators"] = detail::polys_to_json(report.ideal.generators());
  j["bound"] = report.bound;
  j["verdict"] = report.verdict.to_string();
  Json records = Json::array();
  for (const auto& r : report.records) {
    records.push_back(Json{{"t", r.t},
                           {"contraction", detail::polys_to_json(r.contraction)},
                           {"base_power", detail::polys_to_json(r.base_power)},
                           {"equal", r.equal}});
  }
  j["records"] = records;
  j["witness"] = report.witness ? Json(format_poly(*report.witness)) : Json(nullptr);
  j["certificates"] = report.certificates;
  if (!report.certificates.empty()) j["certificate"] = report.certificates.front();
  j["summary"] = verdict_summary(report);
  return j.dump(2) + "\n";
}

StabilityReport parse_report_json(std::string_view document) {
  Json j;
  try {
    j = Json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what(), e.byte);
  }
  try {
    const Ring ring = detail::ring_from_json(j.at("ring"));
    StabilityReport report{Ideal(ring, detail::polys_from_json(j.at("generators"), ring)),
                           j.at("bound").get<unsigned>(),
                           {},
                           Verdict::parse(j.at("verdict").get<std::string>()),
                           std::nullopt,
                           {}};
    for (const auto& r : j.at("records")) {
      report.records.push_back({r.at("t").get<unsigned>(), detail::polys_from_json(r.at("contraction"), ring),
                                detail::polys_from_json(r.at("base_power"), ring), r.at("equal").get<bool>()});
    }
    if (!j.at("witness").is_null()) report.witness = parse_poly(j.at("witness").get<std::string>(), ring);
    report.certificates = j.at("certificates").get<std::vector<std::string>>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what(), 0);
  }
}

bool reports_equivalent(const StabilityReport& a, const StabilityReport& b) {
  if (!same_ring(a.ideal.ring(), b.ideal.ring())) return false;
  if (a.ideal.generators() != b.ideal.generators()) return false;
  if (a.bound != b.bound || !(a.verdict == b.verdict) || a.certificates != b.certificates) return false;
  if (a.witness.has_value() != b.witness.has_value() || (a.witness && !(*a.witness == *b.witness))) return false;
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    const auto& x = a.records[k];
    const auto& y = b.records[k];
    if (x.t != y.t || x.equal != y.equal || x.contraction != y.contraction || x.base_power != y.base_power) return false;
  }
  return true;
}

std::string emit_criterion(const GradedCriterionReport& report, OutputFormat format) {
  const auto fail = report.first_failure();
  if (format == OutputFormat::Text) {
    std::ostringstream out;
    out << "ring: " << report.ideal.ring()->to_string() << "\n";
    out << "ideal: " << report.ideal.to_string() << "\n";
    for (const auto& r : report.records) {
      out << "n=" << r.n << ": " << (r.holds ? "holds" : "fails");
      if (r.witness) out << " (witness " << format_poly(*r.witness) << ")";
      out << "\n";
    }
    if (fail) {
      out << "criterion fails at n=" << *fail << "\n";
    } else {
      out << "criterion holds for n <= " << report.bound << "\n";
    }
    return out.str();
  }
  Json j;
  j["ideal"] = report.ideal.to_string();
  j["ring"] = detail::ring_to_json(report.ideal.ring());
  j["generators"] = detail::polys_to_json(report.ideal.generators());
  j["bound"] = report.bound;
  Json records = Json::array();
  for (const auto& r : report.records) {
    records.push_back(Json{{"n", r.n},
                           {"holds", r.holds},
                           {"witness", r.witness ? Json(format_poly(*r.witness)) : Json(nullptr)}});
  }
  j["records"] = records;
  j["holds"] = !fail.has_value();
  j["first_failure"] = fail ? Json(*fail) : Json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace powerstab

#include "powerstab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include "json_util.hpp"
#include "powerstab/corpus.hpp"
#include "powerstab/errors.hpp"
#include "powerstab/report.hpp"
#include "powerstab/stability.hpp"

namespace powerstab {

using detail::Json;

namespace {

struct Settings {
  std::string ring;
  std::string gens;
  std::string gens_file;
  std::string order = "grevlex";
  std::string format = "text";
  std::size_t max_pairs = GroebnerOptions{}.max_pairs;
  std::uint64_t max_degree = GroebnerOptions{}.max_degree;
  unsigned max_power = 4;
  unsigned power = 0;  // 0: verb default
  unsigned bound = 3;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string source, target, map;
  std::string poly;
  std::string vars;
  std::string witnesses;
  std::string name;
  std::vector<std::string> params;
  bool list = false;
  bool all = false;
  bool check = false;
};

std::string poly_list(const std::vector<Polynomial>& gens) {
  if (gens.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k > 0) out += ", ";
    out += format_poly(gens[k]);
  }
  return out + ")";
}

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

class Runner {
 public:
  Runner(Settings s, std::istream& in) : s_(std::move(s)), in_(in), format_(parse_format(s_.format)) {
    options_.max_pairs = s_.max_pairs;
    options_.max_degree = s_.max_degree;
  }

  int run(const std::string& verb) {
    if (verb == "gb") return gb();
    if (verb == "contract") return contract();
    if (verb == "check-stable") return check_stable();
    if (verb == "eliminate") return eliminate_verb();
    if (verb == "quotient" || verb == "saturate") return colon(verb == "saturate");
    if (verb == "kernel") return kernel();
    if (verb == "member") return member_verb();
    if (verb == "radical-member") return radical_verb();
    if (verb == "corpus") return corpus_verb();
    if (verb == "criterion") return criterion();
    if (verb == "certify") return certify();
    if (verb == "obstruct") return obstruct();
    throw UsageError("unknown verb '" + verb + "'");
  }

  std::string output() const { return out_.str(); }

 private:
  Ring ring() const {
    if (s_.ring.empty()) throw UsageError("--ring is required");
    return RingSpec::parse(s_.ring);
  }

  Ideal ideal(const Ring& r) {
    if (!s_.gens_file.empty()) {
      if (!s_.gens.empty()) throw UsageError("--gens and --gens-file are exclusive");
      return load_ideal_file(s_.gens_file, r, options_);
    }
    if (s_.gens.empty()) throw UsageError("--gens or --gens-file is required");
    if (s_.gens == "-") {
      std::stringstream buf;
      buf << in_.rdbuf();
      return load_ideal(buf.str(), r, options_);
    }
    return load_ideal(s_.gens, r, options_);
  }

  Polynomial poly(const Ring& r) const {
    if (s_.poly.empty()) throw UsageError("--poly is required");
    return parse_poly(s_.poly, r);
  }

  MonomialOrder order(const Ring& r) const {
    if (s_.order == "grevlex") return MonomialOrder::grevlex();
    if (s_.order == "lex") return MonomialOrder::lex();
    if (s_.order.rfind("block", 0) == 0) {
      std::vector<std::size_t> front;
      if (s_.order == "block") {
        const auto x = r->main_variable();
        if (!x) throw UsageError("--order block needs a main variable or block:VARS");
        front.push_back(*x);
      } else if (s_.order[5] == ':') {
        for (const auto& name : split_top_level(s_.order.substr(6))) front.push_back(r->require_index(strip(name)));
      } else {
        throw UsageError("bad --order '" + s_.order + "'");
      }
      return elimination_order(front);
    }
    throw UsageError("unknown --order '" + s_.order + "' (grevlex, lex, block, block:VARS)");
  }

  Json header(const Ideal& i) const {
    Json j;
    j["ring"] = detail::ring_to_json(i.ring());
    j["generators"] = detail::polys_to_json(i.generators());
    return j;
  }

  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  int gb() {
    const Ring r = ring();
    const Ideal i = ideal(r);
    const auto ord = order(r);
    const auto& basis = i.basis(ord);
    if (format_ == OutputFormat::Json) {
      Json j = header(i);
      j["order"] = ord.to_string(*r);
      j["basis"] = detail::polys_to_json(basis.elements);
      emit(j);
    } else {
      for (const auto& g : basis.elements) out_ << format_poly(g.with_order(ord)) << "\n";
    }
    return kExitOk;
  }

  int contract() {
    const Ring r = ring();
    const Ideal i = ideal(r);
    const unsigned t = s_.power == 0 ? 1 : s_.power;
    const auto c = contract_power(i, t);
    if (format_ == OutputFormat::Json) {
      Json j = header(i);
      j["power"] = t;
      j["contraction"] = detail::polys_to_json(c.generators);
      emit(j);
    } else {
      out_ << poly_list(c.generators) << "\n";
    }
    return kExitOk;
  }

  StabilityReport stability(const Ideal& i) const {
    StabilityReport report = check_power_stable(i, s_.max_power, s_.jobs);
    if (report.stable()) {
      if (monic_certificate(i)) report.certificates.push_back("monic");
      if (i.ring()->coefficients().is_integer() && regular_image_certificate(i)) {
        report.certificates.push_back("regular-image");
      }
    }
    return report;
  }

  int check_stable() {
    const Ring r = ring();
    const StabilityReport report = stability(ideal(r));
    out_ << emit_report(report, format_);
    return report.stable() ? kExitOk : kExitNegative;
  }

  int eliminate_verb() {
    const Ring r = ring();
    const Ideal i = ideal(r);
    if (s_.vars.empty()) throw UsageError("--vars is required");
    std::vector<std::string> names;
    for (const auto& v : split_top_level(s_.vars)) names.push_back(strip(v));
    const Ideal e = eliminate(i, names);
    if (format_ == OutputFormat::Json) {
      Json j = header(i);
      j["eliminated"] = names;
      j["result"] = detail::polys_to_json(e.generators());
      emit(j);
    } else {
      out_ << poly_list(e.generators()) << "\n";
    }
    return kExitOk;
  }

  int colon(bool saturated) {
    const Ring r = ring();
    const Ideal i = ideal(r);
    const Polynomial f = poly(r);
    const Ideal q = saturated ? saturate(i, f) : quotient(i, f);
    if (format_ == OutputFormat::Json) {
      Json j = header(i);
      j["poly"] = format_poly(f);
      j["result"] = detail::polys_to_json(q.generators());
      emit(j);
    } else {
      out_ << poly_list(q.generators()) << "\n";
    }
    return kExitOk;
  }

  int kernel() {
    if (s_.source.empty() || s_.target.empty() || s_.map.empty()) {
      throw UsageError("kernel needs --source, --target and --map");
    }
    RingMap m{RingSpec::parse(s_.source), RingSpec::parse(s_.target), {}};
    for (const auto& item : split_top_level(s_.map)) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--map entry '" + strip(item) + "' must look like V=poly");
      const std::string name = strip(item.substr(0, eq));
      if (!m.images.emplace(name, parse_poly(item.substr(eq + 1), m.target)).second) {
        throw UsageError("--map assigns '" + name + "' twice");
      }
    }
    const Ideal k = kernel_of_map(m, options_);
    if (format_ == OutputFormat::Json) {
      Json j;
      j["source"] = detail::ring_to_json(m.source);
      j["target"] = detail::ring_to_json(m.target);
      Json images = Json::object();
      for (const auto& v : m.source->variables()) images[v] = format_poly(m.images.at(v));
      j["map"] = images;
      j["kernel"] = detail::polys_to_json(k.generators());
      emit(j);
    } else {
      out_ << poly_list(k.generators()) << "\n";
    }
    return kExitOk;
  }

  int member_verb() {
    const Ring r = ring();
    const Ideal i = ideal(r);
    const Polynomial f = poly(r);
    const bool in = member(f, i);
    if (format_ == OutputFormat::Json) {
      Json j = header(i);
      j["poly"] = format_poly(f);
      j["member"] = in;
      emit(j);
    } else {
      out_ << (in ? "true" : "false") << "\n";
    }
    return kExitOk;
  }

  int radical_verb() {
    const Ring r = ring();
    const Ideal i = ideal(r);
    const Polynomial f = poly(r);
    const auto res = radical_member(f, i);
    if (format_ == OutputFormat::Json) {
      Json j = header(i);
      j["poly"] = format_poly(f);
      j["member"] = res.member;
      j["exponent"] = res.exponent ? Json(*res.exponent) : Json(nullptr);
      emit(j);
    } else {
      out_ << (res.member ? "true" : "false");
      if (res.exponent) out_ << " (exponent " << *res.exponent << ")";
      out_ << "\n";
    }
    return kExitOk;
  }

  int corpus_verb() {
    if (s_.list) {
      const auto entries = corpus_catalog();
      if (format_ == OutputFormat::Json) {
        Json j = Json::array();
        for (const auto& e : entries) j.push_back(Json{{"name", e.name}, {"params", e.params}, {"description", e.description}});
        emit(j);
      } else {
        for (const auto& e : entries) {
          out_ << e.name << (e.params.empty() ? "" : " " + e.params) << "\n    " << e.description << "\n";
        }
      }
      return kExitOk;
    }
    if (s_.all) return corpus_all();
    if (s_.name.empty()) throw UsageError("corpus needs a name, --list or --all");
    const CorpusItem item = corpus(s_.name, s_.params, s_.seed);
    auto ideals = expand(item);
    if (!s_.check) {
      if (format_ == OutputFormat::Json) {
        Json j = Json::array();
        for (const auto& [label, i] : ideals) {
          Json e = header(i);
          e = Json{{"label", label}, {"ring", e["ring"]}, {"generators", e["generators"]}};
          j.push_back(e);
        }
        emit(j);
      } else {
        for (const auto& [label, i] : ideals) {
          out_ << label << "\n  ring: " << i.ring()->to_string() << "\n  ideal: " << i.to_string() << "\n";
        }
      }
      return kExitOk;
    }
    return run_reports(ideals);
  }

  static std::vector<std::pair<std::string, Ideal>> expand(const CorpusItem& item) {
    std::vector<std::pair<std::string, Ideal>> out;
    if (!item.second) {
      out.emplace_back(item.label, item.ideal);
      return out;
    }
    out.emplace_back(item.label + " first", item.ideal);
    out.emplace_back(item.label + " second", *item.second);
    out.emplace_back(item.label + " intersection", intersect(item.ideal, *item.second));
    return out;
  }

  int corpus_all() {
    std::vector<std::pair<std::string, Ideal>> ideals;
    for (const auto& item : default_corpus()) {
      for (auto& e : expand(item)) ideals.push_back(std::move(e));
    }
    return run_reports(ideals);
  }

  int run_reports(const std::vector<std::pair<std::string, Ideal>>& ideals) {
    std::vector<StabilityReport> reports;
    if (s_.jobs > 1) {
      // Independent items run concurrently; output keeps input order.
      std::vector<std::optional<StabilityReport>> done(ideals.size());
      std::atomic<std::size_t> cursor{0};
      std::vector<std::exception_ptr> errors(ideals.size());
      std::vector<std::thread> pool;
      for (unsigned k = 0; k < std::min<std::size_t>(s_.jobs, ideals.size()); ++k) {
        pool.emplace_back([&] {
          for (std::size_t i = cursor++; i < ideals.size(); i = cursor++) {
            try {
              done[i] = stability(ideals[i].second);
            } catch (...) {
              errors[i] = std::current_exception();
            }
          }
        });
      }
      for (auto& t : pool) t.join();
      for (std::size_t i = 0; i < ideals.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        reports.push_back(std::move(*done[i]));
      }
    } else {
      for (const auto& [label, i] : ideals) reports.push_back(stability(i));
    }
    bool any_unstable = false;
    Json j = Json::array();
    for (std::size_t k = 0; k < reports.size(); ++k) {
      any_unstable = any_unstable || !reports[k].stable();
      if (format_ == OutputFormat::Json) {
        Json e = Json::parse(emit_report(reports[k], OutputFormat::Json));
        Json labelled = Json{{"label", ideals[k].first}};
        labelled.update(e);
        j.push_back(labelled);
      } else if (reports.size() == 1) {
        out_ << emit_report(reports[k], OutputFormat::Text);
      } else {
        out_ << ideals[k].first << ": " << verdict_summary(reports[k]) << "\n";
      }
    }
    if (format_ == OutputFormat::Json) emit(reports.size() == 1 ? j[0] : j);
    return any_unstable ? kExitNegative : kExitOk;
  }

  int criterion() {
    const Ring r = ring();
    const auto report = graded_criterion(ideal(r), s_.bound);
    out_ << emit_criterion(report, format_);
    return report.holds() ? kExitOk : kExitNegative;
  }

  int certify() {
    const Ring r = ring();
    const Ideal i = ideal(r);
    const auto monic = monic_certificate(i);
    std::optional<RegularImageCertificate> regular;
    std::string reason;
    if (r->coefficients().is_integer()) regular = regular_image_certificate(i, &reason);
    if (format_ == OutputFormat::Json) {
      Json j = header(i);
      Json certs = Json::array();
      if (monic) {
        certs.push_back(Json{{"kind", "monic"},
                             {"J", detail::polys_to_json(monic->base_generators)},
                             {"f", format_poly(monic->f)},
                             {"transcript", monic->transcript}});
      }
      if (regular) {
        certs.push_back(Json{{"kind", "regular-image"},
                             {"d", regular->d.to_string()},
                             {"h", format_poly(regular->h)},
                             {"transcript", regular->transcript}});
      }
      j["certificates"] = certs;
      if (!certs.empty()) j["certificate"] = certs[0]["kind"];
      if (r->coefficients().is_integer() && !regular) j["regular_image_reason"] = reason;
      emit(j);
    } else {
      if (monic) {
        out_ << "monic certificate: J = " << poly_list(monic->base_generators) << ", f = " << format_poly(monic->f)
             << "\n";
        for (const auto& line : monic->transcript) out_ << "  " << line << "\n";
      }
      if (regular) {
        out_ << "regular-image certificate: d = " << regular->d.to_string() << ", h = " << format_poly(regular->h)
             << "\n";
        for (const auto& line : regular->transcript) out_ << "  " << line << "\n";
      } else if (r->coefficients().is_integer()) {
        out_ << "no regular-image certificate: " << reason << "\n";
      }
      if (monic || regular) {
        out_ << "certified stable (all t)\n";
      } else {
        out_ << "no certificate found (this does not imply instability)\n";
      }
    }
    return kExitOk;
  }

  int obstruct() {
    const Ring r = ring();
    const Ideal p = ideal(r);
    const unsigned t = s_.power == 0 ? 2 : s_.power;
    std::vector<Polynomial> witnesses;
    if (!s_.witnesses.empty()) witnesses = parse_poly_list(s_.witnesses, r);
    const auto cert = primary_obstruction(p, t, witnesses);
    if (format_ == OutputFormat::Json) {
      Json j = header(p);
      j["power"] = t;
      if (cert) {
        j["obstruction"] = Json{{"w", format_poly(cert->w)}, {"q", format_poly(cert->q)}, {"verified", cert->verified}};
      } else {
        j["obstruction"] = nullptr;
      }
      j["note"] = "polynomial-ring verification";
      emit(j);
    } else if (cert) {
      out_ << "w = " << format_poly(cert->w) << "\nq = " << format_poly(cert->q) << "\n";
      out_ << "w*q in P^" << t << ", w not in P, q not in P^" << t << (cert->verified ? " (verified)" : " (NOT verified)")
           << "\n";
      out_ << "P^" << t << " is not P-primary (polynomial-ring verification)\n";
    } else {
      out_ << "no obstruction found among the witnesses (not a proof that P^" << t << " is primary)\n";
    }
    return cert ? kExitNegative : kExitOk;
  }

  Settings s_;
  std::istream& in_;
  OutputFormat format_;
  GroebnerOptions options_;
  std::ostringstream out_;
};

void add_common(CLI::App* cmd, Settings& s, bool with_gens = true) {
  cmd->add_option("--ring", s.ring, "ring, e.g. ZZ[X], QQ[Y][X], Fp(7)[Y][X]");
  if (with_gens) {
    cmd->add_option("--gens", s.gens, "comma-separated generators, or - for stdin");
    cmd->add_option("--gens-file", s.gens_file, "file with generators");
  }
  cmd->add_option("--format", s.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--max-pairs", s.max_pairs, "Groebner pair budget");
  cmd->add_option("--max-degree", s.max_degree, "Groebner degree budget");
}

}  // namespace

Ideal load_ideal(std::string_view text, const Ring& ring, const GroebnerOptions& options) {
  std::vector<Polynomial> gens;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    const std::string body = strip(line);
    if (!body.empty() && body[0] != '#') {
      try {
        for (auto& p : parse_poly_list(line, ring)) gens.push_back(std::move(p));
      } catch (const ParseError& e) {
        throw ParseError(e.detail() + " at line " + std::to_string(line_no) + ", column " +
                             std::to_string(e.position() + 1),
                         start + e.position(), true);
      }
    }
    start = end + 1;
  }
  if (gens.empty()) throw UsageError("empty generator list");
  return Ideal(ring, std::move(gens), options);
}

Ideal load_ideal_file(const std::string& path, const Ring& ring, const GroebnerOptions& options) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  return load_ideal(buf.str(), ring, options);
}

CommandResult run_command(const std::vector<std::string>& args) { return run_command(args, std::cin); }

CommandResult run_command(const std::vector<std::string>& args, std::istream& in) {
  Settings s;
  CLI::App app{"Power stability of ideals in R[X]", "ps"};
  app.require_subcommand(1);

  auto* gb = app.add_subcommand("gb", "reduced Groebner basis (strong over ZZ)");
  add_common(gb, s);
  gb->add_option("--order", s.order, "grevlex, lex, block or block:VARS");

  auto* contract = app.add_subcommand("contract", "generators of I^t ∩ R");
  add_common(contract, s);
  contract->add_option("--power", s.power, "t (default 1)");

  auto* check = app.add_subcommand("check-stable", "compare I^t ∩ R with (I ∩ R)^t for t <= T");
  add_common(check, s);
  check->add_option("--max-power", s.max_power, "T (default 4)")->check(CLI::PositiveNumber);
  check->add_option("--jobs", s.jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* elim = app.add_subcommand("eliminate", "I ∩ K[remaining variables]");
  add_common(elim, s);
  elim->add_option("--vars", s.vars, "comma-separated variables to eliminate");

  auto* quot = app.add_subcommand("quotient", "(I : f)");
  add_common(quot, s);
  quot->add_option("--poly", s.poly, "f");

  auto* sat = app.add_subcommand("saturate", "(I : f^inf)");
  add_common(sat, s);
  sat->add_option("--poly", s.poly, "f");

  auto* kern = app.add_subcommand("kernel", "kernel of a ring map");
  add_common(kern, s, false);
  kern->add_option("--source", s.source, "source ring");
  kern->add_option("--target", s.target, "target ring");
  kern->add_option("--map", s.map, "images, e.g. W=T^3,Y=T^4");

  auto* mem = app.add_subcommand("member", "f ∈ I");
  add_common(mem, s);
  mem->add_option("--poly", s.poly, "f");

  auto* rad = app.add_subcommand("radical-member", "f ∈ rad(I)");
  add_common(rad, s);
  rad->add_option("--poly", s.poly, "f");

  auto* corp = app.add_subcommand("corpus", "built-in example ideals");
  add_common(corp, s, false);
  corp->add_option("name", s.name, "entry name");
  corp->add_option("params", s.params, "entry parameters");
  corp->add_flag("--list", s.list, "list entries");
  corp->add_flag("--all", s.all, "run check-stable over the default corpus");
  corp->add_flag("--check", s.check, "run check-stable on the entry");
  corp->add_option("--seed", s.seed, "seed for random entries");
  corp->add_option("--max-power", s.max_power, "T (default 4)")->check(CLI::PositiveNumber);
  corp->add_option("--jobs", s.jobs, "parallel corpus items")->check(CLI::PositiveNumber);

  auto* crit = app.add_subcommand("criterion", "J^n ∩ (I^(n+1) ∩ R) = J^(n+1) for n <= N");
  add_common(crit, s);
  crit->add_option("N", s.bound, "N (default 3)");

  auto* cert = app.add_subcommand("certify", "monic and regular-image certificates");
  add_common(cert, s);

  auto* obs = app.add_subcommand("obstruct", "search w, q with w*q ∈ P^t, w ∉ P, q ∉ P^t");
  add_common(obs, s);
  obs->add_option("--power", s.power, "t (default 2)");
  obs->add_option("--witnesses", s.witnesses, "candidate w (default: ring variables)");

  std::vector<const char*> argv{"ps"};
  for (const auto& a : args) argv.push_back(a.c_str());

  CommandResult result;
  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    result.output = out.str();
    result.error = err.str();
    return result;
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    Runner runner(s, in);
    result.exit_code = runner.run(verb);
    result.output = runner.output();
  } catch (const BudgetExceeded& e) {
    result.exit_code = kExitBudget;
    result.error = std::string("budget exceeded: ") + e.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = kExitUsage;
    result.error = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = kExitUsage;
    result.error = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace powerstab

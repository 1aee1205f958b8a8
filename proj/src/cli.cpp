#include "ivp/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ivp/class_group.hpp"
#include "ivp/errors.hpp"
#include "ivp/factor.hpp"
#include "ivp/ring_io.hpp"

namespace ivp::cli {

using nlohmann::ordered_json;

namespace {

struct Options {
  std::string ring;
  std::string ring2;
  std::vector<std::string> polys;
  long precision = kDefaultPrecision;
  long max_precision = kDefaultMaxPrecision;
  Prime bound = 10000;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  std::string groups;
  bool have_groups = false;
};

ordered_json valuation_json(const Valuation& v) {
  return v.to_string();
}

ordered_json hits_json(const std::vector<ScanHit>& hits) {
  ordered_json a = ordered_json::array();
  for (const auto& h : hits) {
    ordered_json j;
    j["p"] = h.p;
    j["index"] = h.index;
    j["valuation"] = valuation_json(h.valuation);
    j["exact"] = h.valuation.is_exact();
    a.push_back(j);
  }
  return a;
}

ordered_json scan_json(const ScanReport& r) {
  ordered_json j;
  j["polynomial"] = to_string(r.g);
  j["bound"] = r.bound;
  j["hits"] = hits_json(r.hits);
  j["tail_hits"] = hits_json(r.tail_hits);
  j["hit_primes"] = r.hit_primes();
  j["tail_certificate"] = r.tail_certificate;
  j["finite_certified"] = r.finite_certified;
  j["tail_threshold"] = r.tail_threshold ? ordered_json(*r.tail_threshold) : ordered_json();
  j["tail_detail"] = r.tail_detail;
  j["shortcut_checks"] = r.shortcut_checks;
  ordered_json errs = ordered_json::array();
  for (const auto& [p, msg] : r.errors) errs.push_back({{"p", p}, {"message", msg}});
  j["errors"] = errs;
  return j;
}

ordered_json group_json(const FgAbelianGroup& g) {
  ordered_json j;
  j["group"] = g.to_string();
  j["rank"] = g.rank();
  ordered_json t = ordered_json::array();
  for (const auto& n : g.torsion()) t.push_back(n.get_str());
  j["torsion"] = t;
  return j;
}

ordered_json divisor_json(const Divisor& d) {
  ordered_json a = ordered_json::array();
  for (const auto& [label, k] : d.terms()) {
    a.push_back({{"label", to_string(label)}, {"exponent", k}});
  }
  return a;
}

ordered_json dedekind_json(const DedekindReport& r) {
  ordered_json j;
  j["verdict"] = r.verdict;
  j["certified"] = r.certified;
  j["polynomial_ring"] = r.polynomial_ring;
  j["finite_sets"] = r.finite_sets;
  ordered_json scans = ordered_json::array();
  for (const auto& s : r.scans) scans.push_back(scan_json(s));
  j["scans"] = scans;
  return j;
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool all_scalars(const ordered_json& a) {
  for (const auto& v : a) {
    if (v.is_structured()) return false;
  }
  return true;
}

void render(const ordered_json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      os << pad << key << ":\n";
      render(v, os, indent + 2);
    } else if (v.is_array() && all_scalars(v)) {
      os << pad << key << ":";
      if (v.empty()) os << " none";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : " ") << scalar_text(v[i]);
      os << "\n";
    } else if (v.is_array()) {
      os << pad << key << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << pad << "  [" << i << "]\n";
        if (v[i].is_object()) render(v[i], os, indent + 4);
        else os << pad << "    " << scalar_text(v[i]) << "\n";
      }
    } else {
      os << pad << key << ": " << scalar_text(v) << "\n";
    }
  }
}

struct Outcome {
  ordered_json body;
  int code = 0;
};

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o), prec_{o.precision, o.max_precision} {}

  Outcome construct() {
    auto groups = parse_group_spec(o_.groups);
    RingSpec ring = construct_ring(groups, o_.seed);
    VerifyReport v = verify_class_group(ring, groups);
    Outcome r;
    r.body["groups"] = to_group_spec(groups);
    r.body["seed"] = o_.seed;
    r.body["class_group"] = v.computed.to_string();
    r.body["verified"] = v.match;
    ordered_json alloc = ordered_json::array();
    for (const auto& b : v.blocks) {
      alloc.push_back({{"group", b.expected.to_string()}, {"primes", b.primes}});
    }
    r.body["allocation"] = alloc;
    if (!o_.out.empty()) {
      save_ring(ring, o_.out);
      r.body["ring_file"] = o_.out;
    } else {
      r.body["ring"] = to_json(ring);
    }
    r.code = v.match ? 0 : 1;
    return r;
  }

  Outcome member() {
    RingSpec ring = load();
    RationalPolynomial f = poly();
    MembershipResult m = membership(f, ring, prec_);
    Outcome r;
    r.body["polynomial"] = to_string(f);
    r.body["member"] = m.member;
    ordered_json ev = ordered_json::array();
    for (const auto& e : m.evidence) {
      ev.push_back({{"p", e.p},
                    {"index", e.index},
                    {"valuation", valuation_json(e.valuation)},
                    {"exact", e.valuation.is_exact()}});
    }
    r.body["evidence"] = ev;
    r.code = m.member ? 0 : 1;
    return r;
  }

  Outcome factor() {
    RationalPolynomial f = poly();
    Factorization fac = factor_over_Q(f);
    Outcome r;
    r.body["polynomial"] = to_string(f);
    r.body["unit"] = fac.unit.get_str();
    ordered_json fs = ordered_json::array();
    for (const auto& [q, m] : fac.factors) {
      fs.push_back({{"factor", to_string(q)}, {"multiplicity", m}});
    }
    r.body["factors"] = fs;
    if (!o_.ring.empty()) {
      Divisor d = factor_principal(f, load(), o_.bound, prec_);
      r.body["divisor"] = divisor_json(d);
    }
    return r;
  }

  Outcome klass() {
    RingSpec ring = load();
    FgAbelianGroup g = global_class_group(ring);
    Outcome r;
    r.body["class_group"] = g.to_string();
    r.body["structure"] = group_json(g);
    ordered_json locals = ordered_json::array();
    for (Prime p : ring.realized_primes()) {
      auto e = ramifications_at(ring, p);
      locals.push_back({{"p", p}, {"ramification", e}, {"group", local_class_group(e).to_string()}});
    }
    r.body["local"] = locals;
    if (o_.have_groups) {
      VerifyReport v = verify_class_group(ring, parse_group_spec(o_.groups));
      r.body["expected"] = v.expected.to_string();
      r.body["match"] = v.match;
      r.body["detail"] = v.detail;
      r.code = v.match ? 0 : 1;
    }
    if (!o_.polys.empty()) {
      RationalPolynomial f = poly();
      Divisor d = factor_principal(f, ring, o_.bound, prec_);
      ClassElement c = class_of_divisor(d, ring, o_.bound, prec_);
      r.body["polynomial"] = to_string(f);
      r.body["divisor"] = divisor_json(d);
      r.body["class"] = c.to_string();
      r.body["principal_class_zero"] = c.is_zero();
      if (!c.is_zero()) r.code = 1;
    }
    return r;
  }

  Outcome scan() {
    RingSpec ring = load();
    Outcome r;
    ordered_json scans = ordered_json::array();
    bool all = true;
    for (const auto& text : require_polys()) {
      ScanReport s = scan_primes(integer_poly(text), ring, o_.bound, prec_);
      all = all && s.finite_certified;
      scans.push_back(scan_json(s));
    }
    r.body["scans"] = scans;
    r.code = all ? 0 : 1;
    return r;
  }

  Outcome pid_check() {
    RingSpec ring = load();
    PidReport p = is_pid(ring, o_.bound, tests(), prec_);
    Outcome r;
    r.body["pid"] = p.pid;
    r.body["reason"] = p.reason;
    r.body["class_group"] = p.group.to_string();
    r.body["dedekind"] = dedekind_json(p.dedekind);
    r.code = p.pid ? 0 : 1;
    return r;
  }

  Outcome equal() {
    if (o_.ring2.empty()) throw Error("--ring2 is required");
    RingSpec a = load();
    RingSpec b = load_ring(o_.ring2);
    EqualityResult e = rings_equal(a, b, prec_);
    Outcome r;
    r.body["outcome"] = to_string(e.outcome);
    r.body["witness"] = e.witness ? ordered_json(*e.witness) : ordered_json();
    r.body["detail"] = e.detail;
    switch (e.outcome) {
      case EqualityResult::Outcome::Equal: r.code = 0; break;
      case EqualityResult::Outcome::NotEqual: r.code = 1; break;
      case EqualityResult::Outcome::Unsupported: r.code = 2; break;
    }
    return r;
  }

  Outcome report() {
    RingSpec ring = load();
    DedekindReport d = dedekind_report(ring, o_.bound, tests(), prec_);
    Outcome r;
    r.body["dedekind"] = dedekind_json(d);
    r.body["class_group"] = global_class_group(ring).to_string();
    ordered_json warnings = ordered_json::array();
    for (const auto& w : ring.validate(o_.precision)) warnings.push_back(w);
    r.body["warnings"] = warnings;
    r.code = d.certified ? 0 : 1;
    return r;
  }

 private:
  RingSpec load() const {
    if (o_.ring.empty()) throw Error("--ring is required");
    return load_ring(o_.ring);
  }

  const std::vector<std::string>& require_polys() const {
    if (o_.polys.empty()) throw Error("--poly is required");
    return o_.polys;
  }

  RationalPolynomial poly() const {
    const auto& ps = require_polys();
    if (ps.size() != 1) throw Error("exactly one --poly expected");
    return parse_poly(ps.front());
  }

  static IntegerPolynomial integer_poly(const std::string& text) {
    RationalPolynomial f = parse_poly(text);
    if (f.denominator() != 1) throw Error("'" + text + "' must have integer coefficients");
    return f.numerator();
  }

  std::vector<IntegerPolynomial> tests() const {
    if (o_.polys.empty()) return default_test_polynomials();
    std::vector<IntegerPolynomial> out;
    for (const auto& t : o_.polys) out.push_back(integer_poly(t));
    return out;
  }

  const Options& o_;
  PrecisionOptions prec_;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--ring", o.ring, "ring-spec file");
  sub->add_option("--poly", o.polys, "polynomial, repeatable");
  sub->add_option("--precision", o.precision, "initial precision in pi-adic digits")
      ->check(CLI::Range(1L, 1L << 20));
  sub->add_option("--max-precision", o.max_precision, "precision ceiling in pi-adic digits")
      ->check(CLI::Range(1L, 1L << 20));
  sub->add_option("--prime-bound", o.bound, "scan bound")->check(CLI::Range(Prime{1}, Prime{100000000}));
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--out", o.out, "output file");
  sub->add_option("--groups", o.groups, "group spec rank:m;torsion:n1,n2,...");
}

}  // namespace

void render_text(const ordered_json& report, std::ostream& out) { render(report, out, 0); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rings of integer-valued polynomials"};
  app.name("ivp");
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"construct", "build a ring with a prescribed class group"},
      {"member", "test membership of a polynomial"},
      {"factor", "factor over Q and, with --ring, into maximal ideals"},
      {"class", "class group, optionally verified or of a principal divisor"},
      {"scan", "primes where g has positive valuation"},
      {"pid-check", "principal ideal domain test"},
      {"equal", "compare two explicit ring specs"},
      {"report", "Dedekind report"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    if (name == "equal") sub->add_option("--ring2", o.ring2, "second ring-spec file");
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  o.have_groups = sub->count("--groups") > 0;
  if (o.max_precision < o.precision) {
    err << "error: --max-precision is below --precision\n";
    return 2;
  }
  if (command == "construct" && !o.have_groups) {
    err << "error: --groups is required\n";
    return 2;
  }

  Outcome result;
  try {
    Runner r(o);
    if (command == "construct") result = r.construct();
    else if (command == "member") result = r.member();
    else if (command == "factor") result = r.factor();
    else if (command == "class") result = r.klass();
    else if (command == "scan") result = r.scan();
    else if (command == "pid-check") result = r.pid_check();
    else if (command == "equal") result = r.equal();
    else result = r.report();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  ordered_json report;
  report["version"] = 1;
  report["command"] = command;
  for (const auto& [k, v] : result.body.items()) report[k] = v;
  report["assumptions"] = assumption_ledger();

  std::ostringstream text;
  if (o.format == "json") text << report.dump(2) << "\n";
  else render_text(report, text);

  // construct writes the ring to --out; the report goes to standard output.
  if (!o.out.empty() && command != "construct") {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write " << o.out << "\n";
      return 2;
    }
    f << text.str();
  } else {
    out << text.str();
  }
  return result.code;
}

}  // namespace ivp::cli

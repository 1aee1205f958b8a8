#include "ivp/ring_io.hpp"

#include <fstream>

#include "ivp/errors.hpp"

namespace ivp {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SpecFormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

mpz_class to_integer(const json& j, const char* what) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? mpz_class(std::to_string(j.get<std::uint64_t>()))
                                  : to_mpz(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw SpecFormatError(std::string("field '") + what + "' is not an integer");
}

std::int64_t to_small(const json& j, const char* what) {
  mpz_class v = to_integer(j, what);
  if (!v.fits_slong_p()) throw SpecFormatError(std::string("field '") + what + "' out of range");
  return v.get_si();
}

std::uint64_t to_seed(const json& j, const char* what) {
  mpz_class v = to_integer(j, what);
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw SpecFormatError(std::string("field '") + what + "' is not a 64-bit seed");
  }
  return std::stoull(v.get_str());
}

// Small values stay numbers; large ones become strings to survive readers
// limited to doubles.
ordered_json integer_json(const mpz_class& v) {
  if (v.fits_slong_p() && abs(v) < (mpz_class(1) << 53)) return v.get_si();
  return v.get_str();
}

}  // namespace

ordered_json to_json(const ElementSpec& spec) {
  return std::visit(
      [](const auto& s) -> ordered_json {
        using T = std::decay_t<decltype(s)>;
        ordered_json j;
        if constexpr (std::is_same_v<T, IntegerSource>) {
          j["kind"] = "int";
          j["value"] = integer_json(s.value);
        } else if constexpr (std::is_same_v<T, RationalSource>) {
          j["kind"] = "rat";
          j["num"] = integer_json(s.numerator);
          j["den"] = integer_json(s.denominator);
        } else if constexpr (std::is_same_v<T, StreamSource>) {
          j["kind"] = "stream";
          j["seed"] = s.seed;
          j["e"] = 1;
          if (s.first_digit) j["first_digit"] = integer_json(*s.first_digit);
        } else {
          j["kind"] = "eis_root";
          j["e"] = s.e;
          j["c_seed"] = s.c_seed;
          j["shift"] = integer_json(s.shift);
        }
        return j;
      },
      spec);
}

ElementSpec element_from_json(const json& j) {
  const std::string kind = field(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
  if (kind == "int") return IntegerSource{to_integer(field(j, "value"), "value")};
  if (kind == "rat") {
    mpz_class den = to_integer(field(j, "den"), "den");
    if (den == 0) throw SpecFormatError("zero denominator");
    return RationalSource{to_integer(field(j, "num"), "num"), den};
  }
  if (kind == "stream") {
    if (j.contains("e") && to_small(j.at("e"), "e") != 1) {
      throw SpecFormatError("stream elements have e = 1");
    }
    StreamSource s{to_seed(field(j, "seed"), "seed"), std::nullopt};
    if (j.contains("first_digit")) s.first_digit = to_integer(j.at("first_digit"), "first_digit");
    return s;
  }
  if (kind == "eis_root") {
    auto e = to_small(field(j, "e"), "e");
    if (e < 1 || e > 1024) throw SpecFormatError("eis_root needs 1 <= e <= 1024");
    return EisensteinRootSource{static_cast<int>(e), to_seed(field(j, "c_seed"), "c_seed"),
                                to_integer(field(j, "shift"), "shift")};
  }
  throw SpecFormatError("unknown element kind '" + kind + "'");
}

ordered_json to_json(const RingSpec& ring) {
  ordered_json j;
  j["version"] = kSpecVersion;
  j["explicit"] = ordered_json::array();
  for (const auto& [p, elems] : ring.explicit_part()) {
    ordered_json e;
    e["p"] = p;
    e["elements"] = ordered_json::array();
    for (const auto& s : elems) e["elements"].push_back(to_json(s));
    j["explicit"].push_back(e);
  }
  if (const auto& r = ring.rule()) {
    ordered_json rj;
    if (const auto* c = std::get_if<ChangRule>(&*r)) {
      rj["kind"] = "chang";
      rj["groups"] = ordered_json::array();
      for (const auto& g : c->groups) {
        ordered_json gj;
        gj["rank"] = g.rank;
        gj["torsion"] = g.torsion;
        rj["groups"].push_back(gj);
      }
      rj["seed"] = c->seed;
    } else {
      rj["kind"] = "const_int";
      rj["value"] = integer_json(std::get<ConstantRule>(*r).value);
    }
    j["rule"] = rj;
  }
  return j;
}

RingSpec ring_from_json(const json& j) {
  if (!j.is_object()) throw SpecFormatError("ring spec must be an object");
  if (to_small(field(j, "version"), "version") != kSpecVersion) {
    throw SpecFormatError("unsupported version");
  }
  RingSpec ring;
  if (j.contains("explicit")) {
    const json& ex = j.at("explicit");
    if (!ex.is_array()) throw SpecFormatError("'explicit' must be an array");
    for (const auto& entry : ex) {
      Prime p = to_small(field(entry, "p"), "p");
      if (ring.explicit_part().contains(p)) {
        throw SpecFormatError("prime " + std::to_string(p) + " listed twice");
      }
      const json& el = field(entry, "elements");
      if (!el.is_array()) throw SpecFormatError("'elements' must be an array");
      std::vector<ElementSpec> elems;
      for (const auto& e : el) elems.push_back(element_from_json(e));
      ring.set_explicit(p, std::move(elems));
    }
  }
  if (j.contains("rule") && !j.at("rule").is_null()) {
    const json& r = j.at("rule");
    const std::string kind = field(r, "kind").is_string() ? r.at("kind").get<std::string>() : "";
    if (kind == "chang") {
      ChangRule rule;
      rule.seed = r.contains("seed") ? to_seed(r.at("seed"), "seed") : 0;
      const json& groups = field(r, "groups");
      if (!groups.is_array()) throw SpecFormatError("'groups' must be an array");
      for (const auto& g : groups) {
        GroupSummand s;
        s.rank = to_small(field(g, "rank"), "rank");
        if (g.contains("torsion")) {
          if (!g.at("torsion").is_array()) throw SpecFormatError("'torsion' must be an array");
          for (const auto& t : g.at("torsion")) s.torsion.push_back(to_small(t, "torsion"));
        }
        rule.groups.push_back(std::move(s));
      }
      ring.set_rule(std::move(rule));
    } else if (kind == "const_int") {
      ring.set_rule(ConstantRule{to_integer(field(r, "value"), "value")});
    } else {
      throw SpecFormatError("unknown rule kind '" + kind + "'");
    }
  }
  return ring;
}

RingSpec load_ring(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecFormatError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SpecFormatError(path + ": " + e.what());
  }
  return ring_from_json(j);
}

void save_ring(const RingSpec& ring, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(ring).dump(2) << "\n";
}

}  // namespace ivp

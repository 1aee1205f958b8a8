#include "ivp/class_group.hpp"

#include <algorithm>
#include <sstream>

#include "ivp/errors.hpp"
#include "ivp/snf.hpp"

namespace ivp {

FgAbelianGroup::FgAbelianGroup(long rank, std::vector<mpz_class> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
  if (rank_ < 0) throw InvalidTorsionChainError("rank must be nonnegative");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) {
      throw InvalidTorsionChainError("torsion factor " + torsion_[i].get_str() + " is not >= 2");
    }
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0) {
      throw InvalidTorsionChainError(torsion_[i - 1].get_str() + " does not divide " +
                                     torsion_[i].get_str());
    }
  }
}

FgAbelianGroup FgAbelianGroup::from_cyclic(long rank, const std::vector<mpz_class>& orders) {
  std::vector<mpz_class> finite;
  for (const auto& o : orders) {
    if (o == 0) ++rank;
    else if (abs(o) > 1) finite.push_back(abs(o));
  }
  IntegerMatrix d(finite.size(), finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) d(i, i) = finite[i];
  std::vector<mpz_class> chain;
  for (const auto& v : smith_normal_form(d).invariants()) {
    if (v > 1) chain.push_back(v);
  }
  return FgAbelianGroup(rank, std::move(chain));
}

FgAbelianGroup FgAbelianGroup::direct_sum(const FgAbelianGroup& other) const {
  std::vector<mpz_class> orders = torsion_;
  orders.insert(orders.end(), other.torsion_.begin(), other.torsion_.end());
  return from_cyclic(rank_ + other.rank_, orders);
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::vector<std::string> parts;
  if (rank_ == 1) parts.push_back("Z");
  else if (rank_ > 1) parts.push_back("Z^" + std::to_string(rank_));
  for (const auto& t : torsion_) parts.push_back("Z/" + t.get_str());
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " x ") + p;
  return out;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

long parse_long(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 12) {
    throw SpecFormatError("expected a nonnegative integer, got '" + s + "'");
  }
  return std::stol(s);
}

}  // namespace

std::vector<GroupSummand> parse_group_spec(std::string_view text) {
  std::vector<GroupSummand> out;
  bool have_torsion = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string item = trim(text.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw SpecFormatError("expected key:value in '" + item + "'");
    std::string key = trim(item.substr(0, colon));
    std::string value = trim(item.substr(colon + 1));
    if (key == "rank") {
      out.push_back(GroupSummand{parse_long(value), {}});
      have_torsion = false;
    } else if (key == "torsion") {
      if (out.empty()) throw SpecFormatError("torsion given before rank");
      if (have_torsion) throw SpecFormatError("torsion given twice for one summand");
      have_torsion = true;
      std::size_t s = 0;
      while (!value.empty() && s <= value.size()) {
        std::size_t e = value.find(',', s);
        if (e == std::string::npos) e = value.size();
        out.back().torsion.push_back(parse_long(trim(std::string_view(value).substr(s, e - s))));
        s = e + 1;
      }
    } else {
      throw SpecFormatError("unknown key '" + key + "'");
    }
  }
  for (const auto& g : out) group_of(g);
  return out;
}

std::string to_group_spec(const std::vector<GroupSummand>& groups) {
  std::string out;
  for (const auto& g : groups) {
    if (!out.empty()) out += ";";
    out += "rank:" + std::to_string(g.rank) + ";torsion:";
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
      out += (i ? "," : "") + std::to_string(g.torsion[i]);
    }
  }
  return out;
}

FgAbelianGroup group_of(const GroupSummand& g) {
  std::vector<mpz_class> t(g.torsion.begin(), g.torsion.end());
  return FgAbelianGroup(g.rank, std::move(t));
}

FgAbelianGroup group_of(const std::vector<GroupSummand>& groups) {
  FgAbelianGroup out;
  for (const auto& g : groups) out = out.direct_sum(group_of(g));
  return out;
}

FgAbelianGroup local_class_group(const std::vector<int>& ramifications) {
  if (ramifications.empty()) return {};
  IntegerMatrix a(1, ramifications.size());
  for (std::size_t i = 0; i < ramifications.size(); ++i) a(0, i) = ramifications[i];
  auto inv = smith_normal_form(a).invariants();
  return FgAbelianGroup::from_cyclic(static_cast<long>(ramifications.size()) - 1, inv);
}

std::vector<int> ramifications_at(const RingSpec& ring, Prime p) {
  std::vector<int> out;
  for (const auto& s : ring.elements_at(p)) out.push_back(ramification(s));
  return out;
}

FgAbelianGroup global_class_group(const RingSpec& ring) {
  std::vector<std::vector<int>> blocks;
  std::size_t cols = 0;
  for (Prime p : ring.realized_primes()) {
    auto e = ramifications_at(ring, p);
    if (e.empty()) continue;
    cols += e.size();
    blocks.push_back(std::move(e));
  }
  IntegerMatrix rel(blocks.size(), cols);
  std::size_t c = 0;
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    for (int e : blocks[r]) rel(r, c++) = e;
  }
  auto inv = smith_normal_form(rel).invariants();
  return FgAbelianGroup::from_cyclic(static_cast<long>(cols - inv.size()), inv);
}

std::string ClassElement::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, y] : coordinates) {
    os << (first ? "" : ", ") << p << ": (";
    for (std::size_t i = 0; i < y.size(); ++i) os << (i ? ", " : "") << y[i].get_str();
    os << ")";
    first = false;
  }
  return os.str();
}

namespace {

std::vector<mpz_class> canonical_coordinates(const std::vector<int>& e,
                                             const std::vector<mpz_class>& x) {
  IntegerMatrix a(1, e.size());
  for (std::size_t i = 0; i < e.size(); ++i) a(0, i) = e[i];
  SnfResult snf = smith_normal_form(a);
  const mpz_class g = snf.S(0, 0);
  std::vector<mpz_class> y(e.size(), 0);
  for (std::size_t j = 0; j < e.size(); ++j)
    for (std::size_t i = 0; i < e.size(); ++i) y[j] += snf.V(i, j) * x[i];
  if (g == 1) {
    y.erase(y.begin());
  } else {
    y[0] = mod(y[0], g);
  }
  return y;
}

}  // namespace

ClassElement class_of_divisor(const Divisor& d, const RingSpec& ring, Prime bound,
                              const PrecisionOptions& options) {
  std::map<Prime, std::vector<mpz_class>> unitary;
  auto add = [&](Prime p, std::size_t index, long k) {
    auto& x = unitary[p];
    if (x.empty()) x.assign(ring.elements_at(p).size(), 0);
    if (index >= x.size()) {
      throw Error("label M(" + std::to_string(p) + "," + std::to_string(index) +
                  ") does not name an element of the ring");
    }
    x[index] += k;
  };
  for (const auto& [label, m] : d.terms()) {
    if (const auto* u = std::get_if<UnitaryLabel>(&label)) {
      add(u->p, u->index, m);
      continue;
    }
    const auto& q = std::get<NonUnitaryLabel>(label).q;
    ScanReport rep = scan_primes(q, ring, bound, options);
    if (!rep.finite_certified) {
      throw TailUncertifiedError("class of P(" + to_string(q) + ") needs " + rep.tail_detail);
    }
    for (const auto* hits : {&rep.hits, &rep.tail_hits}) {
      for (const auto& h : *hits) {
        if (!h.valuation.is_exact()) {
          throw PrecisionExhaustedError("valuation of " + to_string(q) + " at " +
                                            std::to_string(h.p) + " is not visible",
                                        h.valuation.pi_order(), h.valuation.ramification());
        }
        add(h.p, h.index, -m * h.valuation.pi_order());
      }
    }
  }
  ClassElement out;
  for (const auto& [p, x] : unitary) {
    auto y = canonical_coordinates(ramifications_at(ring, p), x);
    if (std::any_of(y.begin(), y.end(), [](const mpz_class& v) { return v != 0; })) {
      out.coordinates[p] = std::move(y);
    }
  }
  return out;
}

PidReport is_pid(const RingSpec& ring, Prime bound, const std::vector<IntegerPolynomial>& tests,
                 const PrecisionOptions& options) {
  PidReport r;
  r.group = global_class_group(ring);
  r.dedekind = dedekind_report(ring, bound, tests, options);
  for (Prime p : ring.realized_primes()) {
    auto e = ramifications_at(ring, p);
    if (e.size() > 1) {
      r.reason = "E_" + std::to_string(p) + " has " + std::to_string(e.size()) + " elements";
      return r;
    }
    if (e.size() == 1 && e[0] != 1) {
      r.reason = "E_" + std::to_string(p) + " has an element with e = " + std::to_string(e[0]);
      return r;
    }
  }
  if (!r.dedekind.certified) {
    r.reason = "factorizability not certified: " + r.dedekind.verdict;
    return r;
  }
  r.pid = true;
  r.reason = "every E_p has at most one unramified element";
  return r;
}

RingSpec construct_ring(const std::vector<GroupSummand>& groups, std::uint64_t seed) {
  for (const auto& g : groups) group_of(g);
  RingSpec ring;
  if (groups.empty()) return ring;
  ring.set_rule(ChangRule{groups, seed});
  return ring;
}

VerifyReport verify_class_group(const RingSpec& ring, const std::vector<GroupSummand>& groups) {
  VerifyReport r;
  r.expected = group_of(groups);
  r.computed = global_class_group(ring);
  r.match = r.expected == r.computed;
  if (ring.rule()) {
    if (const auto* chang = std::get_if<ChangRule>(&*ring.rule())) {
      auto alloc = ring.group_allocation();
      for (std::size_t i = 0; i < chang->groups.size(); ++i) {
        BlockCheck b;
        b.index = i;
        b.primes = alloc[i];
        b.expected = group_of(chang->groups[i]);
        for (Prime p : b.primes) b.computed = b.computed.direct_sum(local_class_group(ramifications_at(ring, p)));
        b.match = b.expected == b.computed;
        r.match = r.match && b.match;
        r.blocks.push_back(std::move(b));
      }
    }
  }
  if (r.match) {
    r.detail = "class group " + r.computed.to_string();
  } else if (r.expected != r.computed) {
    r.detail = "expected " + r.expected.to_string() + ", computed " + r.computed.to_string();
  } else {
    for (const auto& b : r.blocks) {
      if (b.match) continue;
      r.detail = "group " + std::to_string(b.index) + ": expected " + b.expected.to_string() +
                 ", computed " + b.computed.to_string();
      break;
    }
  }
  return r;
}

}  // namespace ivp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "ivp/errors.hpp"
#include "ivp/ring.hpp"
#include "ivp/ring_io.hpp"
#include "oracles.hpp"

using namespace ivp;
using oracle::trial_valuation;

namespace {

RingSpec chang(std::vector<GroupSummand> groups, std::uint64_t seed = 7) {
  RingSpec r;
  r.set_rule(ChangRule{std::move(groups), seed});
  return r;
}

RingSpec explicit_ring(std::vector<std::pair<Prime, std::vector<ElementSpec>>> entries) {
  RingSpec r;
  for (auto& [p, e] : entries) r.set_explicit(p, std::move(e));
  return r;
}

IntegerPolynomial random_poly(std::mt19937_64& rng, int max_degree, long range) {
  std::vector<mpz_class> c;
  int d = static_cast<int>(rng() % (max_degree + 1));
  for (int i = 0; i <= d; ++i) c.emplace_back(static_cast<long>(rng() % (2 * range + 1)) - range);
  return IntegerPolynomial(c);
}

}  // namespace

TEST_CASE("log shift") {
  CHECK(log_shift(2) == 1);
  CHECK(log_shift(3) == 1);
  CHECK(log_shift(7) == 1);
  CHECK(log_shift(8) == 2);
  CHECK(log_shift(20) == 2);
  CHECK(log_shift(21) == 3);
  for (Prime p : primes_up_to(100000)) {
    CHECK(log_shift(p) == oracle::shift(p));
    CHECK(log_shift(p) % p != 0);
  }
}

TEST_CASE("chang rule allocation") {
  auto r = chang({{1, {}}, {0, {2, 4}}, {2, {3}}});
  auto alloc = r.group_allocation();
  REQUIRE(alloc.size() == 3);
  CHECK(alloc[0] == std::vector<Prime>{2});
  CHECK(alloc[1] == std::vector<Prime>{3, 5, 7});
  CHECK(alloc[2] == std::vector<Prime>{11, 13});
  CHECK(r.elements_at(2).size() == 2);
  CHECK(r.elements_at(3).size() == 1);
  CHECK(ramification(r.elements_at(5)[0]) == 2);
  CHECK(ramification(r.elements_at(7)[0]) == 4);
  CHECK(r.elements_at(11).size() == 3);
  CHECK(ramification(r.elements_at(13)[0]) == 3);
  CHECK(r.elements_at(17).size() == 1);
  CHECK(r.realized_primes() == std::vector<Prime>{2, 3, 5, 7, 11, 13});
  for (Prime p : {2, 5, 7, 11, 13, 17, 101, 9973}) {
    for (const auto& s : r.elements_at(p)) {
      CHECK(residue(s, p) == log_shift(p));
      CHECK(PadicElement::materialize(s, p, 16).residue() == log_shift(p));
    }
  }
  CHECK_THROWS_AS(chang({{0, {2, 3}}}), InvalidTorsionChainError);
  CHECK_THROWS_AS(chang({{0, {1}}}), InvalidTorsionChainError);
  CHECK(r.validate(64).empty());
}

TEST_CASE("explicit entries override the rule") {
  auto r = chang({{0, {2}}});
  r.set_explicit(3, {IntegerSource{4}});
  CHECK(std::holds_alternative<IntegerSource>(r.elements_at(3)[0]));
  CHECK_FALSE(r.is_rule_prime(3));
  CHECK(r.is_rule_prime(5));
  CHECK_THROWS_AS(r.set_explicit(4, {}), NotPrimeError);
}

TEST_CASE("membership examples") {
  auto r = explicit_ring({{2, {StreamSource{5, std::nullopt}}}});
  CHECK(membership(parse_poly("(X^2 - X)/2"), r).member);
  auto half = membership(parse_poly("1/2"), r);
  CHECK_FALSE(half.member);
  REQUIRE(half.evidence.size() == 1);
  CHECK(half.evidence[0].valuation == Valuation::exact(-1, 1));
  auto r5 = explicit_ring({{5, {IntegerSource{2}}}});
  auto m = membership(parse_poly("(X^2 + 1)/5"), r5);
  CHECK(m.member);
  CHECK(m.evidence[0].valuation == Valuation::exact(0, 1));
  CHECK(membership(parse_poly("1/7"), r5).member);     // E_7 is empty
  CHECK(membership(parse_poly("X^3 - 1"), r5).evidence.empty());
}

TEST_CASE("membership matches exact integer arithmetic") {
  std::mt19937_64 rng(51);
  auto r = explicit_ring({{2, {IntegerSource{3}, IntegerSource{6}}}, {3, {IntegerSource{1}}}, {5, {IntegerSource{-2}}}});
  for (int trial = 0; trial < 500; ++trial) {
    auto g = random_poly(rng, 4, 15);
    long den = std::vector<long>{1, 2, 3, 4, 5, 6, 10, 12, 30}[rng() % 9];
    RationalPolynomial f(g, den);
    bool expected = true;
    for (auto [p, xs] : std::vector<std::pair<long, std::vector<long>>>{{2, {3, 6}}, {3, {1}}, {5, {-2}}}) {
      long need = trial_valuation(f.denominator(), p);
      if (need == 0) continue;
      for (long x : xs) {
        mpz_class v = f.numerator().evaluate(x);
        if (v != 0 && trial_valuation(v, p) < need) expected = false;
      }
    }
    auto got = membership(f, r);
    CHECK(got.member == expected);
    bool local = true;
    if (f.denominator() != 1) {
      for (Prime p : prime_divisors(f.denominator())) local = local && membership_at(f, r, p).member;
    }
    CHECK(got.member == local);
  }
}

TEST_CASE("membership is closed under sums and products") {
  std::mt19937_64 rng(53);
  auto r = chang({{1, {2}}, {0, {3}}});
  std::vector<RationalPolynomial> members;
  while (members.size() < 40) {
    RationalPolynomial f(random_poly(rng, 4, 12), std::vector<long>{2, 3, 5, 6, 7, 10}[rng() % 6]);
    if (membership(f, r).member) members.push_back(f);
  }
  for (int i = 0; i < 100; ++i) {
    const auto& f = members[rng() % members.size()];
    const auto& g = members[rng() % members.size()];
    CHECK(membership(f + g, r).member);
    CHECK(membership(f * g, r).member);
  }
}

TEST_CASE("principal divisor examples") {
  auto root = explicit_ring({{3, {EisensteinRootSource{2, 4, 0}}}});
  auto d = factor_principal(parse_poly("3"), root, 100);
  Divisor expected;
  expected.add(UnitaryLabel{3, 0}, 2);
  CHECK(d == expected);

  auto d2 = factor_principal(parse_poly("X"), RingSpec{}, 100);
  Divisor e2;
  e2.add(NonUnitaryLabel{IntegerPolynomial{0, 1}}, 1);
  CHECK(d2 == e2);

  auto r3 = explicit_ring({{2, {IntegerSource{3}}}});
  auto d3 = factor_principal(parse_poly("(X^2 - X)/2"), r3, 100);
  Divisor e3;
  e3.add(NonUnitaryLabel{IntegerPolynomial{0, 1}}, 1);
  e3.add(NonUnitaryLabel{IntegerPolynomial{-1, 1}}, 1);
  CHECK(d3 == e3);
  CHECK(to_string(d3) == "P(X - 1) + P(X)");

  CHECK_THROWS_AS(factor_principal(RationalPolynomial{}, r3, 100), ZeroPolynomialError);
  RingSpec zero;
  zero.set_rule(ConstantRule{0});
  CHECK_THROWS_AS(factor_principal(parse_poly("X"), zero, 50), TailUncertifiedError);
}

TEST_CASE("divisors of constants are unitary") {
  auto r = chang({{1, {2}}, {0, {6}}});
  std::mt19937_64 rng(55);
  for (int i = 0; i < 30; ++i) {
    mpq_class c(static_cast<long>(rng() % 2000) + 1, static_cast<long>(rng() % 60) + 1);
    c.canonicalize();
    auto d = factor_principal(RationalPolynomial::from_rationals({c}), r, 1000);
    for (const auto& [label, k] : d.terms()) {
      const auto* u = std::get_if<UnitaryLabel>(&label);
      REQUIRE(u != nullptr);
      int e = ramification(r.elements_at(u->p)[u->index]);
      long v = trial_valuation(c.get_num(), u->p) - trial_valuation(c.get_den(), u->p);
      CHECK(k == e * v);
    }
  }
}

TEST_CASE("principal divisors are multiplicative") {
  auto r = chang({{1, {2}}, {0, {3}}});
  std::mt19937_64 rng(57);
  const std::vector<long> dens = {1, 2, 3, 5, 6, 7, 10, 14};
  for (int i = 0; i < 100; ++i) {
    RationalPolynomial f(random_poly(rng, 3, 10), dens[rng() % dens.size()]);
    RationalPolynomial g(random_poly(rng, 3, 10), dens[rng() % dens.size()]);
    if (f.is_zero() || g.is_zero()) continue;
    CAPTURE(to_string(f));
    CAPTURE(to_string(g));
    CHECK(factor_principal(f * g, r, 10000) == factor_principal(f, r, 10000) + factor_principal(g, r, 10000));
  }
}

TEST_CASE("scan examples on a constructed ring") {
  auto r = chang({{0, {2}}});
  auto x = scan_primes(IntegerPolynomial{0, 1}, r, 10000);
  CHECK(x.hit_primes().empty());
  CHECK(x.tail_certificate);
  CHECK(x.shortcut_checks == 1229);
  auto one = scan_primes(IntegerPolynomial{1}, r, 10000);
  CHECK(one.hits.empty());
  CHECK(one.tail_certificate);
  CHECK(scan_primes(IntegerPolynomial{-1, 1}, r, 10000).hit_primes() == std::vector<Prime>{2, 3, 5, 7});
  CHECK(scan_primes(IntegerPolynomial{1, 0, 1}, r, 10000).hit_primes() == std::vector<Prime>{2});
  CHECK(scan_primes(IntegerPolynomial{5, -1, 0, 2}, r, 10000).hit_primes() ==
        std::vector<Prime>{2, 3, 19, 431});
  CHECK_THROWS_AS(scan_primes(IntegerPolynomial{}, r, 10), ZeroPolynomialError);
}

TEST_CASE("scan agrees with a brute-force sweep far past the bound") {
  auto r = chang({{1, {2}}, {0, {4}}});
  std::mt19937_64 rng(59);
  auto primes = primes_up_to(1000000);
  int certified = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto g = random_poly(rng, 3, 9);
    if (g.is_zero()) continue;
    auto rep = scan_primes(g, r, 300);
    CAPTURE(to_string(g));
    std::set<Prime> brute;
    for (long p : primes) {
      if (g.evaluate(oracle::shift(p)) % p == 0) brute.insert(p);
    }
    if (!rep.finite_certified) {
      CHECK(g.degree() >= 1);
      continue;
    }
    ++certified;
    std::set<Prime> got;
    for (Prime p : rep.hit_primes()) {
      if (p <= primes.back()) got.insert(p);
    }
    CHECK(got == brute);
  }
  CHECK(certified >= 8);
}

TEST_CASE("scan of a small polynomial reports tail hits beyond the bound") {
  auto r = chang({{0, {}}});
  // g(4) = 59 * 61 and both primes have shift 4.
  IntegerPolynomial g{15, 0, 224};
  auto rep = scan_primes(g, r, 30);
  CHECK(rep.finite_certified);
  CHECK_FALSE(rep.tail_certificate);
  std::vector<Prime> tail;
  for (const auto& h : rep.tail_hits) tail.push_back(h.p);
  CHECK(tail == std::vector<Prime>{59, 61});
  auto full = scan_primes(g, r, 100);
  CHECK(full.hit_primes() == rep.hit_primes());
}

TEST_CASE("integer roots of g give finite runs of hits") {
  auto r = chang({{0, {2}}});
  auto inside = scan_primes(IntegerPolynomial{-3, 1}, r, 10000);
  CHECK(inside.finite_certified);
  CHECK(inside.tail_certificate);
  std::vector<Prime> expected;
  for (Prime p : primes_up_to(10000)) {
    if ((log_shift(p) - 3) % p == 0) expected.push_back(p);
  }
  CHECK(inside.hit_primes() == expected);

  auto beyond = scan_primes(IntegerPolynomial{-10, 1}, r, 10000);
  CHECK(beyond.finite_certified);
  CHECK_FALSE(beyond.tail_certificate);
  std::vector<Prime> run;
  for (Prime p : primes_in_range(10001, 100000)) {
    if (oracle::shift(p) == 10) run.push_back(p);
  }
  std::vector<Prime> tail;
  for (const auto& h : beyond.tail_hits) tail.push_back(h.p);
  CHECK(tail == run);
  CHECK(tail.front() > 22026);
  CHECK(tail.back() < 59875);
  CHECK_FALSE(scan_primes(IntegerPolynomial{-30, 1}, r, 10000).finite_certified);
}

TEST_CASE("scanner monotonicity") {
  auto r = chang({{0, {3}}, {2, {}}});
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_poly(rng, 4, 20);
    if (g.is_zero()) continue;
    auto small = scan_primes(g, r, 200);
    auto large = scan_primes(g, r, 2000);
    std::set<Prime> big;
    for (const auto& h : large.hits) big.insert(h.p);
    for (const auto& h : small.hits) CHECK(big.contains(h.p));
  }
}

TEST_CASE("negative controls") {
  RingSpec zero;
  zero.set_rule(ConstantRule{0});
  auto rep = scan_primes(IntegerPolynomial{0, 1}, zero, 100);
  CHECK(rep.hit_primes().size() == 25);
  CHECK_FALSE(rep.finite_certified);
  CHECK_FALSE(rep.tail_certificate);
  auto unit = scan_primes(IntegerPolynomial{1, 0, 1}, zero, 100);
  CHECK(unit.hits.empty());
  CHECK(unit.tail_certificate);
  auto d = dedekind_report(zero, 100, {IntegerPolynomial{0, 1}});
  CHECK(d.verdict == "not factorizable within bound");
  CHECK_FALSE(d.certified);

  auto r2 = explicit_ring({{5, {IntegerSource{2}}}, {13, {IntegerSource{5}}}, {7, {IntegerSource{3}}}});
  auto s = scan_primes(IntegerPolynomial{1, 0, 1}, r2, 3);
  CHECK(s.hit_primes() == std::vector<Prime>{5, 13});
  CHECK(s.tail_certificate);
}

TEST_CASE("scan union property") {
  auto r = chang({{1, {2}}});
  CHECK(scan_union_property(IntegerPolynomial{0, 1}, IntegerPolynomial{-1, 1}, r, 1000).pass);
  CHECK(scan_union_property(IntegerPolynomial{1, 0, 1}, IntegerPolynomial{1, 0, 1}, r, 1000).pass);
  std::mt19937_64 rng(63);
  for (int i = 0; i < 100; ++i) {
    auto g = random_poly(rng, 3, 8), h = random_poly(rng, 3, 8);
    if (g.is_zero() || h.is_zero()) continue;
    auto u = scan_union_property(g, h, r, 1000);
    CHECK(u.pass);
  }
}

TEST_CASE("equality of explicit specs") {
  using O = EqualityResult::Outcome;
  auto a = explicit_ring({{2, {IntegerSource{5}, IntegerSource{9}}}});
  auto b = explicit_ring({{2, {IntegerSource{9}, IntegerSource{5}}}});
  CHECK(rings_equal(a, b).outcome == O::Equal);
  auto c = explicit_ring({{2, {IntegerSource{5}}}});
  auto d = explicit_ring({{2, {IntegerSource{7}}}});
  auto ne = rings_equal(c, d);
  CHECK(ne.outcome == O::NotEqual);
  CHECK(ne.witness == Prime{2});
  auto ram = explicit_ring({{3, {EisensteinRootSource{2, 1, 0}}}});
  CHECK(rings_equal(ram, ram).outcome == O::Unsupported);
  CHECK(rings_equal(chang({}), chang({})).outcome == O::Unsupported);

  auto s1 = explicit_ring({{3, {StreamSource{1, std::nullopt}, IntegerSource{2}}}, {5, {}}});
  auto s2 = explicit_ring({{3, {IntegerSource{2}, StreamSource{1, std::nullopt}}}});
  CHECK(rings_equal(s1, s2).outcome == O::Equal);
  auto s3 = explicit_ring({{3, {IntegerSource{2}, StreamSource{2, std::nullopt}}}});
  auto e3 = rings_equal(s1, s3);
  CHECK(e3.outcome == O::NotEqual);
  CHECK(e3.witness == Prime{3});
  auto rat = explicit_ring({{7, {RationalSource{2, 4}}}});
  auto rat2 = explicit_ring({{7, {RationalSource{-1, -2}}}});
  CHECK(rings_equal(rat, rat2).outcome == O::Equal);

  auto stream = PadicElement::materialize(StreamSource{9, std::nullopt}, 2, 256);
  auto mimic = explicit_ring({{2, {IntegerSource{stream.coefficients()[0]}}}});
  auto orig = explicit_ring({{2, {StreamSource{9, std::nullopt}}}});
  CHECK_THROWS_AS(rings_equal(orig, mimic), PrecisionMismatchError);
}

TEST_CASE("dedekind report") {
  auto r = chang({{2, {3}}});
  auto rep = dedekind_report(r, 10000, default_test_polynomials());
  CHECK(rep.certified);
  CHECK(rep.verdict == "Dedekind (desk-scale certificate)");
  CHECK(rep.scans.size() == 3);
  CHECK_FALSE(rep.assumptions.empty());
  auto empty = dedekind_report(RingSpec{}, 100, default_test_polynomials());
  CHECK(empty.polynomial_ring);
  CHECK(empty.verdict == "Q[X] (PID)");
}

TEST_CASE("ring spec files round trip") {
  auto r = chang({{1, {2, 4}}, {0, {}}}, 12345678901234567890ULL);
  r.set_explicit(101, {IntegerSource{mpz_class("123456789012345678901234567890")},
                       StreamSource{3, mpz_class(7)}, EisensteinRootSource{3, 9, -4},
                       RationalSource{1, 3}});
  r.set_explicit(103, {});
  auto j = to_json(r);
  auto back = ring_from_json(nlohmann::json::parse(j.dump()));
  CHECK(to_json(back) == j);
  CHECK(back.explicit_part() == r.explicit_part());
  CHECK(back.rule() == r.rule());

  RingSpec k;
  k.set_rule(ConstantRule{0});
  CHECK(ring_from_json(nlohmann::json::parse(to_json(k).dump())).rule() == k.rule());
}

TEST_CASE("malformed spec files") {
  using nlohmann::json;
  for (const char* bad : {
           R"([])",
           R"({"explicit": []})",
           R"({"version": 2})",
           R"({"version": 1, "explicit": [{"p": 4, "elements": []}]})",
           R"({"version": 1, "explicit": [{"p": 2, "elements": [{"kind": "float"}]}]})",
           R"({"version": 1, "explicit": [{"p": 2, "elements": [{"kind": "int", "value": 1.5}]}]})",
           R"({"version": 1, "explicit": [{"p": 2, "elements": []}, {"p": 2, "elements": []}]})",
           R"({"version": 1, "rule": {"kind": "chang", "groups": [{"rank": 0, "torsion": [4, 2]}]}})",
           R"({"version": 1, "rule": {"kind": "other"}})",
       }) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ring_from_json(json::parse(bad)), Error);
  }
  CHECK_THROWS_AS(load_ring("/nonexistent/ring.json"), SpecFormatError);
}

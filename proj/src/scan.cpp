#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <set>
#include <tuple>

#include "ivp/errors.hpp"
#include "ivp/ring.hpp"

namespace ivp {

namespace {

// Largest shift whose interval [lo, hi] still fits in a Prime.
constexpr long kMaxShift = 43;
// Longest shift interval whose primes are listed one by one.
constexpr Prime kMaxEnumeration = 20000000;

// Smallest integer x >= 2 with log_shift(x) >= s.
Prime interval_start(long s) {
  if (s <= 1) return 2;
  auto x = static_cast<Prime>(std::ceil(std::exp(static_cast<long double>(s))));
  while (x > 2 && log_shift(x - 1) >= s) --x;
  while (log_shift(x) < s) ++x;
  return x;
}

double log_abs(const mpz_class& n) {
  long exp = 0;
  double m = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(exp) * std::log(2.0);
}

// Least s such that 0 < |g(t)| < e^t for every integer t >= s: the bound
// sum |a_i| t^i < e^t is monotone once t > deg g, and t above the Cauchy
// bound excludes integer roots.
long analytic_threshold(const IntegerPolynomial& g) {
  const int d = g.degree();
  mpz_class cauchy = 0;
  for (int i = 0; i < d; ++i) {
    mpz_class c = abs(g.coeff(i));
    mpz_class q = (c + abs(g.leading()) - 1) / abs(g.leading());
    if (q > cauchy) cauchy = q;
  }
  long s = d + 1;
  if (cauchy + 2 > s) {
    if (!cauchy.fits_slong_p() || cauchy > kMaxShift) return kMaxShift + 1;
    s = cauchy.get_si() + 2;
  }
  for (; s <= kMaxShift; ++s) {
    mpz_class total = 0, t = s;
    for (int i = d; i >= 0; --i) total = total * t + abs(g.coeff(i));
    if (log_abs(total) < static_cast<double>(s) - 1e-9) return s;
  }
  return kMaxShift + 1;
}

struct Scanner {
  const IntegerPolynomial& g;
  const RingSpec& ring;
  const PrecisionOptions& options;
  ScanReport& report;

  // Residue test on every element of E_p, full evaluation of the survivors.
  void visit(Prime p, std::vector<ScanHit>& out) {
    auto specs = ring.elements_at(p);
    const mpz_class pz = to_mpz(p);
    for (std::size_t i = 0; i < specs.size(); ++i) {
      ++report.shortcut_checks;
      try {
        if (mod(g.evaluate(residue(specs[i], p)), pz) != 0) continue;
        auto x = PadicElement::materialize(specs[i], p,
                                           std::min(options.precision, options.max_precision));
        try {
          Valuation v = eval_poly(RationalPolynomial(g), x, {options.max_precision, std::nullopt})
                            .valuation;
          out.push_back({p, i, v});
        } catch (const PrecisionExhaustedError& e) {
          report.errors.emplace_back(p, e.what());
          out.push_back({p, i, Valuation::below_precision(e.pi_bound(), e.ramification())});
        }
      } catch (const Error& e) {
        report.errors.emplace_back(p, e.what());
      }
    }
  }

  bool fail(const std::string& why) {
    report.tail_detail = why;
    return false;
  }

  // Adds the rule primes of n lying in [lo, hi]. False when n could not be
  // factored far enough to decide.
  bool collect(const mpz_class& n, Prime lo, Prime hi) {
    IntegerFactorization f = factor_integer(n);
    if (!f.complete() && f.unfactored >= lo) {
      return fail("could not factor " + n.get_str());
    }
    for (const auto& [q, _] : f.factors) {
      if (q < lo || q > hi || !q.fits_slong_p()) continue;
      Prime p = q.get_si();
      if (ring.is_rule_prime(p)) visit(p, report.tail_hits);
    }
    return true;
  }

  bool chang_tail() {
    const Prime b = report.bound;
    long s0 = analytic_threshold(g);
    if (s0 > kMaxShift) return fail("growth threshold beyond 64-bit primes");
    report.tail_threshold = interval_start(s0);
    for (long s = b < 2 ? 1 : log_shift(b); s < s0; ++s) {
      Prime lo = std::max(interval_start(s), b + 1);
      Prime hi = interval_start(s + 1) - 1;
      if (lo > hi) continue;
      mpz_class n = g.evaluate(s);
      if (n != 0) {
        if (!collect(n, lo, hi)) return false;
        continue;
      }
      // s is a root of g: every rule prime of the interval is a hit.
      if (hi - lo > kMaxEnumeration) {
        return fail("g(" + std::to_string(s) + ") = 0 and the interval [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "] is too long to enumerate");
      }
      for (Prime p : primes_in_range(lo, hi)) {
        if (ring.is_rule_prime(p)) visit(p, report.tail_hits);
      }
    }
    report.tail_detail = "rule primes >= " + std::to_string(*report.tail_threshold) +
                         " exceed |g(shift)|";
    return true;
  }

  bool constant_tail(const mpz_class& value) {
    const Prime b = report.bound;
    mpz_class n = g.evaluate(value);
    if (n == 0) return fail("g vanishes at the rule value: every prime is a hit");
    mpz_class limit = abs(n) + 1;
    if (limit.fits_slong_p()) report.tail_threshold = std::max<Prime>(limit.get_si(), b + 1);
    if (!collect(n, b + 1, std::numeric_limits<Prime>::max())) return false;
    report.tail_detail = "rule primes beyond the bound divide g(value) only where listed";
    return true;
  }
};

}  // namespace

std::vector<Prime> ScanReport::hit_primes() const {
  std::set<Prime> s;
  for (const auto& h : hits) s.insert(h.p);
  for (const auto& h : tail_hits) s.insert(h.p);
  return {s.begin(), s.end()};
}

ScanReport scan_primes(const IntegerPolynomial& g, const RingSpec& ring, Prime bound,
                       const PrecisionOptions& options) {
  if (g.is_zero()) throw ZeroPolynomialError("scan of the zero polynomial");
  ScanReport report;
  report.g = g;
  report.bound = bound;
  Scanner sc{g, ring, options, report};

  if (ring.rule()) {
    for (Prime p : primes_up_to(bound)) sc.visit(p, report.hits);
  }
  for (const auto& [p, _] : ring.explicit_part()) {
    if (!ring.rule() || p > bound) sc.visit(p, report.hits);
  }
  std::sort(report.hits.begin(), report.hits.end(),
            [](const ScanHit& a, const ScanHit& b) { return std::tie(a.p, a.index) < std::tie(b.p, b.index); });

  bool resolved = true;
  if (!ring.rule()) {
    report.tail_detail = "no rule: unlisted primes carry no elements";
  } else if (const auto* c = std::get_if<ConstantRule>(&*ring.rule())) {
    resolved = sc.constant_tail(c->value);
  } else {
    resolved = sc.chang_tail();
  }
  std::sort(report.tail_hits.begin(), report.tail_hits.end(),
            [](const ScanHit& a, const ScanHit& b) { return std::tie(a.p, a.index) < std::tie(b.p, b.index); });
  report.finite_certified = resolved;
  report.tail_certificate = resolved && report.tail_hits.empty();
  return report;
}

UnionCheck scan_union_property(const IntegerPolynomial& g, const IntegerPolynomial& h,
                               const RingSpec& ring, Prime bound, const PrecisionOptions& options) {
  auto pg = scan_primes(g, ring, bound, options).hit_primes();
  auto ph = scan_primes(h, ring, bound, options).hit_primes();
  auto pgh = scan_primes(g * h, ring, bound, options).hit_primes();
  std::vector<Prime> uni;
  std::set_union(pg.begin(), pg.end(), ph.begin(), ph.end(), std::back_inserter(uni));
  UnionCheck out;
  if (uni == pgh) {
    out.detail = std::to_string(uni.size()) + " primes";
    return out;
  }
  std::vector<Prime> diff;
  std::set_symmetric_difference(uni.begin(), uni.end(), pgh.begin(), pgh.end(),
                                std::back_inserter(diff));
  out.pass = false;
  out.counterexample = diff.front();
  out.detail = "prime " + std::to_string(diff.front()) + " in only one of P_gh and P_g u P_h";
  return out;
}

}  // namespace ivp

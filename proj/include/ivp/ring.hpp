#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ivp/integer.hpp"
#include "ivp/padic.hpp"
#include "ivp/polynomial.hpp"

namespace ivp {

// Z^rank + Z/torsion[0] + ... with torsion[j] | torsion[j+1].
struct GroupSummand {
  long rank = 0;
  std::vector<long> torsion;
  friend bool operator==(const GroupSummand&, const GroupSummand&) = default;
};

// max(1, floor(ln p)).
long log_shift(Prime p);

// Procedural E_p realizing a prescribed class group. The groups receive
// consecutive primes in ascending order: 1 + k_i primes for a summand with
// k_i torsion factors. The first carries rank + 1 elements of Z_p, the others
// one Eisenstein root each. Every later prime carries a single element of
// Z_p, i.e. a trivial summand. All elements are congruent to log_shift(p).
struct ChangRule {
  std::vector<GroupSummand> groups;
  std::uint64_t seed = 0;
  friend bool operator==(const ChangRule&, const ChangRule&) = default;
};

// E_p = {value} at every prime.
struct ConstantRule {
  mpz_class value;
  friend bool operator==(const ConstantRule&, const ConstantRule&) = default;
};

using Rule = std::variant<ChangRule, ConstantRule>;

struct PrimeRole {
  enum class Kind { GroupBase, GroupTorsion, Padding };
  Kind kind = Kind::Padding;
  std::size_t group = 0;
  std::size_t torsion_index = 0;
};

struct PrecisionOptions {
  long precision = kDefaultPrecision;
  long max_precision = kDefaultMaxPrecision;
};

// E = prod_p E_p: a finite explicit part plus an optional rule covering
// every other prime. Without a rule, unlisted primes have E_p empty.
class RingSpec {
 public:
  RingSpec() = default;

  // Throws NotPrimeError.
  void set_explicit(Prime p, std::vector<ElementSpec> elements);
  void set_rule(Rule rule);

  const std::map<Prime, std::vector<ElementSpec>>& explicit_part() const { return explicit_; }
  const std::optional<Rule>& rule() const { return rule_; }

  bool is_rule_prime(Prime p) const;
  std::vector<ElementSpec> elements_at(Prime p) const;
  std::vector<PadicElement> materialize(Prime p, long precision) const;

  // Explicit primes and primes allocated to rule groups, ascending. Every
  // other prime has |E_p| <= 1 with e = 1.
  std::vector<Prime> realized_primes() const;
  // Chang rule only: primes of each group, base prime first.
  std::vector<std::vector<Prime>> group_allocation() const;
  std::optional<PrimeRole> role(Prime p) const;

  // True when every E_p is empty, i.e. the ring is Q[X].
  bool is_polynomial_ring() const;

  // Warnings about elements of one E_p that agree at the given precision.
  std::vector<std::string> validate(long precision) const;

 private:
  void allocate();

  std::map<Prime, std::vector<ElementSpec>> explicit_;
  std::optional<Rule> rule_;
  std::vector<std::pair<Prime, PrimeRole>> allocation_;
};

// Residue in [0, p) of the element described by spec; every element is
// congruent to it modulo the maximal ideal.
mpz_class residue(const ElementSpec& spec, Prime p);

struct MembershipEvidence {
  Prime p;
  std::size_t index;
  Valuation valuation;
};

struct MembershipResult {
  bool member = true;
  std::vector<MembershipEvidence> evidence;
};

// f lies in the ring iff v_p(f(alpha)) >= 0 for every prime p dividing the
// denominator and every alpha in E_p. Throws PrecisionExhaustedError.
MembershipResult membership(const RationalPolynomial& f, const RingSpec& ring,
                            const PrecisionOptions& options = {});
// The local check at one prime.
MembershipResult membership_at(const RationalPolynomial& f, const RingSpec& ring, Prime p,
                               const PrecisionOptions& options = {});

struct UnitaryLabel {
  Prime p;
  std::size_t index;
  friend auto operator<=>(const UnitaryLabel&, const UnitaryLabel&) = default;
};

struct NonUnitaryLabel {
  IntegerPolynomial q;
  friend bool operator==(const NonUnitaryLabel& a, const NonUnitaryLabel& b) { return a.q == b.q; }
  friend std::strong_ordering operator<=>(const NonUnitaryLabel& a, const NonUnitaryLabel& b) {
    return compare(a.q, b.q);
  }
};

using MaximalIdealLabel = std::variant<UnitaryLabel, NonUnitaryLabel>;

std::string to_string(const MaximalIdealLabel& label);

// Finitely supported map label -> exponent; unitary exponents live in the
// normalized value group, i.e. e_alpha * v_p.
class Divisor {
 public:
  void add(const MaximalIdealLabel& label, long exponent);
  long operator[](const MaximalIdealLabel& label) const;
  const std::map<MaximalIdealLabel, long>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  friend Divisor operator+(Divisor a, const Divisor& b);
  friend Divisor operator-(const Divisor& a);
  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  std::map<MaximalIdealLabel, long> terms_;
};

std::string to_string(const Divisor& d);

struct ScanHit {
  Prime p;
  std::size_t index;
  Valuation valuation;
};

struct ScanReport {
  IntegerPolynomial g;
  Prime bound = 0;
  // Witnesses at primes <= bound and at every explicit prime.
  std::vector<ScanHit> hits;
  // Witnesses at rule primes beyond the bound, found from the residue
  // classes rather than by sweeping.
  std::vector<ScanHit> tail_hits;
  // No rule prime beyond the bound is in P_g.
  bool tail_certificate = false;
  // hits + tail_hits is the whole of P_g.
  bool finite_certified = false;
  // Every rule prime >= this value is certified not to divide g(residue).
  std::optional<Prime> tail_threshold;
  std::size_t shortcut_checks = 0;
  // Per-prime valuation failures; the scan continues past them.
  std::vector<std::pair<Prime, std::string>> errors;
  std::string tail_detail;

  // Distinct primes of hits and tail_hits, ascending.
  std::vector<Prime> hit_primes() const;
};

// P_{g,E} = { p : v_p(g(alpha)) > 0 for some alpha in E_p }, swept up to
// bound and completed by a residue-class argument for rule primes.
ScanReport scan_primes(const IntegerPolynomial& g, const RingSpec& ring, Prime bound,
                       const PrecisionOptions& options = {});

struct UnionCheck {
  bool pass = true;
  std::optional<Prime> counterexample;
  std::string detail;
};

// Checks P_{gh} = P_g u P_h on the scanned range.
UnionCheck scan_union_property(const IntegerPolynomial& g, const IntegerPolynomial& h,
                               const RingSpec& ring, Prime bound,
                               const PrecisionOptions& options = {});

// Principal divisor of f: non-unitary part from the factorization over Q,
// unitary part e_alpha * v_p(f(alpha)) at every prime of the support.
// Throws ZeroPolynomialError, TailUncertifiedError, PrecisionExhaustedError.
Divisor factor_principal(const RationalPolynomial& f, const RingSpec& ring, Prime bound,
                         const PrecisionOptions& options = {});

struct EqualityResult {
  enum class Outcome { Equal, NotEqual, Unsupported };
  Outcome outcome = Outcome::Equal;
  std::optional<Prime> witness;
  std::string detail;
};

std::string to_string(EqualityResult::Outcome outcome);

// Decides equality prime by prime for explicit specs whose elements are all
// unramified. Throws PrecisionMismatchError when two elements cannot be
// separated or identified.
EqualityResult rings_equal(const RingSpec& a, const RingSpec& b,
                           const PrecisionOptions& options = {});

struct DedekindReport {
  bool polynomial_ring = false;
  bool finite_sets = true;
  std::vector<ScanReport> scans;
  bool certified = false;
  std::string verdict;
  std::vector<std::string> assumptions;
};

std::vector<IntegerPolynomial> default_test_polynomials();

DedekindReport dedekind_report(const RingSpec& ring, Prime bound,
                               const std::vector<IntegerPolynomial>& tests,
                               const PrecisionOptions& options = {});

// Modeling assumptions attached to every report.
std::vector<std::string> assumption_ledger();

}  // namespace ivp

#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ivp/ring.hpp"

namespace ivp {

// Z^rank + Z/n_1 + ... + Z/n_k with n_1 | ... | n_k and n_1 >= 2.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  // Throws InvalidTorsionChainError.
  FgAbelianGroup(long rank, std::vector<mpz_class> torsion);
  // Canonical form of Z^rank + sum Z/orders[i]; orders of 0 count as Z and
  // orders of 1 vanish.
  static FgAbelianGroup from_cyclic(long rank, const std::vector<mpz_class>& orders);

  long rank() const { return rank_; }
  const std::vector<mpz_class>& torsion() const { return torsion_; }
  bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }

  FgAbelianGroup direct_sum(const FgAbelianGroup& other) const;
  // "Z^2 x Z/3", "Z", "0".
  std::string to_string() const;

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

 private:
  long rank_ = 0;
  std::vector<mpz_class> torsion_;
};

// "rank:m;torsion:n1,n2" per summand; each "rank:" opens a new summand.
// Throws SpecFormatError, InvalidTorsionChainError.
std::vector<GroupSummand> parse_group_spec(std::string_view text);
std::string to_group_spec(const std::vector<GroupSummand>& groups);
FgAbelianGroup group_of(const GroupSummand& g);
FgAbelianGroup group_of(const std::vector<GroupSummand>& groups);

// Z^n / <(e_1, ..., e_n)>.
FgAbelianGroup local_class_group(const std::vector<int>& ramifications);
std::vector<int> ramifications_at(const RingSpec& ring, Prime p);

// Direct sum of the local groups over the realized primes; every other
// prime carries at most one unramified element.
FgAbelianGroup global_class_group(const RingSpec& ring);

// Per-prime canonical coordinates: with y = V^T x for the Smith form of the
// relation row, the first coordinate is kept modulo gcd(e) (dropped when
// the gcd is 1), the rest are free. Primes with zero coordinates are omitted.
struct ClassElement {
  std::map<Prime, std::vector<mpz_class>> coordinates;
  bool is_zero() const { return coordinates.empty(); }
  std::string to_string() const;
  friend bool operator==(const ClassElement&, const ClassElement&) = default;
};

// Resolves non-unitary labels through the principal divisor of q. Throws
// TailUncertifiedError, PrecisionExhaustedError, Error for labels outside
// the ring.
ClassElement class_of_divisor(const Divisor& d, const RingSpec& ring, Prime bound,
                              const PrecisionOptions& options = {});

struct PidReport {
  bool pid = false;
  std::string reason;
  FgAbelianGroup group;
  DedekindReport dedekind;
};

PidReport is_pid(const RingSpec& ring, Prime bound, const std::vector<IntegerPolynomial>& tests,
                 const PrecisionOptions& options = {});

// Chang rule realizing the sum of the groups; the empty list gives Q[X].
// Throws InvalidTorsionChainError.
RingSpec construct_ring(const std::vector<GroupSummand>& groups, std::uint64_t seed);

struct BlockCheck {
  std::size_t index = 0;
  std::vector<Prime> primes;
  FgAbelianGroup expected;
  FgAbelianGroup computed;
  bool match = false;
};

struct VerifyReport {
  bool match = false;
  FgAbelianGroup expected;
  FgAbelianGroup computed;
  std::vector<BlockCheck> blocks;
  std::string detail;
};

// Recomputes the class group and, for rule specs, the block of each group.
VerifyReport verify_class_group(const RingSpec& ring, const std::vector<GroupSummand>& groups);

}  // namespace ivp

#include "zp_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "ivp/integer.hpp"

namespace ivp::detail {

namespace {
void trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
}  // namespace

std::uint64_t Zp::inv(std::uint64_t a) const {
  // a^(p-2)
  std::uint64_t r = 1, b = a % p_, e = p_ - 2;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

ZpPoly Zp::reduce(const IntegerPolynomial& f) const {
  ZpPoly r(static_cast<std::size_t>(f.degree() + 1));
  mpz_class pm(static_cast<unsigned long>(p_));
  for (int i = 0; i <= f.degree(); ++i) r[i] = mod(f.coeff(i), pm).get_ui();
  trim(r);
  return r;
}

ZpPoly Zp::add(const ZpPoly& a, const ZpPoly& b) const {
  ZpPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

ZpPoly Zp::sub(const ZpPoly& a, const ZpPoly& b) const {
  ZpPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

ZpPoly Zp::mul(const ZpPoly& a, const ZpPoly& b) const {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
  }
  trim(r);
  return r;
}

ZpPoly Zp::scale(const ZpPoly& a, std::uint64_t c) const {
  ZpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], c);
  trim(r);
  return r;
}

std::pair<ZpPoly, ZpPoly> Zp::divrem(const ZpPoly& a, const ZpPoly& b) const {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  if (a.size() < b.size()) return {ZpPoly{}, a};
  ZpPoly r = a;
  ZpPoly q(a.size() - b.size() + 1);
  std::uint64_t li = inv(b.back());
  const std::size_t db = b.size() - 1;
  for (std::size_t i = q.size(); i-- > 0;) {
    std::uint64_t c = mul(r[i + db], li);
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[i + j] = sub(r[i + j], mul(c, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

ZpPoly Zp::monic(const ZpPoly& a) const {
  if (a.empty()) return a;
  return scale(a, inv(a.back()));
}

ZpPoly Zp::gcd(ZpPoly a, ZpPoly b) const {
  while (!b.empty()) {
    ZpPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

void Zp::ext_gcd(const ZpPoly& a, const ZpPoly& b, ZpPoly& g, ZpPoly& s, ZpPoly& t) const {
  ZpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divrem(r0, r1);
    ZpPoly s2 = sub(s0, mul(q, s1));
    ZpPoly t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint64_t li = inv(r0.back());
  g = scale(r0, li);
  s = scale(s0, li);
  t = scale(t0, li);
}

ZpPoly Zp::derivative(const ZpPoly& a) const {
  if (a.size() <= 1) return {};
  ZpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p_);
  trim(r);
  return r;
}

ZpPoly Zp::powmod(ZpPoly base, const mpz_class& exponent, const ZpPoly& modulus) const {
  ZpPoly result{1};
  base = rem(base, modulus);
  std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result), modulus);
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = rem(mul(result, base), modulus);
  }
  return rem(result, modulus);
}

std::vector<std::pair<ZpPoly, int>> Zp::distinct_degree(ZpPoly f) const {
  std::vector<std::pair<ZpPoly, int>> out;
  const ZpPoly x{0, 1};
  ZpPoly h = x;
  mpz_class pz(static_cast<unsigned long>(p_));
  for (int d = 1; 2 * d <= degree(f); ++d) {
    h = powmod(h, pz, f);
    ZpPoly g = gcd(sub(h, x), f);
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      f = divrem(f, g).first;
      h = rem(h, f);
    }
  }
  if (degree(f) > 0) out.emplace_back(monic(f), degree(f));
  return out;
}

void Zp::equal_degree(const ZpPoly& f, int d, std::mt19937_64& rng,
                      std::vector<ZpPoly>& out) const {
  if (degree(f) == d) {
    out.push_back(f);
    return;
  }
  mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class exponent = (power(pz, static_cast<unsigned long>(d)) - 1) / 2;
  while (true) {
    ZpPoly a(static_cast<std::size_t>(degree(f)));
    for (auto& c : a) c = rng() % p_;
    trim(a);
    if (degree(a) < 1) continue;
    ZpPoly b = sub(powmod(a, exponent, f), ZpPoly{1});
    ZpPoly g = gcd(b, f);
    if (degree(g) > 0 && degree(g) < degree(f)) {
      equal_degree(g, d, rng, out);
      equal_degree(divrem(f, g).first, d, rng, out);
      return;
    }
  }
}

std::vector<ZpPoly> Zp::factor_squarefree(const ZpPoly& f, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<ZpPoly> out;
  for (auto& [g, d] : distinct_degree(monic(f))) equal_degree(g, d, rng, out);
  std::sort(out.begin(), out.end(), [](const ZpPoly& a, const ZpPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace ivp::detail

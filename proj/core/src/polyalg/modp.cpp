#include "polycensus/polyalg/modp.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace polycensus::polyalg {

namespace {

std::vector<std::uint32_t> sieve(std::uint32_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t powmod_int(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return powmod_int(a, p - 2, p); }

}  // namespace

std::uint32_t nth_prime(std::size_t index) {
  static std::mutex mu;
  static std::vector<std::uint32_t> cache;
  std::lock_guard lock(mu);
  std::uint32_t bound = 1024;
  while (cache.size() <= index) {
    cache = sieve(bound);
    bound *= 2;
  }
  return cache[index];
}

std::vector<std::uint32_t> primes_below(std::uint32_t bound) {
  if (bound < 3) return {};
  return sieve(bound - 1);
}

ModPoly::ModPoly(std::uint64_t p, std::vector<std::uint64_t> ascending) : p_(p), c_(std::move(ascending)) {
  for (auto& v : c_) v %= p_;
  trim();
}

ModPoly ModPoly::reduce(const Polynomial& f, std::uint64_t p) {
  std::vector<std::uint64_t> c;
  c.reserve(f.coeffs().size());
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    if (it->fits_slong_p()) {
      long v = it->get_si() % static_cast<long>(p);
      c.push_back(static_cast<std::uint64_t>(v < 0 ? v + static_cast<long>(p) : v));
    } else {
      c.push_back(mpz_fdiv_ui(it->get_mpz_t(), p));
    }
  }
  return ModPoly(p, std::move(c));
}

ModPoly ModPoly::x(std::uint64_t p) { return ModPoly(p, {0, 1}); }

void ModPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial ModPoly::lift() const {
  std::vector<Integer> a;
  a.reserve(c_.size());
  for (auto v : c_) a.emplace_back(static_cast<unsigned long>(v));
  return Polynomial::from_ascending(std::move(a));
}

ModPoly ModPoly::operator+(const ModPoly& o) const {
  std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = (r[i] + o.c_[i]) % p_;
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
  std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = (r[i] + p_ - o.c_[i]) % p_;
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
  if (is_zero() || o.is_zero()) return ModPoly(p_);
  std::vector<std::uint64_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % p_;
  }
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::monic() const {
  if (is_zero()) return *this;
  std::uint64_t inv = inverse(lead(), p_);
  std::vector<std::uint64_t> r = c_;
  for (auto& v : r) v = mulmod(v, inv, p_);
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::derivative() const {
  if (c_.size() <= 1) return ModPoly(p_);
  std::vector<std::uint64_t> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mulmod(c_[i], i % p_, p_);
  return ModPoly(p_, std::move(r));
}

std::pair<ModPoly, ModPoly> ModPoly::divrem(const ModPoly& d) const {
  if (d.is_zero()) throw std::invalid_argument("ModPoly division by zero");
  if (degree() < d.degree()) return {ModPoly(p_), *this};
  std::vector<std::uint64_t> r = c_;
  const std::size_t dn = d.c_.size() - 1;
  std::vector<std::uint64_t> q(r.size() - dn, 0);
  const std::uint64_t inv = inverse(d.lead(), p_);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t t = mulmod(r[k + dn], inv, p_);
    q[k] = t;
    if (!t) continue;
    for (std::size_t j = 0; j <= dn; ++j) r[k + j] = (r[k + j] + p_ - mulmod(t, d.c_[j], p_)) % p_;
  }
  r.resize(dn);
  return {ModPoly(p_, std::move(q)), ModPoly(p_, std::move(r))};
}

ModPoly gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ModPoly powmod(const ModPoly& base, std::uint64_t e, const ModPoly& m) {
  ModPoly result(m.modulus(), {1});
  result = result % m;
  ModPoly b = base % m;
  while (e) {
    if (e & 1) result = (result * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return result;
}

std::optional<std::vector<int>> factor_degrees_mod(const Polynomial& f, std::uint64_t p) {
  ModPoly a = ModPoly::reduce(f, p);
  if (a.degree() != f.degree() || a.degree() < 1) return std::nullopt;
  a = a.monic();
  if (gcd(a, a.derivative()).degree() != 0) return std::nullopt;
  std::vector<int> degrees;
  const ModPoly x = ModPoly::x(p);
  ModPoly h = x % a;
  for (int d = 1; 2 * d <= a.degree(); ++d) {
    h = powmod(h, p, a);
    ModPoly g = gcd(a, h - x);
    if (g.degree() > 0) {
      for (int k = 0; k < g.degree() / d; ++k) degrees.push_back(d);
      a = a / g;
      h = h % a;
    }
  }
  if (a.degree() > 0) degrees.push_back(a.degree());
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

bool is_irreducible_mod(const Polynomial& f, std::uint64_t p) {
  auto d = factor_degrees_mod(f, p);
  return d && d->size() == 1;
}

ModPoly radical(const ModPoly& a) {
  const std::uint64_t p = a.modulus();
  ModPoly m = a.monic();
  ModPoly rad(p, {1});
  if (m.degree() < 1) return rad;
  const ModPoly x = ModPoly::x(p);
  ModPoly h = x % m;
  for (int d = 1; d <= m.degree(); ++d) {
    h = powmod(h, p, m);
    ModPoly g = gcd(m, h - x);
    if (g.degree() > 0) rad = (rad * g) / gcd(rad, g);
  }
  return rad.monic();
}

bool is_p_maximal(const Polynomial& f, std::uint64_t p) {
  ModPoly fb = ModPoly::reduce(f, p);
  ModPoly g = radical(fb);
  ModPoly h = fb.monic() / g;
  Polynomial lifted = g.lift() * h.lift();
  Polynomial diff = f - lifted;
  std::vector<Integer> c = diff.coeffs();
  for (auto& v : c) {
    if (!mpz_divisible_ui_p(v.get_mpz_t(), p)) throw std::logic_error("Dedekind lift is not congruent mod p");
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
  }
  ModPoly F = ModPoly::reduce(Polynomial(std::move(c)), p);
  ModPoly t = gcd(gcd(F, g), h);
  return t.degree() == 0;
}

bool equation_order_is_maximal(const Polynomial& f) {
  if (!f.is_monic()) throw std::invalid_argument("equation_order_is_maximal expects a monic polynomial");
  if (f.degree() <= 1) return true;
  Integer d = discriminant(f);
  if (d == 0) return false;
  for (const auto& q : square_divisor_primes(d)) {
    if (!q.fits_ulong_p()) throw std::domain_error("prime too large for the Dedekind test");
    if (!is_p_maximal(f, q.get_ui())) return false;
  }
  return true;
}

}  // namespace polycensus::polyalg

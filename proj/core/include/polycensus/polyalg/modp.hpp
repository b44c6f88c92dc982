#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::polyalg {

// Primes in ascending order: 2, 3, 5, ... (cached sieve, thread-safe).
std::uint32_t nth_prime(std::size_t index);
std::vector<std::uint32_t> primes_below(std::uint32_t bound);

/// Dense polynomial over F_p, ascending coefficients, no trailing zeros.
/// p must be below 2^32 so products fit in 64 bits.
class ModPoly {
 public:
  ModPoly(std::uint64_t p) : p_(p) {}
  ModPoly(std::uint64_t p, std::vector<std::uint64_t> ascending);
  static ModPoly reduce(const Polynomial& f, std::uint64_t p);
  static ModPoly x(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  // Lift with coefficients in [0, p).
  Polynomial lift() const;

  friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  ModPoly operator+(const ModPoly& o) const;
  ModPoly operator-(const ModPoly& o) const;
  ModPoly operator*(const ModPoly& o) const;
  ModPoly monic() const;
  ModPoly derivative() const;
  // Quotient and remainder by a nonzero divisor.
  std::pair<ModPoly, ModPoly> divrem(const ModPoly& d) const;
  ModPoly operator%(const ModPoly& d) const { return divrem(d).second; }
  ModPoly operator/(const ModPoly& d) const { return divrem(d).first; }

 private:
  void trim();
  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

ModPoly gcd(ModPoly a, ModPoly b);  // monic result
// base^e mod m
ModPoly powmod(const ModPoly& base, std::uint64_t e, const ModPoly& m);

/// Degrees of the irreducible factors of f mod p (distinct-degree
/// factorization), ascending; nullopt when f mod p is not square-free or the
/// degree drops, i.e. when p divides Disc(f) for monic f.
std::optional<std::vector<int>> factor_degrees_mod(const Polynomial& f, std::uint64_t p);

bool is_irreducible_mod(const Polynomial& f, std::uint64_t p);

// Product of the distinct monic irreducible factors of a (any characteristic).
ModPoly radical(const ModPoly& a);

/// Dedekind's criterion: is Z[alpha] maximal at p, where f is the minimal
/// polynomial of alpha?
bool is_p_maximal(const Polynomial& f, std::uint64_t p);

/// True when Z[alpha] is the full ring of integers of Q(alpha): Dedekind's
/// criterion holds at every prime whose square divides Disc(f).
bool equation_order_is_maximal(const Polynomial& f);

}  // namespace polycensus::polyalg

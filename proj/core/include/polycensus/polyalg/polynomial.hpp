#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polycensus::polyalg {

using Integer = mpz_class;

/// Univariate polynomial with exact integer coefficients.
///
/// Coefficients are stored leading-first, so the monic invariant of census
/// inputs is a check on index 0. The zero polynomial has no coefficients and
/// degree -1. Leading zeros are stripped on construction.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Integer> leading_first);
  Polynomial(std::initializer_list<long> leading_first);

  static Polynomial from_ascending(std::vector<Integer> ascending);
  static Polynomial constant(Integer c);
  static Polynomial monomial(int degree);  // x^degree
  static Polynomial linear_root(const Integer& r);  // x - r

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.front() == 1; }

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  const Integer& leading() const;
  // Coefficient of x^power; zero outside [0, degree].
  Integer coeff(int power) const;
  std::vector<Integer> ascending() const;

  // "1,0,-3,-1"
  std::string to_list() const;
  // "x^3 - 3*x - 1"
  std::string to_expression() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<Integer> coeffs_;
};

// Total order: degree first, then coefficients leading-first.
std::strong_ordering lex_compare(const Polynomial& a, const Polynomial& b);

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Integer& c, const Polynomial& a);

Polynomial derivative(const Polynomial& f);
Integer evaluate(const Polynomial& f, const Integer& x);
// f(x + shift)
Polynomial taylor_shift(const Polynomial& f, const Integer& shift);
// f(scale * x)
Polynomial scale_argument(const Polynomial& f, const Integer& scale);

Integer content(const Polynomial& f);
// f / content(f), normalized to a positive leading coefficient.
Polynomial primitive_part(const Polynomial& f);

// Exact quotient in Z[x], or nullopt when divisor does not divide f there.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& divisor);
// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b);
// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// ht(f): the maximum absolute value of all coefficients, the leading one
/// included.
Integer height(const Polynomial& f);

/// Res(f, g) = lc(f)^deg(g) * prod g(theta) over the roots theta of f,
/// computed exactly as the Sylvester determinant.
Integer resultant(const Polynomial& f, const Polynomial& g);

/// Disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f). Requires deg f >= 1.
Integer discriminant(const Polynomial& f);

/// Square-free decomposition of a monic polynomial: pairs (s_k, k) with
/// f = prod s_k^k, each s_k monic, square-free, pairwise coprime, deg >= 1.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& f);
bool is_squarefree(const Polynomial& f);

// Number of distinct real roots (Sturm sequence over Q).
int count_real_roots(const Polynomial& f);

// Distinct integer roots of f, ascending.
std::vector<Integer> integer_roots(const Polynomial& f);

// Exact integer helpers shared across modules.
bool is_perfect_square(const Integer& n);
// Signed squarefree kernel: n = kernel * m^2 with kernel squarefree. kernel(0) = 0.
Integer squarefree_kernel(const Integer& n);
bool is_squarefree_integer(const Integer& n);
// Primes p with p^2 | n, ascending. Trial division to the cube root.
std::vector<Integer> square_divisor_primes(const Integer& n);

}  // namespace polycensus::polyalg

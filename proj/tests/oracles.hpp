#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library beyond the Polynomial container.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "polycensus/polyalg/polynomial.hpp"

namespace oracle {

using polycensus::polyalg::Integer;
using polycensus::polyalg::Polynomial;
using cld = std::complex<long double>;

inline std::vector<long> small_coeffs(const Polynomial& f) {
  std::vector<long> c;
  for (const auto& v : f.coeffs()) c.push_back(v.get_si());
  return c;
}

// Weierstrass (Durand-Kerner) iteration in long double for a monic input.
inline std::vector<cld> numeric_roots(const Polynomial& f) {
  auto c = small_coeffs(f);
  const int n = f.degree();
  std::vector<cld> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::pow(cld(0.4L, 0.9L), k);
  auto eval = [&](cld x) {
    cld acc = 0;
    for (long v : c) acc = acc * x + static_cast<long double>(v);
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    long double change = 0;
    for (int i = 0; i < n; ++i) {
      cld den = 1;
      for (int j = 0; j < n; ++j)
        if (i != j) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      cld step = eval(z[static_cast<std::size_t>(i)]) / den;
      z[static_cast<std::size_t>(i)] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-17L) break;
  }
  return z;
}

inline long double numeric_mahler(const Polynomial& f) {
  long double m = 1;
  for (auto r : numeric_roots(f)) m *= std::max<long double>(1, std::abs(r));
  return m;
}

// b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd for x^3 + bx^2 + cx + d.
inline Integer cubic_disc(const Integer& b, const Integer& c, const Integer& d) {
  return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
}

// Naive polynomial long division remainder test over Z for monic divisors.
inline bool divides(const std::vector<long>& g, const std::vector<long>& f) {
  std::vector<long> r = f;
  const std::size_t dg = g.size() - 1;
  if (r.size() < g.size()) return false;
  for (std::size_t i = 0; i + dg < r.size(); ++i) {
    long t = r[i];
    if (t == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) r[i + j] -= t * g[j];
  }
  for (std::size_t i = r.size() - dg; i < r.size(); ++i)
    if (r[i] != 0) return false;
  return true;
}

// Whether monic f (small coefficients) has a monic divisor of degree 1..deg/2,
// searched exhaustively over coefficients bounded by the binomial bound
// C(d, k) * M with M an upper bound for the Mahler measure of f.
inline bool has_small_divisor(const Polynomial& f) {
  auto c = small_coeffs(f);
  const int n = f.degree();
  long double l2 = 0;
  for (long v : c) l2 += static_cast<long double>(v) * v;
  const long double mahler = std::sqrt(l2);
  for (int d = 1; 2 * d <= n; ++d) {
    std::vector<long> bound(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
      long double binom = 1;
      for (int i = 0; i < k; ++i) binom = binom * (d - i) / (i + 1);
      bound[static_cast<std::size_t>(k)] = static_cast<long>(std::floor(binom * mahler + 1e-9));
    }
    std::vector<long> g(static_cast<std::size_t>(d) + 1, 0);
    g[0] = 1;
    std::function<bool(int)> rec = [&](int k) {
      if (k > d) return divides(g, c);
      for (long v = -bound[static_cast<std::size_t>(k)]; v <= bound[static_cast<std::size_t>(k)]; ++v) {
        g[static_cast<std::size_t>(k)] = v;
        if (rec(k + 1)) return true;
      }
      return false;
    };
    if (rec(1)) return true;
  }
  return false;
}

// All monic polynomials of the given degree with non-leading coefficients in
// [-h, h], in lexicographic order.
inline std::vector<Polynomial> all_monic(int degree, long h) {
  std::vector<Polynomial> out;
  std::vector<long> c(static_cast<std::size_t>(degree) + 1, -h);
  c[0] = 1;
  while (true) {
    std::vector<Integer> v(c.begin(), c.end());
    out.emplace_back(v);
    int i = degree;
    while (i >= 1 && c[static_cast<std::size_t>(i)] == h) c[static_cast<std::size_t>(i--)] = -h;
    if (i < 1) break;
    ++c[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace oracle

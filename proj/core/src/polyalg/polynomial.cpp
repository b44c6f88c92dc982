#include "polycensus/polyalg/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace polycensus::polyalg {

namespace {

using Ascending = std::vector<Integer>;

void trim(Ascending& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

const Integer& zero_integer() {
  static const Integer zero = 0;
  return zero;
}

}  // namespace

Polynomial::Polynomial(std::vector<Integer> leading_first) : coeffs_(std::move(leading_first)) {
  auto first_nonzero =
      std::find_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; });
  coeffs_.erase(coeffs_.begin(), first_nonzero);
}

Polynomial::Polynomial(std::initializer_list<long> leading_first) {
  std::vector<Integer> c;
  c.reserve(leading_first.size());
  for (long v : leading_first) c.emplace_back(v);
  *this = Polynomial(std::move(c));
}

Polynomial Polynomial::from_ascending(std::vector<Integer> ascending) {
  std::reverse(ascending.begin(), ascending.end());
  return Polynomial(std::move(ascending));
}

Polynomial Polynomial::constant(Integer c) { return Polynomial(std::vector<Integer>{std::move(c)}); }

Polynomial Polynomial::monomial(int degree) {
  std::vector<Integer> c(static_cast<std::size_t>(degree) + 1, 0);
  c[0] = 1;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::linear_root(const Integer& r) {
  return Polynomial(std::vector<Integer>{1, -r});
}

const Integer& Polynomial::leading() const {
  return coeffs_.empty() ? zero_integer() : coeffs_.front();
}

Integer Polynomial::coeff(int power) const {
  if (power < 0 || power > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(degree() - power)];
}

std::vector<Integer> Polynomial::ascending() const {
  return std::vector<Integer>(coeffs_.rbegin(), coeffs_.rend());
}

std::string Polynomial::to_list() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += coeffs_[i].get_str();
  }
  return out;
}

std::string Polynomial::to_expression() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Integer c = coeff(k);
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'x';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

std::strong_ordering lex_compare(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    int c = cmp(a.coeffs()[i], b.coeffs()[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Ascending x = a.ascending(), y = b.ascending();
  if (x.size() < y.size()) std::swap(x, y);
  for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
  trim(x);
  return Polynomial::from_ascending(std::move(x));
}

Polynomial operator-(const Polynomial& a) {
  std::vector<Integer> c = a.coeffs();
  for (auto& v : c) v = -v;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Ascending x = a.ascending(), y = b.ascending();
  Ascending r(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  }
  return Polynomial::from_ascending(std::move(r));
}

Polynomial operator*(const Integer& c, const Polynomial& a) {
  std::vector<Integer> v = a.coeffs();
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

Polynomial derivative(const Polynomial& f) {
  Ascending a = f.ascending();
  if (a.size() <= 1) return {};
  Ascending d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<unsigned long>(i);
  return Polynomial::from_ascending(std::move(d));
}

Integer evaluate(const Polynomial& f, const Integer& x) {
  Integer acc = 0;
  for (const auto& c : f.coeffs()) acc = acc * x + c;
  return acc;
}

Polynomial taylor_shift(const Polynomial& f, const Integer& shift) {
  // Horner in the ring Z[x]: ((c0)(x+s) + c1)(x+s) + ...
  Ascending a = f.ascending();
  const std::size_t n = a.size();
  if (n <= 1) return f;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 2; j + 1 > i; --j) {
      a[j] += shift * a[j + 1];
      if (j == 0) break;
    }
  }
  return Polynomial::from_ascending(std::move(a));
}

Polynomial scale_argument(const Polynomial& f, const Integer& scale) {
  Ascending a = f.ascending();
  Integer p = 1;
  for (auto& c : a) {
    c *= p;
    p *= scale;
  }
  trim(a);
  return Polynomial::from_ascending(std::move(a));
}

Integer content(const Polynomial& f) {
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial primitive_part(const Polynomial& f) {
  if (f.is_zero()) return f;
  Integer g = content(f);
  if (f.leading() < 0) g = -g;
  std::vector<Integer> c = f.coeffs();
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return Polynomial(std::move(c));
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& divisor) {
  if (divisor.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (f.is_zero()) return Polynomial{};
  if (f.degree() < divisor.degree()) return std::nullopt;
  Ascending r = f.ascending();
  Ascending d = divisor.ascending();
  const std::size_t dn = d.size() - 1;
  const Integer& lc = d.back();
  Ascending q(r.size() - dn, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer& top = r[k + dn];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    Integer t = top / lc;
    for (std::size_t j = 0; j <= dn; ++j) r[k + j] -= t * d[j];
    q[k] = std::move(t);
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (r[i] != 0) return std::nullopt;
  trim(q);
  return Polynomial::from_ascending(std::move(q));
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  Ascending r = a.ascending();
  Ascending d = b.ascending();
  const int dn = b.degree();
  const Integer& lc = d.back();
  int steps = a.degree() - dn + 1;
  int top = a.degree();
  while (steps-- > 0) {
    Integer t = r[static_cast<std::size_t>(top)];
    for (auto& c : r) c *= lc;
    if (t != 0) {
      for (int j = 0; j <= dn; ++j) r[static_cast<std::size_t>(top - dn + j)] -= t * d[static_cast<std::size_t>(j)];
    }
    --top;
  }
  r.resize(static_cast<std::size_t>(dn));
  trim(r);
  return Polynomial::from_ascending(std::move(r));
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  Polynomial x = primitive_part(a), y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Polynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? Polynomial{} : primitive_part(r);
  }
  return primitive_part(x);
}

Integer height(const Polynomial& f) {
  Integer h = 0;
  for (const auto& c : f.coeffs())
    if (mpz_cmpabs(c.get_mpz_t(), h.get_mpz_t()) > 0) h = abs(c);
  return h;
}

namespace {

// Fraction-free Gaussian elimination. Returns false on overflow so the caller
// can retry over mpz.
template <class T>
bool mul_ok(T a, T b, T& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

bool bareiss_i128(std::vector<std::vector<__int128>> m, __int128& det) {
  const std::size_t n = m.size();
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) {
        det = 0;
        return true;
      }
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 a, b, c;
        if (!mul_ok(m[i][j], m[k][k], a)) return false;
        if (!mul_ok(m[i][k], m[k][j], b)) return false;
        if (__builtin_sub_overflow(a, b, &c)) return false;
        m[i][j] = c / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  det = sign * m[n - 1][n - 1];
  return true;
}

Integer bareiss_mpz(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  int sign = 1;
  Integer prev = 1;
  Integer t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = m[i][j] * m[k][k];
        t -= m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Integer to_integer(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<unsigned long>(u >> 64);
  Integer lo = static_cast<unsigned long>(u & 0xffffffffffffffffULL);
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

bool fits_small(const Polynomial& f) {
  for (const auto& c : f.coeffs())
    if (!c.fits_slong_p() || mpz_cmpabs(c.get_mpz_t(), Integer(1L << 40).get_mpz_t()) > 0) return false;
  return true;
}

}  // namespace

Integer resultant(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of the zero polynomial");
  const int m = f.degree(), n = g.degree();
  if (m == 0 && n == 0) return 1;
  if (n == 0) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), g.leading().get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  if (m == 0) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), f.leading().get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (fits_small(f) && fits_small(g)) {
    std::vector<std::vector<__int128>> s(size, std::vector<__int128>(size, 0));
    for (int r = 0; r < n; ++r)
      for (int j = 0; j <= m; ++j) s[r][r + j] = f.coeffs()[j].get_si();
    for (int r = 0; r < m; ++r)
      for (int j = 0; j <= n; ++j) s[n + r][r + j] = g.coeffs()[j].get_si();
    __int128 det;
    if (bareiss_i128(std::move(s), det)) return to_integer(det);
  }
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, 0));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) s[r][r + j] = f.coeffs()[j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) s[n + r][r + j] = g.coeffs()[j];
  return bareiss_mpz(std::move(s));
}

Integer discriminant(const Polynomial& f) {
  if (f.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  const int n = f.degree();
  if (n == 1) return 1;
  Integer r = resultant(f, derivative(f));
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

namespace {

Polynomial normalize_sign(Polynomial p) {
  if (!p.is_zero() && p.leading() < 0) return -p;
  return p;
}

}  // namespace

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& f) {
  if (f.degree() < 1) return {};
  if (!f.is_monic()) throw std::invalid_argument("squarefree_decomposition expects a monic polynomial");
  // Yun's algorithm; every division is exact in Z[x] because the gcds are
  // primitive and f is monic.
  std::vector<std::pair<Polynomial, int>> out;
  Polynomial df = derivative(f);
  Polynomial a = gcd(f, df);
  Polynomial b = *divide_exact(f, a);
  Polynomial c = *divide_exact(df, a);
  Polynomial d = c - derivative(b);
  int k = 1;
  while (b.degree() > 0) {
    Polynomial ak = gcd(b, d);
    Polynomial bn = *divide_exact(b, ak);
    Polynomial cn = *divide_exact(d, ak);
    if (ak.degree() > 0) out.emplace_back(normalize_sign(ak), k);
    d = cn - derivative(bn);
    b = std::move(bn);
    ++k;
  }
  return out;
}

bool is_squarefree(const Polynomial& f) {
  if (f.degree() <= 1) return true;
  return gcd(f, derivative(f)).degree() == 0;
}

namespace {

using QPoly = std::vector<mpq_class>;  // ascending

void trim_q(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly rem_q(QPoly a, const QPoly& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    mpq_class t = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= t * b[j];
    a.pop_back();
    trim_q(a);
  }
  return a;
}

int sign_at_infinity(const QPoly& p, bool negative) {
  if (p.empty()) return 0;
  int s = sgn(p.back());
  if (negative && (p.size() - 1) % 2 == 1) s = -s;
  return s;
}

}  // namespace

int count_real_roots(const Polynomial& f) {
  if (f.degree() < 1) return 0;
  Polynomial sf = f;
  if (!is_squarefree(f)) sf = *divide_exact(f, gcd(f, derivative(f)));
  std::vector<QPoly> seq;
  auto to_q = [](const Polynomial& p) {
    QPoly q;
    for (const auto& c : p.ascending()) q.emplace_back(c);
    return q;
  };
  seq.push_back(to_q(sf));
  seq.push_back(to_q(derivative(sf)));
  while (seq.back().size() > 1) {
    QPoly r = rem_q(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  auto variations = [&](bool negative) {
    int v = 0, last = 0;
    for (const auto& p : seq) {
      int s = sign_at_infinity(p, negative);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  return variations(true) - variations(false);
}

std::vector<Integer> integer_roots(const Polynomial& f) {
  std::vector<Integer> roots;
  if (f.degree() < 1) return roots;
  std::vector<Integer> a = f.ascending();
  std::size_t low = 0;
  while (a[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (low + 1 == a.size()) return roots;
  Polynomial g = Polynomial::from_ascending(std::vector<Integer>(a.begin() + static_cast<long>(low), a.end()));
  // Cauchy bound on |root| for g divided by its leading coefficient.
  Integer h = 0;
  for (std::size_t i = 0; i + 1 < g.coeffs().size() + 0; ++i)
    if (mpz_cmpabs(g.coeffs()[i + 1].get_mpz_t(), h.get_mpz_t()) > 0) h = abs(g.coeffs()[i + 1]);
  Integer bound = h / abs(g.leading()) + 1;
  Integer c0 = abs(g.coeff(0));
  auto try_root = [&](const Integer& r) {
    if (evaluate(g, r) == 0) roots.push_back(r);
  };
  Integer d = 1;
  Integer d2 = 1;
  while (d <= bound && d2 <= c0) {
    if (mpz_divisible_p(c0.get_mpz_t(), d.get_mpz_t())) {
      try_root(d);
      try_root(-d);
      Integer e = c0 / d;
      if (e != d && e <= bound) {
        try_root(e);
        try_root(-e);
      }
    }
    ++d;
    d2 = d * d;
  }
  // Divisors e = c0/d with d > bound are all <= c0/bound, already covered
  // when bound^2 >= c0; otherwise they exceed bound and cannot be roots.
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

namespace {

// Strips square factors of small primes; returns the remaining cofactor,
// which has no prime factor below the cube root of the input.
Integer strip_small_primes(Integer& m, Integer& kernel, std::vector<Integer>* squares) {
  Integer p = 2;
  Integer p3 = 8;
  while (p3 <= m) {
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e % 2 == 1) kernel *= p;
    if (e >= 2 && squares) squares->push_back(p);
    p += (p == 2 ? 1 : 2);
    p3 = p * p * p;
  }
  return m;
}

}  // namespace

Integer squarefree_kernel(const Integer& n) {
  if (n == 0) return 0;
  Integer m = abs(n);
  Integer kernel = 1;
  Integer rest = strip_small_primes(m, kernel, nullptr);
  // rest has at most two prime factors, both above the cube root.
  if (rest > 1 && !is_perfect_square(rest)) kernel *= rest;
  return n < 0 ? Integer(-kernel) : kernel;
}

bool is_squarefree_integer(const Integer& n) {
  if (n == 0) return false;
  Integer k = squarefree_kernel(n);
  return mpz_cmpabs(k.get_mpz_t(), n.get_mpz_t()) == 0;
}

std::vector<Integer> square_divisor_primes(const Integer& n) {
  std::vector<Integer> out;
  if (n == 0) return out;
  Integer m = abs(n);
  Integer kernel = 1;
  Integer rest = strip_small_primes(m, kernel, &out);
  if (rest > 1 && is_perfect_square(rest)) out.push_back(sqrt(rest));
  return out;
}

}  // namespace polycensus::polyalg

#include "polycensus/polyalg/factor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polycensus/error.hpp"
#include "polycensus/polyalg/modp.hpp"
#include "polycensus/polyalg/roots.hpp"

namespace polycensus::polyalg {

std::set<int> admissible_factor_degrees(const Polynomial& f, int primes_to_use) {
  const int n = f.degree();
  std::set<int> allowed;
  for (int d = 1; d <= n; ++d) allowed.insert(d);
  int used = 0;
  for (std::size_t i = 0; i < 80 && used < primes_to_use && allowed.size() > 1; ++i) {
    auto pattern = factor_degrees_mod(f, nth_prime(i));
    if (!pattern) continue;
    ++used;
    std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
    reach[0] = true;
    for (int d : *pattern)
      for (int s = n; s >= d; --s)
        if (reach[static_cast<std::size_t>(s - d)]) reach[static_cast<std::size_t>(s)] = true;
    for (auto it = allowed.begin(); it != allowed.end();)
      it = reach[static_cast<std::size_t>(*it)] ? std::next(it) : allowed.erase(it);
  }
  return allowed;
}

namespace {

struct Orbit {
  int a = -1, b = -1;  // root indices; b < 0 for a real root
  int size() const { return b < 0 ? 1 : 2; }
};

enum class Verdict { kReject, kAccept, kAmbiguous };

// Searches divisors of a square-free monic polynomial among products of its
// certified roots.
class SubsetSearch {
 public:
  explicit SubsetSearch(Polynomial g) : cofactor_(std::move(g)) { compute_roots(1e-3); }

  const Polynomial& cofactor() const { return cofactor_; }

  std::optional<Polynomial> extract(int k) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      ambiguous_ = false;
      found_.reset();
      chosen_.clear();
      enumerate(0, k, 0.0, 0.0);
      if (found_) {
        Polynomial factor = *found_;
        cofactor_ = *divide_exact(cofactor_, factor);
        for (int idx : found_roots_) alive_[static_cast<std::size_t>(idx)] = false;
        rebuild_orbits();
        return factor;
      }
      if (!ambiguous_) return std::nullopt;
      // Some candidate could not be decided; tighten the disks.
      compute_roots(target_ * 1e-12);
    }
    throw NonConvergence("root-subset factorization could not resolve candidates");
  }

 private:
  void compute_roots(double hint) {
    target_ = std::min(decisive_root_radius(complex_roots(cofactor_, 1e-3)), hint);
    roots_ = complex_roots(cofactor_, target_);
    alive_.assign(roots_.roots.size(), true);
    rebuild_orbits();
  }

  void rebuild_orbits() {
    orbits_.clear();
    for (std::size_t i = 0; i < roots_.roots.size(); ++i) {
      if (!alive_[i]) continue;
      const auto& r = roots_.roots[i];
      if (r.real) {
        orbits_.push_back({static_cast<int>(i), -1});
      } else if (r.im.sign() > 0) {
        orbits_.push_back({static_cast<int>(i), r.conjugate});
      }
    }
  }

  void enumerate(std::size_t start, int remaining, double trace, double slack) {
    if (found_) return;
    if (remaining == 0) {
      double tol = slack + 1e-9;
      if (std::abs(trace - std::nearbyint(trace)) > tol) return;
      test_candidate();
      return;
    }
    for (std::size_t o = start; o < orbits_.size() && !found_; ++o) {
      const Orbit& orb = orbits_[o];
      if (orb.size() > remaining) continue;
      const auto& ra = roots_.roots[static_cast<std::size_t>(orb.a)];
      double t = ra.re.to_double() * orb.size();
      double s = ra.radius_upper() * orb.size() + 1e-15 * (1.0 + std::abs(t));
      chosen_.push_back(static_cast<int>(o));
      enumerate(o + 1, remaining - orb.size(), trace + t, slack + s);
      chosen_.pop_back();
    }
  }

  void test_candidate() {
    std::vector<int> members;
    for (int o : chosen_) {
      const Orbit& orb = orbits_[static_cast<std::size_t>(o)];
      members.push_back(orb.a);
      if (orb.b >= 0) members.push_back(orb.b);
    }
    std::vector<ComplexBall> zs;
    for (int idx : members) zs.push_back(roots_.roots[static_cast<std::size_t>(idx)].ball());
    RoundedProduct prod = product_of_linear_factors(zs, roots_.precision);
    if (prod.status == Rounding::kAmbiguous) ambiguous_ = true;
    if (prod.status != Rounding::kInteger) return;
    if (divide_exact(cofactor_, prod.poly)) {
      found_ = std::move(prod.poly);
      found_roots_ = std::move(members);
    }
  }

  Polynomial cofactor_;
  RootSet roots_;
  double target_ = 1e-3;
  std::vector<bool> alive_;
  std::vector<Orbit> orbits_;
  std::vector<int> chosen_;
  std::optional<Polynomial> found_;
  std::vector<int> found_roots_;
  bool ambiguous_ = false;
};

std::vector<Polynomial> factor_squarefree(const Polynomial& g) {
  std::vector<Polynomial> out;
  Polynomial rest = g;
  for (const auto& r : integer_roots(rest)) {
    Polynomial lin = Polynomial::linear_root(r);
    rest = *divide_exact(rest, lin);
    out.push_back(std::move(lin));
  }
  if (rest.degree() < 1) return out;
  if (rest.degree() == 1) {
    out.push_back(rest);
    return out;
  }
  auto proper = [&](const Polynomial& h) {
    auto allowed = admissible_factor_degrees(h);
    allowed.erase(h.degree());
    allowed.erase(1);  // integer roots were removed above
    return allowed;
  };
  if (proper(rest).empty()) {
    out.push_back(rest);
    return out;
  }
  SubsetSearch search(rest);
  int k = 2;
  while (search.cofactor().degree() >= 2 * k) {
    const Polynomial& h = search.cofactor();
    auto allowed = proper(h);
    auto it = allowed.lower_bound(k);
    if (it == allowed.end() || *it > h.degree() / 2) break;
    k = *it;
    if (auto fac = search.extract(k)) {
      out.push_back(std::move(*fac));
    } else {
      ++k;
    }
  }
  if (search.cofactor().degree() >= 1) out.push_back(search.cofactor());
  return out;
}

}  // namespace

std::vector<Factor> factor_over_Z(const Polynomial& f) {
  if (f.degree() < 1) throw std::invalid_argument("factor_over_Z needs degree >= 1");
  if (!f.is_monic()) throw std::invalid_argument("factor_over_Z expects a monic polynomial");
  std::vector<Factor> out;
  for (const auto& [part, mult] : squarefree_decomposition(f))
    for (auto& fac : factor_squarefree(part)) out.push_back({std::move(fac), mult});
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    auto c = lex_compare(a.poly, b.poly);
    if (c != 0) return c < 0;
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

namespace {

// f(r) mod p for small coefficients.
bool has_root_mod(const std::vector<long>& c, long p) {
  for (long r = 0; r < p; ++r) {
    long acc = 0;
    for (long v : c) acc = ((acc * r + v) % p + p) % p;
    if (acc == 0) return true;
  }
  return false;
}

}  // namespace

bool is_irreducible(const Polynomial& f) {
  if (!f.is_monic() || f.degree() < 1) return false;
  const int n = f.degree();
  if (n == 1) return true;
  bool small = true;
  std::vector<long> c;
  for (const auto& v : f.coeffs()) {
    if (!v.fits_slong_p()) {
      small = false;
      break;
    }
    c.push_back(v.get_si());
  }
  if (n <= 3) {
    // Reducible iff there is a linear factor; a root-free residue field
    // certifies irreducibility quickly.
    if (small)
      for (long p : {2L, 3L, 5L})
        if (!has_root_mod(c, p)) return true;
    return integer_roots(f).empty();
  }
  for (std::uint64_t p : {2u, 3u, 5u})
    if (is_irreducible_mod(f, p)) return true;
  if (!integer_roots(f).empty()) return false;
  auto factors = factor_over_Z(f);
  return factors.size() == 1 && factors.front().multiplicity == 1;
}

std::optional<Polynomial> find_factor_of_degree(const Polynomial& f, int degree) {
  if (degree < 1 || degree > f.degree()) return std::nullopt;
  if (degree == f.degree()) return f;
  auto allowed = admissible_factor_degrees(f);
  if (!allowed.count(degree)) return std::nullopt;
  SubsetSearch search(f);
  return search.extract(degree);
}

}  // namespace polycensus::polyalg

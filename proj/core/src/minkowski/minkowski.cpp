#include "polycensus/minkowski/minkowski.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

#include "polycensus/error.hpp"
#include "polycensus/polyalg/factor.hpp"
#include "polycensus/polyalg/mahler.hpp"
#include "polycensus/polyalg/modp.hpp"
#include "polycensus/polyalg/roots.hpp"

namespace polycensus::minkowski {

using namespace polyalg;
using cd = std::complex<double>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative gap below which a double comparison is not trusted.
constexpr double kTrustGap = 1e-9;
constexpr int kEmbedAttempts = 8;

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

Interval square(const Interval& x) {
  double a = std::abs(x.lo), b = std::abs(x.hi);
  double lo = x.contains(0.0) ? 0.0 : std::min(a, b);
  double hi = std::max(a, b);
  return {down(lo * lo), up(hi * hi)};
}

Interval mul_nonneg(const Interval& a, const Interval& b) { return {down(a.lo * b.lo), up(a.hi * b.hi)}; }

Interval at_least_one(const Interval& x) { return {std::max(1.0, x.lo), std::max(1.0, x.hi)}; }

// Width target, relaxed to a few ulps where doubles cannot do better.
bool fine(const Interval& x, double precision) {
  return x.width() <= std::max(precision, 8 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x.lo), std::abs(x.hi)));
}

void require_field_poly(const Polynomial& f) {
  if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("field polynomial must be monic of positive degree");
}

// Root disks of f in place order: real roots ascending, then one root per
// conjugate pair by ascending argument in the upper half-plane.
std::vector<const CertifiedRoot*> ordered_places(const RootSet& rs) {
  std::vector<const CertifiedRoot*> reals, complexes;
  for (const auto& r : rs.roots) {
    if (r.real)
      reals.push_back(&r);
    else if (r.im.sign() > 0)
      complexes.push_back(&r);
  }
  std::sort(reals.begin(), reals.end(),
            [](const CertifiedRoot* a, const CertifiedRoot* b) { return mpfr_less_p(a->re.get(), b->re.get()); });
  std::sort(complexes.begin(), complexes.end(), [](const CertifiedRoot* a, const CertifiedRoot* b) {
    return std::arg(a->approx()) < std::arg(b->approx());
  });
  reals.insert(reals.end(), complexes.begin(), complexes.end());
  return reals;
}

struct Places {
  std::vector<cd> theta;  // place order
  int r1 = 0;
  int n = 0;
};

Places approximate_places(const Polynomial& f) {
  RootSet rs = complex_roots(f, 1e-15);
  Places p;
  p.n = f.degree();
  for (const auto* r : ordered_places(rs)) {
    p.theta.push_back(r->approx());
    p.r1 += r->real;
  }
  return p;
}

cd evaluate_coords(const std::vector<long>& c, cd theta) {
  cd acc = 0;
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * theta + static_cast<double>(c[j]);
  return acc;
}

// ||E^-1||_inf for the real n x n embedding matrix of the power basis; the
// rows are the real places, then (Re, Im) of each complex place.
double inverse_embedding_norm(const Places& p) {
  Eigen::MatrixXd e(p.n, p.n);
  int row = 0;
  for (std::size_t k = 0; k < p.theta.size(); ++k) {
    const bool real = static_cast<int>(k) < p.r1;
    cd pw = 1;
    for (int j = 0; j < p.n; ++j) {
      e(row, j) = pw.real();
      if (!real) e(row + 1, j) = pw.imag();
      pw *= p.theta[k];
    }
    row += real ? 1 : 2;
  }
  Eigen::MatrixXd inv = e.inverse();
  return inv.cwiseAbs().rowwise().sum().maxCoeff();
}

// prod over all roots of f of (x - a(theta)): the characteristic polynomial
// of multiplication by a, integral by construction.
Polynomial characteristic_polynomial(const Polynomial& f, const std::vector<Integer>& coords) {
  Polynomial a = Polynomial::from_ascending(coords);
  double radius = 1e-20;
  for (int attempt = 0; attempt < kEmbedAttempts; ++attempt, radius *= 1e-10) {
    RootSet rs = complex_roots(f, radius);
    std::vector<ComplexBall> zs;
    for (const auto& r : rs.roots)
      for (int k = 0; k < r.multiplicity; ++k) zs.push_back(evaluate(a, r.ball(), rs.precision));
    RoundedProduct p = product_of_linear_factors(zs, rs.precision);
    if (p.status == Rounding::kInteger) return p.poly;
    if (p.status == Rounding::kNotInteger) break;
  }
  throw NonConvergence("characteristic polynomial did not round to integers");
}

Polynomial cyclotomic(int m) {
  std::vector<Integer> c(static_cast<std::size_t>(m) + 1, 0);
  c.front() = 1;
  c.back() = -1;
  Polynomial p(c);
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = *divide_exact(p, cyclotomic(d));
  return p;
}

int euler_phi(int m) {
  int r = m;
  for (int p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  if (m > 1) r -= r / m;
  return r;
}

// Monic q with every root in the closed unit disk: x^k times cyclotomics.
bool is_kronecker(Polynomial q) {
  while (q.degree() > 0 && q.coeff(0) == 0) q = *divide_exact(q, Polynomial{1, 0});
  const int d = q.degree();
  for (int m = 1; q.degree() > 0 && m <= 2 * d * d + 2; ++m) {
    if (euler_phi(m) > q.degree()) continue;
    Polynomial phi = cyclotomic(m);
    while (auto r = divide_exact(q, phi)) q = *r;
  }
  return q.degree() == 0;
}

void check_signature(const Polynomial& f, const RegionSpec& spec) {
  int r1 = count_real_roots(f);
  if (f.degree() != spec.degree() || r1 != spec.r1)
    throw std::invalid_argument("region signature does not match the field polynomial");
}

}  // namespace

AlgebraicInteger AlgebraicInteger::generator(const Polynomial& f) {
  std::vector<Integer> c(static_cast<std::size_t>(f.degree()), 0);
  if (c.size() > 1) c[1] = 1;
  return {f, c};
}

AlgebraicInteger AlgebraicInteger::rational(const Polynomial& f, const Integer& k) {
  std::vector<Integer> c(static_cast<std::size_t>(f.degree()), 0);
  c[0] = k;
  return {f, c};
}

Interval ComplexInterval::norm() const {
  Interval a = square(re), b = square(im);
  return {down(a.lo + b.lo), up(a.hi + b.hi)};
}

Interval ComplexInterval::abs() const {
  Interval n = norm();
  return {std::max(0.0, down(std::sqrt(n.lo))), up(std::sqrt(n.hi))};
}

std::vector<Interval> MinkowskiPoint::magnitudes() const {
  std::vector<Interval> out;
  for (const auto& x : reals) out.push_back({x.contains(0.0) ? 0.0 : std::min(std::abs(x.lo), std::abs(x.hi)),
                                             std::max(std::abs(x.lo), std::abs(x.hi))});
  for (const auto& z : complexes) out.push_back(z.abs());
  return out;
}

void RegionSpec::validate() const {
  if (!(Y >= 1.0) || !std::isfinite(Y)) throw std::invalid_argument("region requires Y >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("region requires delta > 0");
  if (r1 < 0 || r2 < 0 || r1 + r2 < 1) throw std::invalid_argument("region requires a signature with r1 + r2 >= 1");
}

MinkowskiPoint embed(const AlgebraicInteger& a, double precision) {
  require_field_poly(a.field_poly);
  if (static_cast<int>(a.coords.size()) > a.field_poly.degree())
    throw std::invalid_argument("more coordinates than the field degree");
  if (!(precision > 0.0)) throw std::invalid_argument("precision must be positive");
  Polynomial g = Polynomial::from_ascending(a.coords);
  double radius = precision * 1e-3;
  for (int attempt = 0; attempt < kEmbedAttempts; ++attempt, radius *= 1e-4) {
    RootSet rs = complex_roots(a.field_poly, radius);
    MinkowskiPoint x;
    bool narrow = true;
    for (const auto* r : ordered_places(rs)) {
      ComplexBall v = evaluate(g, r->ball(), rs.precision);
      Interval re = to_interval(v.re), im = to_interval(v.im);
      narrow = narrow && fine(re, precision) && (r->real || fine(im, precision));
      if (r->real)
        x.reals.push_back(re);
      else
        x.complexes.push_back({re, im});
    }
    if (narrow) return x;
  }
  throw NonConvergence("embedding did not reach the requested precision");
}

Interval house(const AlgebraicInteger& a, double precision) {
  Interval h{0.0, 0.0};
  for (const auto& m : embed(a, precision).magnitudes()) h = {std::max(h.lo, m.lo), std::max(h.hi, m.hi)};
  return h;
}

Interval point_mahler(const MinkowskiPoint& x) {
  Interval m{1.0, 1.0};
  for (const auto& r : x.reals) {
    Interval a = at_least_one({r.contains(0.0) ? 0.0 : std::min(std::abs(r.lo), std::abs(r.hi)),
                               std::max(std::abs(r.lo), std::abs(r.hi))});
    m = mul_nonneg(m, a);
  }
  for (const auto& z : x.complexes) m = mul_nonneg(m, at_least_one(z.norm()));
  return m;
}

LambdaResult lambda(const Polynomial& f) {
  require_field_poly(f);
  if (f.degree() < 2) throw std::invalid_argument("lambda needs a field of degree >= 2");
  if (!is_irreducible(f)) throw Reducible();
  if (!equation_order_is_maximal(f))
    throw PreconditionViolated("Z[alpha] is not the maximal order (Dedekind's criterion fails)");
  const Places p = approximate_places(f);
  const int n = p.n;
  auto house_of = [&](const std::vector<long>& c) {
    double h = 0.0;
    for (const auto& t : p.theta) h = std::max(h, std::abs(evaluate_coords(c, t)));
    return h;
  };
  const double norm = inverse_embedding_norm(p);
  std::vector<long> c(static_cast<std::size_t>(n), 0);
  c[1] = 1;
  double best = house_of(c);
  long bound = static_cast<long>(std::floor(norm * best * 1.01)) + 1;
  std::vector<std::vector<long>> near;
  auto tolerance = [](double v) { return v * kTrustGap + 1e-12; };

  // Coordinates from the top down; house(-a) = house(a), so the leading
  // nonzero coordinate above c_0 is taken positive.
  std::function<void(int, bool)> walk = [&](int j, bool any_nonzero) {
    if (j < 0) {
      if (!any_nonzero) return;
      double h = house_of(c);
      if (h <= best + tolerance(best)) {
        if (h < best) {
          best = h;
          bound = std::min(bound, static_cast<long>(std::floor(norm * best * 1.01)) + 1);
          std::erase_if(near, [&](const std::vector<long>& v) { return house_of(v) > best + tolerance(best); });
        }
        near.push_back(c);
      }
      return;
    }
    const long lo = (j >= 1 && !any_nonzero) ? 0 : -bound;
    for (long v = lo; v <= bound; ++v) {
      c[static_cast<std::size_t>(j)] = v;
      walk(j - 1, any_nonzero || (j >= 1 && v != 0));
    }
    c[static_cast<std::size_t>(j)] = 0;
  };
  walk(n - 1, false);

  LambdaResult out;
  out.value = {kInf, kInf};
  for (const auto& v : near) {
    AlgebraicInteger a{f, std::vector<Integer>(v.begin(), v.end())};
    Interval h = house(a, 1e-14);
    if (h.hi < out.value.hi) out.argmin = a;
    out.value = {std::min(out.value.lo, h.lo), std::min(out.value.hi, h.hi)};
  }
  return out;
}

namespace {

// Exact enumeration over Z^r1 x Z[i]^r2: every weight max(1, |x|^deg) is an
// integer, so prod <= Y iff prod <= floor(Y).
class StandardCounter {
 public:
  StandardCounter(const RegionSpec& spec, std::vector<RegionPoint>* dump) : spec_(spec), dump_(dump) {
    ymax_ = static_cast<std::uint64_t>(std::floor(spec.Y));
    real_big_ = static_cast<long>(std::ceil(spec.delta));
    long double d2 = static_cast<long double>(spec.delta) * spec.delta;
    norm_big_ = static_cast<std::uint64_t>(std::ceil(d2));
  }

  OmegaCount run() {
    coords_.clear();
    recurse(0, ymax_, 0, 0, 1);
    return out_;
  }

 private:
  static std::uint64_t isqrt(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  }

  // Gaussian integers of norm <= t.
  static std::uint64_t disk(std::uint64_t t) {
    std::uint64_t s = isqrt(t), n = 0;
    for (std::uint64_t a = 0; a <= s; ++a) n += (a ? 2 : 1) * (2 * isqrt(t - a * a) + 1);
    return n;
  }

  void add(int s1, int s2, std::uint64_t k) {
    out_.total += k;
    out_.cells[{s1, s2}] += k;
  }

  void emit(int s1, int s2, std::uint64_t weight) {
    RegionPoint p;
    p.coords = coords_;
    p.cell = {s1, s2};
    p.mahler = static_cast<double>(weight);
    double h = 0.0;
    for (int i = 0; i < spec_.r1; ++i) h = std::max(h, std::abs(static_cast<double>(coords_[static_cast<std::size_t>(i)])));
    for (int i = 0; i < spec_.r2; ++i) {
      double a = static_cast<double>(coords_[static_cast<std::size_t>(spec_.r1 + 2 * i)]);
      double b = static_cast<double>(coords_[static_cast<std::size_t>(spec_.r1 + 2 * i + 1)]);
      h = std::max(h, std::hypot(a, b));
    }
    p.house = h;
    dump_->push_back(std::move(p));
  }

  // t = floor(Y / weight so far).
  void recurse(int place, std::uint64_t t, int s1, int s2, std::uint64_t weight) {
    const int k = spec_.r1 + spec_.r2;
    if (place == k) {
      add(s1, s2, 1);
      if (dump_) emit(s1, s2, weight);
      return;
    }
    const bool last = place == k - 1 && !dump_;
    if (place < spec_.r1) {
      if (last) {
        std::uint64_t big = t >= static_cast<std::uint64_t>(real_big_) ? 2 * (t - static_cast<std::uint64_t>(real_big_) + 1) : 0;
        add(s1 + 1, s2, big);
        add(s1, s2, 2 * t + 1 - big);
        return;
      }
      for (std::uint64_t a = 0; a <= t; ++a) {
        const std::uint64_t w = std::max<std::uint64_t>(1, a);
        const bool big = static_cast<long>(a) >= real_big_;
        for (int sign : {1, -1}) {
          if (a == 0 && sign < 0) continue;
          coords_.push_back(sign * static_cast<long>(a));
          recurse(place + 1, t / w, s1 + big, s2, weight * w);
          coords_.pop_back();
        }
      }
      return;
    }
    if (last) {
      std::uint64_t all = disk(t);
      std::uint64_t small = norm_big_ == 0 ? 0 : disk(std::min(t, norm_big_ - 1));
      add(s1, s2 + 1, all - small);
      add(s1, s2, small);
      return;
    }
    const auto s = static_cast<long>(isqrt(t));
    for (long a = -s; a <= s; ++a) {
      const auto sb = static_cast<long>(isqrt(t - static_cast<std::uint64_t>(a * a)));
      for (long b = -sb; b <= sb; ++b) {
        const auto nrm = static_cast<std::uint64_t>(a * a + b * b);
        const std::uint64_t w = std::max<std::uint64_t>(1, nrm);
        coords_.push_back(a);
        coords_.push_back(b);
        recurse(place + 1, t / w, s1, s2 + (nrm >= norm_big_), weight * w);
        coords_.pop_back();
        coords_.pop_back();
      }
    }
  }

  const RegionSpec& spec_;
  std::vector<RegionPoint>* dump_;
  std::uint64_t ymax_ = 1;
  long real_big_ = 1;
  std::uint64_t norm_big_ = 1;
  std::vector<long> coords_;
  OmegaCount out_;
};

}  // namespace

OmegaCount omega_count(const RegionSpec& spec, std::vector<RegionPoint>* dump) {
  spec.validate();
  return StandardCounter(spec, dump).run();
}

bool mahler_at_most(const Polynomial& g, double Y) {
  Interval m = mahler_measure(g, std::max(1.0, Y) * 1e-12);
  if (m.hi <= Y) return true;
  if (m.lo > Y) return false;
  // Split g into the roots certainly outside the unit circle and the rest.
  // When the rest is a Kronecker polynomial, M(g) = |h(0)| exactly.
  RootSet coarse = complex_roots(g, 1e-3);
  RootSet rs = complex_roots(g, decisive_root_radius(coarse));
  std::vector<ComplexBall> outside;
  for (const auto& r : rs.roots) {
    ComplexBall b = r.ball();
    if (mpfr_cmp_ui(abs_lower(b).get(), 1) > 0)
      for (int k = 0; k < r.multiplicity; ++k) outside.push_back(b);
  }
  RoundedProduct h = product_of_linear_factors(outside, rs.precision);
  if (h.status == Rounding::kInteger) {
    auto q = divide_exact(g, h.poly);
    if (q && is_kronecker(*q)) return abs(h.poly.coeff(0)) <= Integer(std::floor(Y));
  }
  throw NonConvergence("could not decide M <= Y");
}

OmegaCount omega_count(const Polynomial& f, const RegionSpec& spec, std::vector<RegionPoint>* dump) {
  spec.validate();
  require_field_poly(f);
  check_signature(f, spec);
  const Places p = approximate_places(f);
  const int n = p.n;
  const double norm = inverse_embedding_norm(p);
  // m(x) <= Y forces |x_sigma| <= Y at every place.
  const long bound = static_cast<long>(std::floor(norm * spec.Y * 1.01)) + 1;
  OmegaCount out;
  std::vector<long> c(static_cast<std::size_t>(n), -bound);
  std::vector<double> mags(p.theta.size());
  while (true) {
    double m = 1.0, h = 0.0;
    for (std::size_t k = 0; k < p.theta.size(); ++k) {
      mags[k] = std::abs(evaluate_coords(c, p.theta[k]));
      h = std::max(h, mags[k]);
      const double w = static_cast<int>(k) < p.r1 ? mags[k] : mags[k] * mags[k];
      m *= std::max(1.0, w);
    }
    bool inside = m < spec.Y * (1 - kTrustGap);
    if (!inside && m <= spec.Y * (1 + kTrustGap))
      inside = mahler_at_most(characteristic_polynomial(f, std::vector<Integer>(c.begin(), c.end())), spec.Y);
    if (inside) {
      Cell cell{0, 0};
      std::vector<Interval> exact;
      for (std::size_t k = 0; k < mags.size(); ++k) {
        bool big = mags[k] >= spec.delta;
        if (std::abs(mags[k] - spec.delta) <= kTrustGap * std::max(1.0, spec.delta)) {
          if (exact.empty())
            exact = embed({f, std::vector<Integer>(c.begin(), c.end())}, 1e-30).magnitudes();
          if (exact[k].lo >= spec.delta)
            big = true;
          else if (exact[k].hi < spec.delta)
            big = false;
          else
            throw NonConvergence("place magnitude straddles delta");
        }
        if (big) (static_cast<int>(k) < p.r1 ? cell.first : cell.second)++;
      }
      ++out.total;
      ++out.cells[cell];
      if (dump) dump->push_back({c, cell, h, m});
    }
    int j = 0;
    while (j < n && c[static_cast<std::size_t>(j)] == bound) c[static_cast<std::size_t>(j++)] = -bound;
    if (j == n) break;
    ++c[static_cast<std::size_t>(j)];
  }
  return out;
}

VolumeEstimate omega_volume(const RegionSpec& spec) {
  spec.validate();
  using boost::math::quadrature::gauss_kronrod;
  const int k = spec.r1 + spec.r2;
  double top_error = 0.0;
  std::function<double(int, double, bool)> v = [&](int level, double y, bool top) -> double {
    if (level == 1) return y;
    if (y <= 1.0) return y;
    double err = 0.0;
    double integral = gauss_kronrod<double, 15>::integrate(
        [&](double s) { return v(level - 1, y * std::exp(-s), false) * std::exp(s); }, 0.0, std::log(y), 5, 1e-12,
        &err);
    if (top) top_error = err;
    return v(level - 1, y, false) + integral;
  };
  const double vk = v(k, spec.Y, true);
  const double scale = std::ldexp(1.0, spec.r1) * std::pow(std::numbers::pi, spec.r2);
  return {scale * vk, scale * (top_error + 1e-10 * k * vk)};
}

Interval lemma31_bound(const Polynomial& f) {
  require_field_poly(f);
  const int n = f.degree();
  RootSet rs = complex_roots(f, 1e-30);
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(rs.precision, 128);
  BigFloat hi(prec), lo(prec);
  for (const auto& r : rs.roots) {
    ComplexBall b = r.ball();
    BigFloat a = abs_upper(b), c = abs_lower(b);
    mpfr_max(hi.get(), hi.get(), a.get(), MPFR_RNDU);
    mpfr_max(lo.get(), lo.get(), c.get(), MPFR_RNDD);
  }
  const auto e = static_cast<unsigned long>(n * (n - 1));
  mpfr_mul_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
  mpfr_mul_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
  mpfr_pow_ui(hi.get(), hi.get(), e, MPFR_RNDU);
  mpfr_pow_ui(lo.get(), lo.get(), e, MPFR_RNDD);
  return {lo.to_double(MPFR_RNDD), hi.to_double(MPFR_RNDU)};
}

bool lemma31_check(const Polynomial& f) {
  require_field_poly(f);
  if (f.degree() < 2) throw std::invalid_argument("lemma31_check expects degree >= 2");
  Interval b = lemma31_bound(f);
  Integer d = abs(discriminant(f));
  // Doubles are exact on integers below 2^53; beyond, compare in MPFR.
  if (d.get_d() < 9.0e15 && b.hi < 9.0e15) return d.get_d() <= b.hi;
  BigFloat bound(b.hi, 64);
  return mpfr_cmp_z(bound.get(), d.get_mpz_t()) >= 0;
}

}  // namespace polycensus::minkowski

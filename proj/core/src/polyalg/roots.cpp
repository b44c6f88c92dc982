#include "polycensus/polyalg/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polycensus/error.hpp"

namespace polycensus::polyalg {

ComplexBall CertifiedRoot::ball() const {
  ComplexBall z = ComplexBall::exact(re, im);
  inflate(z.re, radius);
  inflate(z.im, radius);
  return z;
}

int RootSet::total_multiplicity() const {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

int RootSet::real_count() const {
  int n = 0;
  for (const auto& r : roots)
    if (r.real) n += r.multiplicity;
  return n;
}

double RootSet::max_radius() const {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, r.radius_upper());
  return m;
}

namespace {

using LComplex = std::complex<long double>;

struct BigComplex {
  BigFloat re, im;
  explicit BigComplex(mpfr_prec_t p) : re(p), im(p) {}
};


void cmul(BigComplex& out, const BigComplex& a, const BigComplex& b, BigFloat& t1, BigFloat& t2) {
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  BigFloat re(out.re.prec());
  mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), re.get());
}

// out = a / b
void cdiv(BigComplex& out, const BigComplex& a, const BigComplex& b, mpfr_prec_t p) {
  BigFloat den(p), t1(p), t2(p), re(p);
  mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t1.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), den.get(), t1.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(re.get(), re.get(), den.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), den.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), re.get());
}

long double to_ld(const Integer& c) {
  BigFloat t(80);
  mpfr_set_z(t.get(), c.get_mpz_t(), MPFR_RNDN);
  return mpfr_get_ld(t.get(), MPFR_RNDN);
}

std::vector<LComplex> aberth_long_double(const Polynomial& g) {
  const int n = g.degree();
  std::vector<long double> c(static_cast<std::size_t>(n) + 1);  // leading-first, monic
  const long double lc = to_ld(g.leading());
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = to_ld(g.coeffs()[static_cast<std::size_t>(i)]) / lc;
  if (n == 1) return {LComplex(-c[1], 0.0L)};
  long double radius = 0.0L;
  for (int k = 1; k <= n; ++k) {
    long double a = std::fabs(c[static_cast<std::size_t>(k)]);
    if (a > 0) radius = std::max(radius, std::pow(a, 1.0L / k));
  }
  radius = std::max(2.0L * radius, 1e-3L);
  std::vector<LComplex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    long double ang = 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(radius, ang);
  }
  for (int iter = 0; iter < 800; ++iter) {
    long double worst = 0.0L;
    for (int i = 0; i < n; ++i) {
      LComplex zi = z[static_cast<std::size_t>(i)];
      LComplex p = 1.0L, dp = 0.0L;
      for (int k = 1; k <= n; ++k) {
        dp = dp * zi + p;
        p = p * zi + c[static_cast<std::size_t>(k)];
      }
      if (p == LComplex(0)) continue;
      LComplex ratio = p / dp;
      LComplex s = 0.0L;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (zi - z[static_cast<std::size_t>(j)]);
      LComplex w = ratio / (1.0L - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[static_cast<std::size_t>(i)] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(zi)));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

// Refines approximations in place with Aberth steps at precision p.
void aberth_refine(const Polynomial& g, std::vector<BigComplex>& z, mpfr_prec_t p) {
  const int n = g.degree();
  std::vector<BigFloat> c;
  c.reserve(static_cast<std::size_t>(n) + 1);
  for (const auto& v : g.coeffs()) {
    BigFloat x(p);
    mpfr_set_z(x.get(), v.get_mpz_t(), MPFR_RNDN);
    c.push_back(std::move(x));
  }
  BigComplex pz(p), dp(p), tmp(p), ratio(p), s(p), w(p), one(p), diff(p), inv(p);
  BigFloat t1(p), t2(p), mag(p), scale(p);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  for (int iter = 0; iter < 80; ++iter) {
    BigFloat worst(64);
    for (int i = 0; i < n; ++i) {
      BigComplex& zi = z[static_cast<std::size_t>(i)];
      // p and p' by Horner.
      mpfr_set(pz.re.get(), c[0].get(), MPFR_RNDN);
      mpfr_set_zero(pz.im.get(), 1);
      mpfr_set_zero(dp.re.get(), 1);
      mpfr_set_zero(dp.im.get(), 1);
      for (int k = 1; k <= n; ++k) {
        cmul(tmp, dp, zi, t1, t2);
        mpfr_add(dp.re.get(), tmp.re.get(), pz.re.get(), MPFR_RNDN);
        mpfr_add(dp.im.get(), tmp.im.get(), pz.im.get(), MPFR_RNDN);
        cmul(tmp, pz, zi, t1, t2);
        mpfr_add(pz.re.get(), tmp.re.get(), c[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
        mpfr_set(pz.im.get(), tmp.im.get(), MPFR_RNDN);
      }
      if (mpfr_zero_p(pz.re.get()) && mpfr_zero_p(pz.im.get())) continue;
      if (mpfr_zero_p(dp.re.get()) && mpfr_zero_p(dp.im.get())) continue;
      cdiv(ratio, pz, dp, p);
      mpfr_set_zero(s.re.get(), 1);
      mpfr_set_zero(s.im.get(), 1);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        mpfr_sub(diff.re.get(), zi.re.get(), z[static_cast<std::size_t>(j)].re.get(), MPFR_RNDN);
        mpfr_sub(diff.im.get(), zi.im.get(), z[static_cast<std::size_t>(j)].im.get(), MPFR_RNDN);
        if (mpfr_zero_p(diff.re.get()) && mpfr_zero_p(diff.im.get())) continue;
        cdiv(inv, one, diff, p);
        mpfr_add(s.re.get(), s.re.get(), inv.re.get(), MPFR_RNDN);
        mpfr_add(s.im.get(), s.im.get(), inv.im.get(), MPFR_RNDN);
      }
      // w = ratio / (1 - ratio * s)
      cmul(tmp, ratio, s, t1, t2);
      mpfr_ui_sub(tmp.re.get(), 1, tmp.re.get(), MPFR_RNDN);
      mpfr_neg(tmp.im.get(), tmp.im.get(), MPFR_RNDN);
      if (mpfr_zero_p(tmp.re.get()) && mpfr_zero_p(tmp.im.get())) continue;
      cdiv(w, ratio, tmp, p);
      if (!mpfr_number_p(w.re.get()) || !mpfr_number_p(w.im.get())) continue;
      mpfr_sub(zi.re.get(), zi.re.get(), w.re.get(), MPFR_RNDN);
      mpfr_sub(zi.im.get(), zi.im.get(), w.im.get(), MPFR_RNDN);
      mpfr_hypot(mag.get(), w.re.get(), w.im.get(), MPFR_RNDN);
      mpfr_hypot(scale.get(), zi.re.get(), zi.im.get(), MPFR_RNDN);
      if (mpfr_cmp_ui(scale.get(), 1) < 0) mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
      mpfr_div(mag.get(), mag.get(), scale.get(), MPFR_RNDN);
      if (mpfr_cmp(mag.get(), worst.get()) > 0) mpfr_set(worst.get(), mag.get(), MPFR_RNDN);
    }
    if (worst.is_zero() || mpfr_get_exp(worst.get()) < -(p - 6)) break;
  }
}

struct Part {
  Polynomial poly;  // square-free
  int multiplicity;
  std::vector<BigComplex> approx;
};

// Inclusion radii for the approximations of a square-free part.
bool certify_part(const Part& part, mpfr_prec_t p, std::vector<CertifiedRoot>& out) {
  const Polynomial& g = part.poly;
  const int n = g.degree();
  std::vector<ComplexBall> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (const auto& z : part.approx) pts.push_back(ComplexBall::exact(z.re, z.im));
  BigFloat lc(kRadiusPrecision);
  mpfr_set_z(lc.get(), g.leading().get_mpz_t(), MPFR_RNDD);
  mpfr_abs(lc.get(), lc.get(), MPFR_RNDD);
  for (int i = 0; i < n; ++i) {
    const auto& zi = pts[static_cast<std::size_t>(i)];
    BigFloat num = abs_upper(evaluate(g, zi, p));
    ComplexBall prod = ComplexBall::exact(Integer(1), p);
    for (int j = 0; j < n; ++j)
      if (j != i) prod = mul(prod, sub(zi, pts[static_cast<std::size_t>(j)], p), p);
    BigFloat den = abs_lower(prod);
    mpfr_mul(den.get(), den.get(), lc.get(), MPFR_RNDD);
    if (den.is_zero()) return false;
    CertifiedRoot r;
    r.re = part.approx[static_cast<std::size_t>(i)].re;
    r.im = part.approx[static_cast<std::size_t>(i)].im;
    r.multiplicity = part.multiplicity;
    mpfr_mul_ui(num.get(), num.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_div(r.radius.get(), num.get(), den.get(), MPFR_RNDU);
    out.push_back(std::move(r));
  }
  return true;
}

// Lower bound on |a - b| for two disk centers, optionally conjugating a.
BigFloat center_distance_lower(const CertifiedRoot& a, const CertifiedRoot& b, bool conj_a) {
  mpfr_prec_t p = std::max(a.re.prec(), b.re.prec()) + 4;
  BigFloat dr(p), di(p);
  mpfr_sub(dr.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  if (conj_a)
    mpfr_add(di.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  else
    mpfr_sub(di.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  // Sums/differences of p-bit numbers are exact at p+4 bits only when the
  // exponents are close; account for rounding by shrinking slightly.
  BigFloat d(kRadiusPrecision);
  mpfr_hypot(d.get(), dr.get(), di.get(), MPFR_RNDD);
  BigFloat slack(kRadiusPrecision);
  mpfr_mul_2si(slack.get(), d.get(), -(p - 8), MPFR_RNDU);
  mpfr_sub(d.get(), d.get(), slack.get(), MPFR_RNDD);
  return d;
}

bool disks_disjoint(const CertifiedRoot& a, const CertifiedRoot& b, bool conj_a) {
  BigFloat d = center_distance_lower(a, b, conj_a);
  BigFloat s(kRadiusPrecision);
  mpfr_add(s.get(), a.radius.get(), b.radius.get(), MPFR_RNDU);
  return mpfr_cmp(d.get(), s.get()) > 0;
}

// Decides which disks hold real roots and pairs up conjugates. Works within
// one square-free part, whose root set is closed under conjugation.
bool classify_conjugates(std::vector<CertifiedRoot>& roots, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    auto& r = roots[i];
    std::vector<std::size_t> hits;
    for (std::size_t j = begin; j < end; ++j)
      if (!disks_disjoint(r, roots[j], true)) hits.push_back(j);
    if (hits.size() != 1) return false;
    r.conjugate = static_cast<int>(hits[0]);
    r.real = hits[0] == i;
  }
  for (std::size_t i = begin; i < end; ++i) {
    auto& r = roots[i];
    if (static_cast<std::size_t>(roots[static_cast<std::size_t>(r.conjugate)].conjugate) != i) return false;
    if (r.real) {
      // Move the center onto the real axis; the disk still holds the root.
      BigFloat shift(kRadiusPrecision);
      mpfr_abs(shift.get(), r.im.get(), MPFR_RNDU);
      mpfr_add(r.radius.get(), r.radius.get(), shift.get(), MPFR_RNDU);
      mpfr_set_zero(r.im.get(), 1);
    }
  }
  return true;
}

}  // namespace

RootSet complex_roots(const Polynomial& f, double target_radius) {
  return complex_roots(f, target_radius, kStartPrecision);
}

RootSet complex_roots(const Polynomial& f, double target_radius, mpfr_prec_t start_precision) {
  if (f.degree() < 1) throw std::invalid_argument("complex_roots needs degree >= 1");
  if (!(target_radius > 0)) throw std::invalid_argument("target radius must be positive");

  std::vector<Part> parts;
  {
    Polynomial monic = f;
    if (f.leading() < 0) monic = -f;
    if (monic.is_monic()) {
      for (auto& [s, k] : squarefree_decomposition(monic)) parts.push_back({s, k, {}});
    } else if (is_squarefree(monic)) {
      parts.push_back({monic, 1, {}});
    } else {
      throw std::invalid_argument("complex_roots: repeated roots require a monic input");
    }
  }

  for (auto& part : parts) {
    auto ld = aberth_long_double(part.poly);
    for (const auto& z : ld) {
      BigComplex b(start_precision);
      mpfr_set_ld(b.re.get(), z.real(), MPFR_RNDN);
      mpfr_set_ld(b.im.get(), z.imag(), MPFR_RNDN);
      part.approx.push_back(std::move(b));
    }
  }

  for (mpfr_prec_t p = start_precision; p <= kMaxPrecision; p *= 2) {
    RootSet set;
    set.precision = p;
    bool ok = true;
    for (auto& part : parts) {
      for (auto& z : part.approx) {
        z.re.set_prec(p);
        z.im.set_prec(p);
      }
      aberth_refine(part.poly, part.approx, p);
      std::size_t begin = set.roots.size();
      if (!certify_part(part, p, set.roots) || !classify_conjugates(set.roots, begin, set.roots.size())) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (std::size_t i = 0; ok && i < set.roots.size(); ++i)
      for (std::size_t j = i + 1; ok && j < set.roots.size(); ++j)
        if (!disks_disjoint(set.roots[i], set.roots[j], false)) ok = false;
    if (!ok || set.max_radius() > target_radius) continue;
    return set;
  }
  throw NonConvergence("root certification failed at " + std::to_string(kMaxPrecision) + " bits");
}

RoundedProduct product_of_linear_factors(const std::vector<ComplexBall>& zs, mpfr_prec_t prec) {
  std::vector<ComplexBall> coeff;  // ascending
  coeff.push_back(ComplexBall::exact(Integer(1), prec));
  for (const auto& z : zs) {
    std::vector<ComplexBall> next(coeff.size() + 1, ComplexBall(prec));
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      next[j + 1] = add(next[j + 1], coeff[j], prec);
      next[j] = sub(next[j], mul(z, coeff[j], prec), prec);
    }
    coeff = std::move(next);
  }
  std::vector<Integer> rounded;
  rounded.reserve(coeff.size());
  bool undecided = false;
  for (const auto& c : coeff) {
    if (!c.im.contains_zero()) return {};
    BigFloat r(prec);
    mpfr_rint(r.get(), c.re.mid.get(), MPFR_RNDN);
    BigFloat dist(prec);
    mpfr_sub(dist.get(), c.re.mid.get(), r.get(), MPFR_RNDA);
    mpfr_abs(dist.get(), dist.get(), MPFR_RNDU);
    if (mpfr_cmp(dist.get(), c.re.rad.get()) > 0) return {};
    if (mpfr_cmp_d(c.re.rad.get(), 0.25) >= 0 || mpfr_cmp_d(c.im.rad.get(), 0.5) >= 0) undecided = true;
    Integer z;
    mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
    rounded.push_back(std::move(z));
  }
  if (undecided) return {Rounding::kAmbiguous, {}};
  return {Rounding::kInteger, Polynomial::from_ascending(std::move(rounded))};
}

double decisive_root_radius(const RootSet& coarse) {
  double log2p = 0.0;
  for (const auto& r : coarse.roots)
    log2p += r.multiplicity * std::log2(1.0 + std::abs(r.approx()) + r.radius_upper());
  double n = coarse.total_multiplicity();
  return std::max(std::exp2(-(log2p + std::log2(n + 1) + 16)), 1e-300);
}

}  // namespace polycensus::polyalg

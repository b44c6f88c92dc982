#include "polycensus/polyalg/ball.hpp"

#include <algorithm>
#include <memory>

namespace polycensus::polyalg {

std::string BigFloat::to_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, v_);
  std::string out = s ? s : "";
  mpfr_free_str(s);
  return out;
}

namespace {

// Upper bound on the rounding error of a midpoint that was just rounded to
// nearest: half an ulp, taken as a full ulp for slack.
void add_rounding_error(BigFloat& rad, const BigFloat& value, int ternary) {
  if (ternary == 0 || value.is_zero()) return;
  BigFloat ulp(kRadiusPrecision);
  mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(value.get()) - value.prec(), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), ulp.get(), MPFR_RNDU);
}

BigFloat abs_mid_up(const RealBall& a) {
  BigFloat r(kRadiusPrecision);
  mpfr_abs(r.get(), a.mid.get(), MPFR_RNDU);
  return r;
}

}  // namespace

RealBall RealBall::exact(const Integer& v, mpfr_prec_t prec) {
  RealBall b(prec);
  int t = mpfr_set_z(b.mid.get(), v.get_mpz_t(), MPFR_RNDN);
  add_rounding_error(b.rad, b.mid, t);
  return b;
}

RealBall RealBall::exact(const BigFloat& v) {
  RealBall b(v.prec());
  mpfr_set(b.mid.get(), v.get(), MPFR_RNDN);
  return b;
}

RealBall RealBall::from_double(double v, mpfr_prec_t prec) {
  RealBall b(std::max<mpfr_prec_t>(prec, 53));
  mpfr_set_d(b.mid.get(), v, MPFR_RNDN);
  return b;
}

bool RealBall::contains_zero() const {
  return mpfr_cmpabs(mid.get(), rad.get()) <= 0;
}

double RealBall::lower_double() const {
  BigFloat t(mid.prec() + 8);
  mpfr_sub(t.get(), mid.get(), rad.get(), MPFR_RNDD);
  return t.to_double(MPFR_RNDD);
}

double RealBall::upper_double() const {
  BigFloat t(mid.prec() + 8);
  mpfr_add(t.get(), mid.get(), rad.get(), MPFR_RNDU);
  return t.to_double(MPFR_RNDU);
}

ComplexBall ComplexBall::exact(const BigFloat& re, const BigFloat& im) {
  ComplexBall z;
  z.re = RealBall::exact(re);
  z.im = RealBall::exact(im);
  return z;
}

ComplexBall ComplexBall::exact(const Integer& re, mpfr_prec_t prec) {
  ComplexBall z(prec);
  z.re = RealBall::exact(re, prec);
  return z;
}

RealBall add(const RealBall& a, const RealBall& b, mpfr_prec_t prec) {
  RealBall r(prec);
  int t = mpfr_add(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  mpfr_add(r.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  add_rounding_error(r.rad, r.mid, t);
  return r;
}

RealBall sub(const RealBall& a, const RealBall& b, mpfr_prec_t prec) {
  RealBall r(prec);
  int t = mpfr_sub(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  mpfr_add(r.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  add_rounding_error(r.rad, r.mid, t);
  return r;
}

RealBall mul(const RealBall& a, const RealBall& b, mpfr_prec_t prec) {
  RealBall r(prec);
  int t = mpfr_mul(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  BigFloat am = abs_mid_up(a), bm = abs_mid_up(b);
  BigFloat tmp(kRadiusPrecision);
  // |a| rb + |b| ra + ra rb
  mpfr_mul(r.rad.get(), am.get(), b.rad.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), bm.get(), a.rad.get(), MPFR_RNDU);
  mpfr_add(r.rad.get(), r.rad.get(), tmp.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(r.rad.get(), r.rad.get(), tmp.get(), MPFR_RNDU);
  add_rounding_error(r.rad, r.mid, t);
  return r;
}

RealBall neg(const RealBall& a) {
  RealBall r = a;
  mpfr_neg(r.mid.get(), r.mid.get(), MPFR_RNDN);
  return r;
}

void inflate(RealBall& a, const BigFloat& extra) {
  mpfr_add(a.rad.get(), a.rad.get(), extra.get(), MPFR_RNDU);
}

ComplexBall add(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec) {
  ComplexBall r;
  r.re = add(a.re, b.re, prec);
  r.im = add(a.im, b.im, prec);
  return r;
}

ComplexBall sub(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec) {
  ComplexBall r;
  r.re = sub(a.re, b.re, prec);
  r.im = sub(a.im, b.im, prec);
  return r;
}

ComplexBall mul(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec) {
  ComplexBall r;
  r.re = sub(mul(a.re, b.re, prec), mul(a.im, b.im, prec), prec);
  r.im = add(mul(a.re, b.im, prec), mul(a.im, b.re, prec), prec);
  return r;
}

ComplexBall add_integer(const ComplexBall& a, const Integer& c, mpfr_prec_t prec) {
  ComplexBall r = a;
  r.re = add(a.re, RealBall::exact(c, prec), prec);
  return r;
}

BigFloat abs_upper(const RealBall& x) {
  BigFloat r(x.mid.prec());
  mpfr_abs(r.get(), x.mid.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), x.rad.get(), MPFR_RNDU);
  return r;
}

BigFloat abs_lower(const RealBall& x) {
  BigFloat r(x.mid.prec());
  mpfr_abs(r.get(), x.mid.get(), MPFR_RNDD);
  mpfr_sub(r.get(), r.get(), x.rad.get(), MPFR_RNDD);
  if (r.sign() < 0) mpfr_set_zero(r.get(), 1);
  return r;
}

BigFloat abs_upper(const ComplexBall& z) {
  BigFloat a = abs_upper(z.re), b = abs_upper(z.im);
  mpfr_hypot(a.get(), a.get(), b.get(), MPFR_RNDU);
  return a;
}

BigFloat abs_lower(const ComplexBall& z) {
  BigFloat a = abs_lower(z.re), b = abs_lower(z.im);
  mpfr_hypot(a.get(), a.get(), b.get(), MPFR_RNDD);
  return a;
}

ComplexBall evaluate(const Polynomial& f, const ComplexBall& z, mpfr_prec_t prec) {
  ComplexBall acc(prec);
  for (const auto& c : f.coeffs()) acc = add_integer(mul(acc, z, prec), c, prec);
  return acc;
}

Interval to_interval(const RealBall& x) { return {x.lower_double(), x.upper_double()}; }

}  // namespace polycensus::polyalg

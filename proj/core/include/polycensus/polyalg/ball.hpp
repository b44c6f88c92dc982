#pragma once

// Midpoint-radius arithmetic over MPFR. A RealBall [m +/- r] is a rigorous
// enclosure: every operation rounds the midpoint to nearest and folds the
// rounding error into an upward-rounded radius.

#include <mpfr.h>

#include <string>

#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::polyalg {

inline constexpr mpfr_prec_t kRadiusPrecision = 32;

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec), mpfr_set_zero(v_, 1); }
  BigFloat(double x, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(const BigFloat& o) : BigFloat(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  void set_prec(mpfr_prec_t p) { mpfr_prec_round(v_, p, MPFR_RNDN); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t v_;
};

struct RealBall {
  BigFloat mid;
  BigFloat rad{kRadiusPrecision};

  RealBall() = default;
  explicit RealBall(mpfr_prec_t prec) : mid(prec) {}
  static RealBall exact(const Integer& v, mpfr_prec_t prec);
  static RealBall exact(const BigFloat& v);
  static RealBall from_double(double v, mpfr_prec_t prec);

  bool contains_zero() const;
  double lower_double() const;  // rounded down
  double upper_double() const;  // rounded up
};

struct ComplexBall {
  RealBall re, im;

  ComplexBall() = default;
  explicit ComplexBall(mpfr_prec_t prec) : re(prec), im(prec) {}
  static ComplexBall exact(const BigFloat& re, const BigFloat& im);
  static ComplexBall exact(const Integer& re, mpfr_prec_t prec);
};

RealBall add(const RealBall& a, const RealBall& b, mpfr_prec_t prec);
RealBall sub(const RealBall& a, const RealBall& b, mpfr_prec_t prec);
RealBall mul(const RealBall& a, const RealBall& b, mpfr_prec_t prec);
RealBall neg(const RealBall& a);
// Grows the radius by an extra upper bound.
void inflate(RealBall& a, const BigFloat& extra);

ComplexBall add(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec);
ComplexBall sub(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec);
ComplexBall mul(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec);
ComplexBall add_integer(const ComplexBall& a, const Integer& c, mpfr_prec_t prec);

// Rigorous bounds on |z|, rounded outward.
BigFloat abs_upper(const ComplexBall& z);
BigFloat abs_lower(const ComplexBall& z);
BigFloat abs_upper(const RealBall& x);
BigFloat abs_lower(const RealBall& x);

// Horner evaluation of an integer polynomial at a complex ball.
ComplexBall evaluate(const Polynomial& f, const ComplexBall& z, mpfr_prec_t prec);

/// Closed real interval with outward-rounded double endpoints.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

Interval to_interval(const RealBall& x);

}  // namespace polycensus::polyalg

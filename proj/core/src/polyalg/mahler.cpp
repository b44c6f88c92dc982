#include "polycensus/polyalg/mahler.hpp"

#include <cmath>
#include <stdexcept>

#include "polycensus/error.hpp"
#include "polycensus/polyalg/roots.hpp"

namespace polycensus::polyalg {

Interval mahler_measure(const Polynomial& f, double max_width) {
  if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("mahler_measure expects a monic polynomial of degree >= 1");
  // Landau: m(f) <= ||f||_2, used to size the root disks.
  double l2 = 0.0;
  for (const auto& c : f.coeffs()) l2 += c.get_d() * c.get_d();
  double target = max_width / (8.0 * f.degree() * (std::sqrt(l2) + 1.0));
  for (int attempt = 0; attempt < 6; ++attempt) {
    RootSet rs = complex_roots(f, target);
    const mpfr_prec_t p = 64;
    BigFloat lo(p), hi(p);
    mpfr_set_ui(lo.get(), 1, MPFR_RNDD);
    mpfr_set_ui(hi.get(), 1, MPFR_RNDU);
    for (const auto& r : rs.roots) {
      ComplexBall b = r.ball();
      BigFloat a_lo = abs_lower(b), a_hi = abs_upper(b);
      if (mpfr_cmp_ui(a_lo.get(), 1) < 0) mpfr_set_ui(a_lo.get(), 1, MPFR_RNDD);
      if (mpfr_cmp_ui(a_hi.get(), 1) < 0) mpfr_set_ui(a_hi.get(), 1, MPFR_RNDU);
      for (int k = 0; k < r.multiplicity; ++k) {
        mpfr_mul(lo.get(), lo.get(), a_lo.get(), MPFR_RNDD);
        mpfr_mul(hi.get(), hi.get(), a_hi.get(), MPFR_RNDU);
      }
    }
    Interval out{lo.to_double(MPFR_RNDD), hi.to_double(MPFR_RNDU)};
    if (out.width() <= max_width) return out;
    target *= 1e-3;
  }
  throw NonConvergence("Mahler measure interval did not reach the requested width");
}

bool jensen_bound_holds(const Polynomial& f) {
  Interval m = mahler_measure(f);
  Integer s = 0;
  for (const auto& c : f.coeffs()) s += c * c;
  // Compare hi^2 <= s exactly: hi is a double, so hi^2 fits in 106 bits.
  BigFloat h2(128);
  mpfr_set_d(h2.get(), m.hi, MPFR_RNDU);
  mpfr_sqr(h2.get(), h2.get(), MPFR_RNDU);
  return mpfr_cmp_z(h2.get(), s.get_mpz_t()) <= 0;
}

}  // namespace polycensus::polyalg

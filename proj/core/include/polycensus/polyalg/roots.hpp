#pragma once

#include <complex>
#include <vector>

#include "polycensus/polyalg/ball.hpp"
#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::polyalg {

inline constexpr mpfr_prec_t kStartPrecision = 64;
inline constexpr mpfr_prec_t kMaxPrecision = 4096;

/// One isolated root: the disk (center, radius) contains exactly
/// `multiplicity` roots counted with multiplicity. A multiplicity above one is
/// the cluster flag; it is only produced for genuinely repeated roots.
struct CertifiedRoot {
  BigFloat re, im;
  BigFloat radius{kRadiusPrecision};
  int multiplicity = 1;
  bool real = false;     // certified: the root is real
  int conjugate = -1;    // index of the conjugate root's disk (itself if real)

  bool is_cluster() const { return multiplicity > 1; }
  std::complex<double> approx() const { return {re.to_double(), im.to_double()}; }
  double radius_upper() const { return radius.to_double(MPFR_RNDU); }
  ComplexBall ball() const;
};

/// All roots of a polynomial in pairwise disjoint certified disks.
struct RootSet {
  std::vector<CertifiedRoot> roots;
  mpfr_prec_t precision = kStartPrecision;

  int total_multiplicity() const;
  int real_count() const;
  double max_radius() const;
};

/// Certified complex roots with every radius at most target_radius. Repeated
/// roots are handled through the square-free decomposition and reported as
/// clusters with their multiplicity. Precision starts at 64 bits and doubles
/// on failure; NonConvergence is thrown past 4096 bits.
RootSet complex_roots(const Polynomial& f, double target_radius);

// Same, starting the ladder at a caller-chosen precision.
RootSet complex_roots(const Polynomial& f, double target_radius, mpfr_prec_t start_precision);

enum class Rounding { kNotInteger, kAmbiguous, kInteger };

struct RoundedProduct {
  Rounding status = Rounding::kNotInteger;
  Polynomial poly;  // set when status is kInteger
};

/// prod (x - z_k) over the given balls. kNotInteger certifies that some
/// coefficient is not an integer. kInteger gives the only integer polynomial
/// the product can be; callers confirm it exactly (or know the product is
/// integral). kAmbiguous asks for tighter balls.
RoundedProduct product_of_linear_factors(const std::vector<ComplexBall>& zs, mpfr_prec_t prec);

/// Disk radius that makes product_of_linear_factors decisive for subsets of
/// the roots of f: 2^-(log2 prod(1 + |theta|) + log2(n + 1) + 16).
double decisive_root_radius(const RootSet& coarse);

}  // namespace polycensus::polyalg

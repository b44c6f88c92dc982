#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "polycensus/polyalg/ball.hpp"
#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::minkowski {

using polyalg::Integer;
using polyalg::Interval;
using polyalg::Polynomial;

inline constexpr double kDefaultPrecision = 1e-12;

/// sum coords[i] * alpha^i where alpha is a root of field_poly (monic,
/// irreducible). Only Z[alpha] is representable.
struct AlgebraicInteger {
  Polynomial field_poly;
  std::vector<Integer> coords;  // power basis 1, alpha, ..., alpha^(n-1)

  static AlgebraicInteger generator(const Polynomial& f);
  static AlgebraicInteger rational(const Polynomial& f, const Integer& k);
};

struct ComplexInterval {
  Interval re, im;

  Interval abs() const;
  Interval norm() const;  // |z|^2
};

/// Point of R^r1 x C^r2. Real places come first in ascending order of the
/// root, complex places follow by ascending argument of the root in the upper
/// half-plane.
struct MinkowskiPoint {
  std::vector<Interval> reals;
  std::vector<ComplexInterval> complexes;

  int r1() const { return static_cast<int>(reals.size()); }
  int r2() const { return static_cast<int>(complexes.size()); }
  // |x_sigma| for every place, in place order.
  std::vector<Interval> magnitudes() const;
};

struct RegionSpec {
  double Y = 1.0;
  double delta = 0.5;
  int r1 = 0;
  int r2 = 0;

  int degree() const { return r1 + 2 * r2; }
  void validate() const;  // throws std::invalid_argument
};

/// Embedding of a with every component narrower than precision.
MinkowskiPoint embed(const AlgebraicInteger& a, double precision = kDefaultPrecision);

/// max over places of |x_sigma|.
Interval house(const AlgebraicInteger& a, double precision = kDefaultPrecision);

/// prod over places of max(1, |x_sigma|^deg sigma).
Interval point_mahler(const MinkowskiPoint& x);

struct LambdaResult {
  Interval value;
  AlgebraicInteger argmin;
};

/// min house(alpha) over alpha in Z[alpha] \ Z, for irreducible f with
/// Z[alpha] = O_K (checked by Dedekind's criterion; PreconditionViolated
/// otherwise). Coordinates are bounded through the inverse embedding matrix:
/// ||c||_inf <= ||E^-1||_inf * house(alpha), so a box around the house of the
/// generator is exhaustive.
LambdaResult lambda(const Polynomial& f);

using Cell = std::pair<int, int>;  // (s1, s2)

struct OmegaCount {
  std::uint64_t total = 0;
  std::map<Cell, std::uint64_t> cells;
};

/// Point of a region enumeration, for dumps and property checks.
struct RegionPoint {
  std::vector<long> coords;  // standard lattice: reals, then (re, im) pairs
  Cell cell{0, 0};
  double house = 0.0;
  double mahler = 0.0;
};

/// Lattice points of Z^r1 x Z[i]^r2 in Omega_Y, split by how many real and
/// complex places have |x_sigma| >= delta. Exact integer arithmetic.
OmegaCount omega_count(const RegionSpec& spec, std::vector<RegionPoint>* dump = nullptr);

/// The same for the lattice Z[alpha] embedded through the roots of f, whose
/// signature must match spec. Comparisons that cannot be decided numerically
/// are settled exactly or escalate precision; NonConvergence past the cap.
OmegaCount omega_count(const Polynomial& f, const RegionSpec& spec, std::vector<RegionPoint>* dump = nullptr);

struct VolumeEstimate {
  double value = 0.0;
  double error = 0.0;  // absolute
};

/// vol(Omega_Y) = 2^r1 pi^r2 V_k(Y), k = r1 + r2, where V_k is the volume of
/// {u in [0, inf)^k : prod max(1, u_i) <= Y}, integrated numerically through
/// V_k(Y) = V_(k-1)(Y) + int_0^(log Y) V_(k-1)(Y e^-s) e^s ds.
VolumeEstimate omega_volume(const RegionSpec& spec);

/// (2 house(alpha))^(n(n-1)) for a root alpha of f, as a certified interval.
Interval lemma31_bound(const Polynomial& f);

/// |Disc(f)| <= (2 house(alpha))^(n(n-1)) against the upper endpoint.
bool lemma31_check(const Polynomial& f);

/// M(g) <= Y decided exactly when the interval straddles Y; g monic.
bool mahler_at_most(const Polynomial& g, double Y);

}  // namespace polycensus::minkowski

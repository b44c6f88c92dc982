#pragma once

#include <optional>
#include <set>
#include <vector>

#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::polyalg {

struct Factor {
  Polynomial poly;  // monic, irreducible over Q
  int multiplicity = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Complete factorization of a monic f over Z (equivalently Q), by root-subset
/// reconstruction: certified complex roots are grouped into conjugation-closed
/// subsets, candidate factors are rounded to integers and verified by exact
/// division. Factors are sorted by degree, then coefficients.
std::vector<Factor> factor_over_Z(const Polynomial& f);

/// True iff f is monic, of positive degree and factor_over_Z(f) is a single
/// factor of multiplicity one. Cheap exact shortcuts run first: irreducibility
/// modulo a small prime, integer roots, and the degree <= 3 case.
bool is_irreducible(const Polynomial& f);

/// Degrees d such that a square-free monic f could have a factor of degree d,
/// intersected over the factorization patterns of f modulo several unramified
/// primes. Always contains deg f.
std::set<int> admissible_factor_degrees(const Polynomial& f, int primes_to_use = 6);

/// A monic divisor of the square-free monic f with exactly the given degree,
/// if one exists. It is irreducible whenever f has no divisor of smaller
/// positive degree.
std::optional<Polynomial> find_factor_of_degree(const Polynomial& f, int degree);

}  // namespace polycensus::polyalg

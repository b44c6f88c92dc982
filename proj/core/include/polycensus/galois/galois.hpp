#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polycensus/galois/label.hpp"
#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::galois {

using polyalg::Integer;
using polyalg::Polynomial;

/// Degrees of the irreducible factors of f mod p, or a ramified marker when
/// p divides Disc(f). f monic.
Observation factor_degrees_mod_p(const Polynomial& f, std::uint32_t p);

/// The first `count` unramified observations in ascending prime order.
std::vector<Observation> unramified_observations(const Polynomial& f, int count);

/// Certified group of an irreducible f with 2 <= deg f <= 4: discriminant
/// test for cubics, cubic resolvent plus discriminant for quartics, and the
/// Kappe-Warren splitting test to separate C_4 from D_4. Throws Reducible.
GroupLabel galois_group_small(const Polynomial& f);

/// Certified S_n or A_n for irreducible f of degree n >= 5 from Frobenius
/// cycle types over unramified primes below prime_budget, or nullopt. Degrees
/// 5 and 6 use elimination against the complete transitive catalog; larger
/// degrees use Jordan's theorem with a prime cycle of length in (n/2, n-2).
/// Throws Reducible.
std::optional<GroupLabel> certify_Sn_An(const Polynomial& f, int prime_budget);

/// Maximum-posterior catalog group from the first sample_primes unramified
/// cycle types, after exact elimination. Degree 2 is answered exactly.
/// Throws Reducible; f must have degree <= 6.
GroupLabel heuristic_group(const Polynomial& f, int sample_primes);

/// True iff Q[x]/(f) is a normal extension. Throws Reducible.
bool is_galois_field(const Polynomial& f);

// The same operations without the irreducibility check, for callers that
// have already established it. disc is Disc(f).
GroupLabel galois_group_small_irreducible(const Polynomial& f, const Integer& disc);
std::optional<GroupLabel> certify_Sn_An_irreducible(const Polynomial& f, const Integer& disc, int prime_budget);
GroupLabel heuristic_group_irreducible(const Polynomial& f, const Integer& disc, int sample_primes);
bool is_galois_field_irreducible(const Polynomial& f);

/// Order of the named catalog group; 0 for "unknown".
long label_order(const GroupLabel& label);

}  // namespace polycensus::galois

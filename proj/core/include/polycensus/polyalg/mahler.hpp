#pragma once

#include "polycensus/polyalg/ball.hpp"
#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::polyalg {

inline constexpr double kDefaultMahlerWidth = 1e-9;

/// m(f) = prod over roots (with multiplicity) of max(1, |theta|), as a
/// certified interval of width at most max_width. f monic, deg f >= 1.
Interval mahler_measure(const Polynomial& f, double max_width = kDefaultMahlerWidth);

/// sqrt(1 + a_1^2 + ... + a_n^2) >= upper endpoint of m(f). A theorem check:
/// it holds for every monic integer polynomial.
bool jensen_bound_holds(const Polynomial& f);

}  // namespace polycensus::polyalg

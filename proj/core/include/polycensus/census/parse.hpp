#pragma once

#include <string_view>

#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::census {

using polyalg::Polynomial;

/// Reads a polynomial either as a leading-first integer list ("1,0,-3,-1",
/// optionally bracketed) or as an expression in one variable with integer
/// coefficients, ^ for powers and implicit multiplication ("x^3 - 3x - 1").
/// Throws ParseError with the offending offset. Monicity is not checked here.
Polynomial parse_poly(std::string_view text);

}  // namespace polycensus::census

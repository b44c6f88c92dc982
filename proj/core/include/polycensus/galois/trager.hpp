#pragma once

#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::galois {

using polyalg::Polynomial;

/// Norm of g(x - lambda*alpha) from Q(alpha)[x] down to Q, where alpha is a
/// root of f: Res_y(f(y), g(x - lambda*y)). f and g monic.
Polynomial trager_norm(const Polynomial& f, const Polynomial& g, long lambda);

/// Number of roots of g in Q[x]/(f), for irreducible f and g of equal degree.
///
/// The smallest lambda >= 1 with a square-free norm N is used. Every root of
/// g in the field gives an irreducible factor of N of degree deg f, and every
/// such factor arises this way. Candidate factors are the products
/// prod_i (x - beta_pi(i) - lambda*theta_i) over permutations pi; a candidate
/// counts only after it divides N exactly.
int count_roots_in_field(const Polynomial& f, const Polynomial& g);

/// Whether g has a root in Q[x]/(f); same preconditions.
bool has_root_in_field(const Polynomial& f, const Polynomial& g);

}  // namespace polycensus::galois

#ifndef APOLAR_FACTOR_HPP
#define APOLAR_FACTOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "apolar/upoly.hpp"

namespace apolar {

// Irreducible monic factors with multiplicities.  Over a prime field this is
// squarefree decomposition + distinct-degree + equal-degree splitting (the
// seed drives the equal-degree randomness); over the rationals, integer
// factorization with Hensel lifting.  Input must be nonzero.
std::vector<std::pair<UPoly, int>> factor(const UPoly& f, std::uint64_t seed = 1);

// Pairwise-coprime parts q_i = p_i^{e_i}, one per irreducible p_i of f.
std::vector<UPoly> coprime_power_parts(const UPoly& f, std::uint64_t seed = 1);

// Roots of f lying in its coefficient field.
std::vector<Fq> roots_in_field(const UPoly& f, std::uint64_t seed = 1);

} // namespace apolar

#endif

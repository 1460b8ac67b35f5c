#pragma once

// Independent, deliberately unoptimized re-implementations used to cross-check
// the main decision procedure. None of these call into cohomology.cpp or the
// witness search of bigness.cpp.

#include <cstdint>

#include "bigcheck/gmodule.hpp"

namespace bigcheck {

/// Fixed vectors of every element (not just the generators).
std::size_t naive_h0_dimension(const GModule &mod);

/// dim Z^1 - dim B^1 computed over the left Cayley graph. With
/// all_unknowns, every f(g) is an unknown and the equations are
/// f(s g) = f(s) + s f(g) for all generators s and all g.
std::size_t naive_h1_dimension(const GModule &mod, bool all_unknowns = false);

/// Subgroup generated by all elements of order prime to l is proper.
bool naive_has_l_power_quotient(const MatrixGroup &g);

} // namespace bigcheck

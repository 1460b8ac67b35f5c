#pragma once

// H^0 and H^1 of a finite matrix group with coefficients in a GModule.

#include <cstdint>
#include <vector>

#include "bigcheck/gmodule.hpp"

namespace bigcheck {

// Limit on the number of field entries held while propagating cocycles.
inline constexpr std::uint64_t kDefaultCohomologyBudget = 50'000'000;

struct CohomologyResult {
  int degree = 0;
  std::size_t dimension = 0;
  /// H^0: fixed vectors. H^1: cocycle values on the generators, concatenated
  /// (generator s occupies entries [s*dim, (s+1)*dim)), spanning a complement
  /// of the coboundaries inside the cocycles.
  std::vector<Vec> basis;
  bool fast_path_used = false;
  std::size_t cocycle_dimension = 0;   // dim Z^1 (degree 1 only)
  std::size_t coboundary_dimension = 0; // dim B^1 (degree 1 only)
};

CohomologyResult h0(const GModule &mod);

/// Cocycles are determined by their values on the generators; consistency
/// along every edge of the Cayley graph is both necessary and sufficient.
/// Throws BudgetExceeded when order * dim * (generators * dim) exceeds budget.
CohomologyResult h1(const GModule &mod, bool allow_fast_path = true,
                    std::uint64_t budget = kDefaultCohomologyBudget);

/// The conjugation action restricted to trace-zero matrices.
GModule sl_module(const Group &g);

/// Full cocycle table f(h) for every element from generator values.
std::vector<Vec> expand_cocycle(const GModule &mod, const Vec &generator_values);
/// Checks f(gh) = f(g) + g f(h) on every pair.
bool is_cocycle(const GModule &mod, const std::vector<Vec> &table);

} // namespace bigcheck

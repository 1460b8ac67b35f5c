#pragma once

// The M-bigness decision procedure: no l-power quotient, H^0 = H^1 = 0 on
// sl_n, and an eigenvalue witness for every irreducible submodule of gl_n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigcheck/cohomology.hpp"
#include "bigcheck/gmodule.hpp"

namespace bigcheck {

struct BignessOptions {
  /// Stop evaluating conditions after the first failure.
  bool short_circuit = false;
  std::size_t submodule_cap = kDefaultSubmoduleCap;
  std::uint64_t seed = kDefaultModuleSeed;
  /// Look for witnesses with alpha outside k for submodules lacking one in k.
  bool extension_witnesses = true;
  std::uint64_t cohomology_budget = kDefaultCohomologyBudget;
  bool timing = false;
};

/// (h, alpha) with alpha in k simple and M-separated, and basis element w of
/// W with pi_{h,alpha} w i_{h,alpha} != 0.
struct Witness {
  std::size_t h_index = 0;
  Elt alpha = 0;
  std::size_t basis_row = 0;
};

/// Informational: alpha in a proper extension of k.
struct ExtensionWitness {
  std::size_t h_index = 0;
  Elt alpha = 0; // code in the splitting field
  unsigned splitting_degree = 1;
};

struct WitnessEntry {
  Submodule submodule;
  bool scalar_line = false;
  std::optional<Witness> witness;
  std::optional<ExtensionWitness> extension;
};

struct BignessReport {
  std::size_t order = 0;
  Field field;
  std::size_t n = 0;
  unsigned M = 1;

  bool cond_quotient = false; // no l-power quotient
  bool cond_h0 = false;
  bool cond_h1 = false;
  bool cond_witnesses = false;
  bool evaluated_quotient = false, evaluated_h0 = false, evaluated_h1 = false,
       evaluated_witnesses = false;

  std::size_t abelianization = 0;
  std::size_t h0_dimension = 0;
  std::size_t h1_dimension = 0;
  bool h1_fast_path = false;

  std::vector<WitnessEntry> witness_table;
  /// Rank of the span of all admissible functionals X -> pi X i; the witness
  /// condition holds exactly when it equals n^2.
  std::size_t witness_span_rank = 0;
  /// Dimension of a stable subspace without any witness (0 when none).
  std::size_t witness_free_dimension = 0;
  bool truncated = false;
  bool exhaustive = true;
  bool big = false;
  double seconds = -1; // negative when timing is off

  std::string verdict() const { return big ? "big" : "not_big"; }
  /// Names of the failing conditions in evaluation order.
  std::vector<std::string> failing_conditions() const;
};

/// Admissible functionals of one element: u^T X v / (u . v) as an n^2 row
/// vector (row-major), with alpha. Empty when h has no admissible alpha in k.
struct Functional {
  Elt alpha = 0;
  Vec coefficients;
};
std::vector<Functional> admissible_functionals(const Matrix &h, unsigned M);

std::optional<Witness> find_witness(const MatrixGroup &g, const Submodule &w, unsigned M);

BignessReport check_m_big(const Group &g, unsigned M, const BignessOptions &opts = {});

/// Same contract, computed by deliberately independent code: exhaustive line
/// spinning for submodules, left-Cayley cohomology, the prime-to-l subgroup
/// for quotients and a direct (h, alpha, w) scan through the eigenspace maps.
/// Throws TooLargeForOracle above 5000 elements or 10^6 lines of gl_n.
BignessReport naive_oracle_check(const Group &g, unsigned M);

} // namespace bigcheck

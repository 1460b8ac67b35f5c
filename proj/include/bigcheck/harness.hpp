#pragma once

// The trichotomy experiment: check a corpus of labeled groups for bigness and
// attribute each non-big verdict to (1) failure of absolute irreducibility,
// (2) an induced structure (block system), or (3) a tensor factor of order
// prime to l. Anything else is flagged as unexplained, which is a finding
// rather than a failure: the theorem only covers l beyond a non-effective
// bound.

#include <optional>
#include <string>
#include <vector>

#include "bigcheck/json_io.hpp"

namespace bigcheck {

inline constexpr std::uint64_t kDefaultSubspaceBudget = 250'000;

/// m subspaces of dimension n/m (RREF bases) whose direct sum is k^n and which
/// every generator permutes.
using BlockSystem = std::vector<Matrix>;

/// Searches G-stable sets of m subspaces of dimension n/m (unions of orbits of
/// size <= m) for a direct-sum decomposition of k^n. Subspaces are visited in
/// RREF enumeration order, so the answer is deterministic. Throws
/// BudgetExceeded when there are more than budget subspaces.
std::optional<BlockSystem> find_block_system(const MatrixGroup &g, std::size_t m,
                                             std::uint64_t budget = kDefaultSubspaceBudget);
bool verify_block_system(const MatrixGroup &g, const BlockSystem &blocks);
/// Number of d-dimensional subspaces of F_q^n (saturating at UINT64_MAX).
std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t d);

struct TensorEvidence {
  std::string source; // "metadata" or "whole_group"
  std::vector<std::size_t> factor_orders; // metadata: orders prime to l
  std::size_t projective_order = 0;       // whole_group: |G| / #scalars
};
/// (a) construction metadata naming a tensor factor of order prime to l, or
/// (b) |G / scalars| prime to l. Full tensor factorization is not attempted.
std::optional<TensorEvidence> prime_to_l_tensor_evidence(const LabeledGroup &g);

enum class Classification { none, not_abs_irreducible, induced, tensor_prime_to_l, unexplained };
std::string to_string(Classification c);

struct TrichotomyRecord {
  std::size_t index = 0;
  LabeledGroup group;     // as constructed
  Group checked;          // k^x G, the group actually checked
  std::optional<BignessReport> report;
  Classification classification = Classification::none; // none when big
  std::vector<Classification> matched; // every alternative that applied
  std::optional<BlockSystem> blocks;
  std::optional<TensorEvidence> evidence;
  std::vector<std::string> notes;
  std::string error; // non-empty when the record failed
};

struct TrichotomyConfig {
  std::vector<std::uint64_t> primes;
  std::size_t n = 2;
  unsigned M = 1;
  std::uint64_t seed = kDefaultModuleSeed;
  std::size_t closure_cap = kDefaultClosureCap;
  std::size_t submodule_cap = kDefaultSubmoduleCap;
  std::uint64_t subspace_budget = kDefaultSubspaceBudget;
  std::vector<Json> families;
};
/// {"primes": [...], "n": 2, "M": 1, "seed": ..., "closure_cap": ...,
///  "submodule_cap": ..., "subspace_budget": ..., "families": [family, ...]}.
/// A family without "field" is instantiated once per prime; "random" takes
/// "count" in params and uses seeds seed, seed + 1, ...
TrichotomyConfig trichotomy_config_from_json(const Json &j);

struct TrichotomySummary {
  std::size_t total = 0, big = 0, not_big = 0, errors = 0;
  std::size_t not_abs_irreducible = 0, induced = 0, tensor_prime_to_l = 0, unexplained = 0;
  std::vector<std::size_t> unexplained_indices;
};

/// Classifies one labeled group (already built).
TrichotomyRecord classify_group(const LabeledGroup &g, unsigned M, const TrichotomyConfig &cfg,
                                std::size_t index = 0);

/// Runs the whole corpus; records are in corpus order for any job count.
std::vector<TrichotomyRecord> run_trichotomy(const TrichotomyConfig &cfg, unsigned jobs = 1);
TrichotomySummary summarize(const std::vector<TrichotomyRecord> &records);

Json record_to_json(const TrichotomyRecord &r);
Json summary_to_json(const TrichotomySummary &s);

} // namespace bigcheck

#pragma once

// Combinatorics behind the regular-element lemmas: Fourier transforms on
// Z/d computed exactly in Z[zeta_d], the convolution rank, the orbit-size
// bound, the forced-zero criterion, torus searches and the injectivity claim
// for digit vectors mod l^d - 1. Each lemma has a sweep that checks it on a
// grid.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigcheck/matrix.hpp"

namespace bigcheck {

/// Integer polynomial, ascending coefficients.
using IntPoly = std::vector<std::int64_t>;

/// d-th cyclotomic polynomial (exact division of x^d - 1).
IntPoly cyclotomic(unsigned d);

/// mu = (mu_0..mu_{d-1}) with |mu_i| <= N and at most Xi entries nonzero.
struct WeightProfile {
  std::vector<std::int64_t> mu;
  std::int64_t N = 1;
  std::size_t support_bound = 0; // Xi; 0 means untagged
  std::size_t d() const { return mu.size(); }
  std::size_t support() const;
  bool is_zero() const { return support() == 0; }
  /// |mu_i| <= N, and support <= Xi when tagged.
  bool valid() const;
};

/// sum_i zeta_d^(s i) mu_i as an element of Z[x]/Phi_d (reduced, degree < phi(d)).
IntPoly cyclotomic_sum(const std::vector<std::int64_t> &mu, std::uint64_t s);
/// Fourier coefficients mu^_j = sum_i zeta_d^(ij) mu_i, j = 0..d-1.
std::vector<IntPoly> cyclic_fourier(const std::vector<std::int64_t> &mu);
bool is_zero(const IntPoly &p);

struct ConvolutionRank {
  std::size_t fourier = 0;     // #{j : mu^_j != 0}
  std::size_t elimination = 0; // rank of the circulant over Q
};
/// Rank of convolution by mu on Q^d by both methods. Throws
/// PreconditionViolation if they disagree.
ConvolutionRank convolution_rank(const std::vector<std::int64_t> &mu);
/// Exact rank over Q of an integer matrix (fraction-free elimination).
std::size_t rational_rank(const std::vector<std::vector<std::int64_t>> &rows);

/// K = min over 3 <= n <= limit of phi(n) log log n / n.
double phi_constant(std::uint64_t limit = 1'000'000);
/// The threshold 2 Xi Omega^(1/K) N.
double lemma_threshold(double omega, std::size_t xi, std::int64_t n_bound, double k);

struct OrbitCheck {
  std::uint64_t orbit = 0; // #{h t : t in Z/(l^d - 1)}
  double bound = 0;        // (Omega^(1/q))^(d / log log d)
  bool pass = false;
};
/// Orbit of h = sum_j mu_j l^j in Z/(l^d - 1) against the bound. Requires
/// d >= 3 (log log d <= 0 below e) and l^d - 1 < 2^63. Throws
/// HypothesisFailed when sum_i zeta_d^(q i) mu_i = 0.
OrbitCheck orbit_size_bound_check(const std::vector<std::int64_t> &mu, std::uint64_t l,
                                  std::uint64_t q, double omega);

/// Prime powers p^k (k >= 1) dividing d and below n, ascending; 1 is
/// prepended when include_unit is set.
std::vector<std::uint64_t> prime_powers_dividing(std::uint64_t d, std::uint64_t n,
                                                 bool include_unit);

/// True iff both hypotheses hold: support < n - 1 and the sum over zeta_d^(q i)
/// vanishes for every q from prime_powers_dividing(d, n, include_unit).
bool forced_zero_check(const std::vector<std::int64_t> &mu, std::uint64_t n,
                       bool include_unit = true);

/// T* = prod_i F_(l^(d_i))^x inside F_(l^d)^x. A point t is an exponent vector
/// e with t_i = (g^c_i)^(e_i), g the primitive element of F_(l^d) and
/// c_i = (l^d - 1)/(l^(d_i) - 1).
struct TorusSpec {
  std::uint64_t l = 0;
  unsigned d = 1;
  std::vector<unsigned> degrees;
  std::uint64_t size() const;
};
/// Exponent data mu_(i,j) for component i and Frobenius twist j < d_i.
using TorusProfile = std::vector<std::vector<std::int64_t>>;

struct RegularSearch {
  std::optional<std::vector<std::uint64_t>> t; // first good point, exponents
  std::uint64_t collisions = 0;                // #{(mu, t) : mu(t)^M = 1, mu != 0}
  std::uint64_t torus_size = 0;
  double collision_fraction() const {
    return torus_size ? static_cast<double>(collisions) / static_cast<double>(torus_size) : 0;
  }
};
/// Scans T* (first coordinate fastest) for t with mu(t)^M != 1 for every
/// nonzero profile. Throws BudgetExceeded past budget profile evaluations.
RegularSearch search_regular_t(const TorusSpec &torus, const std::vector<TorusProfile> &profiles,
                               unsigned M, std::uint64_t budget = 100'000'000);
/// All profiles with entries in [-N, N] and at most Xi nonzero entries.
std::vector<TorusProfile> bounded_profiles(const TorusSpec &torus, std::int64_t N,
                                           std::size_t xi);

/// Diagonal g in GL_n(k), entries powers of the primitive element (first
/// coordinate fastest), whose weight values (prod_(i,j) g_ii^(l^j lambda_(i,j)))^M
/// are pairwise distinct. Weights are n x deg(k) exponent tables flattened
/// row-major. Throws NotFound when the torus is exhausted and BudgetExceeded
/// past budget points.
Matrix very_regular_element(const Field &f, std::size_t n,
                            const std::vector<std::vector<std::int64_t>> &weights, unsigned M,
                            std::uint64_t budget = 10'000'000);

struct NiveauCheck {
  bool injective = true;
  std::uint64_t r = 0; // first failing multiplier
  std::vector<std::int64_t> b1, b2;
};
/// For r = 1..N!, injectivity of b -> r sum b_i l^i mod (l^d - 1) on
/// [-Delta, Delta]^d. Throws BudgetExceeded when (2 Delta + 1)^d > 10^7.
NiveauCheck niveau_injectivity_check(std::uint64_t N, std::uint64_t delta, std::uint64_t l,
                                     unsigned d);

// Sweeps. Rows are in a fixed order independent of the job count.

struct OrbitRow {
  unsigned d;
  std::uint64_t l, q;
  std::size_t xi;
  std::int64_t N;
  double omega;
  std::vector<std::int64_t> mu;
  OrbitCheck result;
};
struct OrbitSweep {
  double k = 0;
  std::vector<OrbitRow> rows; // hypothesis-satisfying cases only
  std::uint64_t skipped_hypothesis = 0;
  std::uint64_t violations = 0;
};
/// Exhaustive over mu with support <= Xi, entries in [-N, N], prime powers
/// q | d (including 1), primes l in [l_min, l_max] above the threshold.
/// Omega = floor((l / (2 Xi N))^K).
OrbitSweep orbit_bound_sweep(const std::vector<unsigned> &ds, std::uint64_t l_min,
                             std::uint64_t l_max, const std::vector<std::size_t> &xis,
                             const std::vector<std::int64_t> &ns, unsigned jobs = 1);

struct ForcedZeroSweep {
  unsigned d_max = 0;
  std::uint64_t examined = 0;
  std::uint64_t hypotheses_hold = 0;
  std::vector<std::vector<std::int64_t>> counterexamples;
  /// Counterexamples when only p^k with k >= 1 are used.
  std::vector<std::vector<std::int64_t>> counterexamples_without_unit;
};
/// All mu in {-1,0,1}^d for 1 <= d <= d_max with Xi = d, n = Xi + 1.
ForcedZeroSweep forced_zero_sweep(unsigned d_max, unsigned jobs = 1);

struct ConvolutionRow {
  std::vector<std::int64_t> mu;
  ConvolutionRank rank;
};
/// Seeded random profiles, d in [1, d_max], entries in [-N, N].
std::vector<ConvolutionRow> convolution_sweep(std::size_t count, std::uint64_t seed,
                                              unsigned d_max = 24, std::int64_t N = 2,
                                              unsigned jobs = 1);

struct NiveauRow {
  std::uint64_t N, delta, l;
  unsigned d;
  NiveauCheck result;
};
/// Grid of (N, Delta, l, d) with l > (3 Delta + 2) N!, l^d - 1 <= max_modulus.
std::vector<NiveauRow> niveau_sweep(std::uint64_t n_max, std::uint64_t delta_max, unsigned d_max,
                                    std::uint64_t max_modulus = 1'000'000, unsigned jobs = 1);

struct RegularTRow {
  TorusSpec torus;
  std::int64_t N;
  std::size_t xi;
  unsigned M;
  std::size_t profile_count;
  RegularSearch result;
};
/// Small tori over primes in [l_min, l_max]: one or two components of degree
/// dividing d.
std::vector<RegularTRow> regular_t_sweep(const std::vector<std::uint64_t> &primes,
                                         std::int64_t N, std::size_t xi, unsigned M,
                                         unsigned jobs = 1);

std::uint64_t factorial(std::uint64_t n);

} // namespace bigcheck

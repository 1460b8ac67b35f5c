#pragma once

// Dense univariate polynomials over a FieldSpec, coefficients ascending.
// The zero polynomial is the empty vector; all results are trimmed.

#include <cstdint>
#include <utility>
#include <vector>

#include "bigcheck/ff.hpp"

namespace bigcheck {

using Poly = std::vector<Elt>;

inline constexpr std::uint64_t kDefaultSplitSeed = 0xB16;

namespace poly {

void trim(Poly &p);
int degree(const Poly &p);
bool is_zero(const Poly &p);
Poly constant(Elt c);
Poly x_power(std::size_t k);

Poly add(const FieldSpec &f, const Poly &a, const Poly &b);
Poly sub(const FieldSpec &f, const Poly &a, const Poly &b);
Poly mul(const FieldSpec &f, const Poly &a, const Poly &b);
Poly scale(const FieldSpec &f, const Poly &a, Elt c);
/// (quotient, remainder); b must be nonzero.
std::pair<Poly, Poly> divmod(const FieldSpec &f, const Poly &a, const Poly &b);
Poly mod(const FieldSpec &f, const Poly &a, const Poly &b);
Poly monic(const FieldSpec &f, const Poly &a);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const FieldSpec &f, Poly a, Poly b);
Poly derivative(const FieldSpec &f, const Poly &a);
Poly powmod(const FieldSpec &f, Poly base, std::uint64_t e, const Poly &m);
Poly mulmod(const FieldSpec &f, const Poly &a, const Poly &b, const Poly &m);
Elt eval(const FieldSpec &f, const Poly &p, Elt x);

/// Irreducibility over f (degree >= 1).
bool is_irreducible(const FieldSpec &f, const Poly &p);

} // namespace poly

struct Factor {
  Poly factor; // monic irreducible
  unsigned exponent;
};

/// Complete factorization into monic irreducibles, ordered by (degree, codes).
/// Equal-degree splitting uses a seeded generator so the output is
/// reproducible; the order of the result does not depend on the seed.
std::vector<Factor> factor_over(const FieldSpec &f, const Poly &p,
                                std::uint64_t seed = kDefaultSplitSeed);

/// Distinct roots in f of p (p nonzero), ascending by code.
std::vector<Elt> roots_in(const FieldSpec &f, const Poly &p,
                          std::uint64_t seed = kDefaultSplitSeed);

} // namespace bigcheck

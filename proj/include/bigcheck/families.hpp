#pragma once

// Constructors for subgroup families of GL_n(k), each tagged with how it was
// built so the trichotomy harness has ground truth to compare against.

#include <cstdint>
#include <string>
#include <vector>

#include "bigcheck/group.hpp"

namespace bigcheck {

struct LabeledGroup {
  Group group;
  /// reducible, imprimitive, tensor_product, iterated_tensor, sl_scalars,
  /// almost_simple_lift, binary_tetrahedral_tensor, induced_tensor, random
  std::string construction;
  /// Free-form description of the parameters, e.g. "n=2 d=1".
  std::string params;
  std::uint64_t seed = 0;

  /// reducible: basis (rows) of the declared stable subspace.
  Matrix declared_subspace;
  /// imprimitive: bases of the permuted summands.
  std::vector<Matrix> declared_blocks;
  /// tensor constructions: the factor groups, natural module = their tensor
  /// product.
  std::vector<Group> tensor_factors;
};

/// Generators of GL_n(k): a primitive diagonal entry and the elementary
/// transvections I + c E_ij with c running over an F_l-basis of k.
std::vector<Matrix> gl_generators(const Field &f, std::size_t n);
/// Transvection generators of SL_n(k).
std::vector<Matrix> sl_generators(const Field &f, std::size_t n);

/// Stabilizer of span(e_1..e_d) in GL_n(k). Requires 0 < d < n.
LabeledGroup reducible_group(const Field &f, std::size_t n, std::size_t d,
                             std::size_t cap = kDefaultClosureCap);
/// GL_b(k) wr S_m on k^(b m). Requires m >= 2.
LabeledGroup imprimitive_wreath(const Field &f, std::size_t block_dim, std::size_t m,
                                std::size_t cap = kDefaultClosureCap);
/// Group generated by g (x) I and I (x) h over the generators of both factors.
LabeledGroup tensor_central_product(const Group &g1, const Group &g2,
                                    std::size_t cap = kDefaultClosureCap);
/// Repeated tensor_central_product; needs at least two factors.
LabeledGroup iterated_tensor(const std::vector<Group> &factors,
                             std::size_t cap = kDefaultClosureCap);
/// SL_n(k) k^x.
LabeledGroup sl_scalars(const Field &f, std::size_t n, std::size_t cap = kDefaultClosureCap);

/// Binary tetrahedral group 2.A_4 in SL_2(F_l), l >= 5, from split quaternions.
Group binary_tetrahedral(const Field &f);
/// Binary octahedral 2.S_4; needs sqrt(2) in k. Throws NotFound otherwise.
Group binary_octahedral(const Field &f);
/// Binary icosahedral 2.A_5; needs sqrt(5) in k. Throws NotFound otherwise.
Group binary_icosahedral(const Field &f);
/// Reduction of a finite subgroup of SL_2 of characteristic zero: 2.A_5 when
/// sqrt(5) is in k, else 2.S_4 when sqrt(2) is, else 2.A_4. For n = 3 the image
/// under Sym^2. Requires characteristic at least 7 and n in {2, 3}.
LabeledGroup almost_simple_lift(const Field &f, std::size_t n,
                                std::size_t cap = kDefaultClosureCap);

/// Two copies of the standard representation of 2.A_4 tensored into GL_4(F_l).
/// Throws BadPrime for l <= 3.
LabeledGroup binary_tetrahedral_tensor(std::uint64_t l);
/// Dihedral models <diag(z, z^-1), swap> of the induced characters of orders
/// a and b, tensored into GL_4(k). Throws BadOrder unless a and b divide q-1.
LabeledGroup induced_tensor(const Field &f, std::uint64_t a, std::uint64_t b,
                            std::size_t cap = kDefaultClosureCap);

/// Closure of seeded random invertible matrices; deterministic per seed.
LabeledGroup random_subgroup(const Field &f, std::size_t n, std::size_t generator_count,
                             std::uint64_t seed, std::size_t cap = kDefaultClosureCap);

/// Structural spot-check of the construction tag against the group.
bool verify_construction(const LabeledGroup &g);

/// Action of a 2x2 matrix on Sym^2 (basis e1^2, e1 e2, e2^2).
Matrix sym2(const Matrix &a);

} // namespace bigcheck

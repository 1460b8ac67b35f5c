#pragma once

// k[G]-modules given by the action of each group generator, and the
// submodule machinery needed by the witness condition: spinning, splitting
// into composition factors (MeatAxe), Hom spaces and the enumeration of all
// irreducible submodules.

#include <cstdint>
#include <optional>
#include <vector>

#include "bigcheck/group.hpp"

namespace bigcheck {

inline constexpr std::size_t kDefaultSubmoduleCap = 10'000;
inline constexpr std::uint64_t kDefaultModuleSeed = 0xB16;
inline constexpr std::uint64_t kDefaultLineProbeLimit = 1'000'000;

/// Matrices act on column vectors: g . v = A_g v.
class GModule {
public:
  GModule(Group g, std::vector<Matrix> generator_actions);

  /// k^n with the defining action.
  static GModule natural(Group g);

  const Group &group() const { return group_; }
  const Field &field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix> &generator_actions() const { return gens_; }

  /// Action of group element i (composed along the closure tree).
  Matrix action(std::size_t element) const;
  /// Actions of all elements, indexed like the group.
  std::vector<Matrix> all_actions() const;

  bool is_stable(const Matrix &basis) const;
  /// Module on a stable subspace, coordinates relative to the RREF of basis.
  GModule restrict_to(const Matrix &basis) const;
  /// Quotient by a stable subspace; coordinates are the non-pivot positions.
  GModule quotient_by(const Matrix &basis) const;

private:
  Group group_;
  Field field_;
  std::size_t dim_;
  std::vector<Matrix> gens_;
};

/// gl_n with h . X = h X h^-1, basis E_ij in row-major order.
GModule conjugation_module(const Group &g);
/// Basis of the trace-zero matrices inside gl_n (rows, RREF).
Matrix sl_basis(const Field &f, std::size_t n);

/// Smallest stable subspace containing v, as an RREF basis. Throws ZeroVector.
Matrix spin(const GModule &mod, const Vec &v);
/// Spin using arbitrary matrices (no group needed).
Matrix spin_with(const std::vector<Matrix> &actions, const Vec &v);

struct Submodule {
  Matrix basis; // RREF rows in the coordinates of the ambient module
  std::size_t dim() const { return basis.rows(); }
  bool operator==(const Submodule &o) const { return basis == o.basis; }
};

struct Constituent {
  Submodule representative;
  std::size_t multiplicity = 0;   // in the socle
  std::size_t end_dimension = 1;  // k-dimension of End(W)
  std::uint64_t count = 0;        // (Q^m - 1)/(Q - 1) irreducibles isomorphic to W
};

struct SubmoduleList {
  std::vector<Constituent> constituents;
  std::vector<Submodule> all_irreducibles;
  bool enumerated = false; // all_irreducibles is populated
  bool truncated = false;
  std::uint64_t total_irreducibles() const;
};

/// Irreducible constituents of the socle, one per isomorphism class, with
/// multiplicities. Composition factors are found by MeatAxe splitting and
/// each embedded class by solving a Hom system, so the result is complete.
SubmoduleList socle_constituents(const GModule &mod, std::uint64_t seed = kDefaultModuleSeed);

/// Every irreducible submodule, parameterized per isotypic component by
/// projective lines over End(W). Components with more than cap members are
/// truncated and flagged.
SubmoduleList enumerate_irreducible_submodules(const GModule &mod,
                                               std::size_t cap = kDefaultSubmoduleCap,
                                               std::uint64_t seed = kDefaultModuleSeed);

/// Exhaustive oracle: spins every line and keeps the minimal spins.
/// Throws TooLargeForOracle past the line limit.
std::vector<Submodule> probe_irreducible_submodules(
    const GModule &mod, std::uint64_t line_limit = kDefaultLineProbeLimit);

/// Norton irreducibility test; throws BudgetExceeded if no decision is
/// reached within the attempt budget.
bool is_irreducible(const GModule &mod, std::uint64_t seed = kDefaultModuleSeed);
bool is_absolutely_irreducible(const GModule &mod, std::uint64_t seed = kDefaultModuleSeed);

/// Basis of Hom_G(A, B) as b x a matrices.
std::vector<Matrix> hom_space(const std::vector<Matrix> &a_actions,
                              const std::vector<Matrix> &b_actions);
/// Dimension of End_G(mod).
std::size_t endomorphism_dimension(const GModule &mod);

/// Composition factors as modules (in an arbitrary but deterministic basis).
std::vector<GModule> composition_factors(const GModule &mod,
                                         std::uint64_t seed = kDefaultModuleSeed);

} // namespace bigcheck

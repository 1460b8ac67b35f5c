#pragma once

// Finite matrix groups by full enumeration of the generated closure.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bigcheck/matrix.hpp"

namespace bigcheck {

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

class MatrixGroup;
using Group = std::shared_ptr<const MatrixGroup>;

class MatrixGroup {
public:
  /// Breadth-first closure of the generators under right multiplication.
  /// Element 0 is the identity; element i (i > 0) equals
  /// element(parent(i)) * generator(parent_generator(i)).
  static Group close(Field f, std::size_t n, std::vector<Matrix> generators,
                     std::size_t cap = kDefaultClosureCap);
  static Group close(std::vector<Matrix> generators, std::size_t cap = kDefaultClosureCap);

  const Field &field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t order() const { return count_; }
  std::size_t closure_cap() const { return cap_; }
  const std::vector<Matrix> &generators() const { return gens_; }
  std::size_t generator_count() const { return gens_.size(); }

  Matrix element(std::size_t i) const;
  std::span<const Elt> element_data(std::size_t i) const {
    return {flat_.data() + i * n_ * n_, n_ * n_};
  }
  std::optional<std::size_t> index_of(const Matrix &m) const;
  std::optional<std::size_t> index_of(std::span<const Elt> data) const;
  bool contains(const Matrix &m) const { return index_of(m).has_value(); }

  std::size_t parent(std::size_t i) const { return parent_[i]; }
  std::size_t parent_generator(std::size_t i) const { return parent_gen_[i]; }
  /// Index of element(i) * generator(s).
  std::size_t right_mul(std::size_t i, std::size_t s) const { return cayley_[i * gens_.size() + s]; }
  std::size_t inverse(std::size_t i) const { return inv_[i]; }
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::uint64_t element_order(std::size_t i) const;

  /// Number of scalar matrices in the group.
  std::size_t scalar_count() const;

private:
  MatrixGroup() = default;
  std::size_t lookup(std::span<const Elt> data, std::uint64_t h) const;
  void insert_slot(std::size_t idx, std::uint64_t h);
  void grow();
  std::uint64_t hash(std::span<const Elt> data) const;

  Field field_;
  std::size_t n_ = 0, count_ = 0, cap_ = kDefaultClosureCap;
  std::vector<Matrix> gens_;
  std::vector<Elt> flat_;
  std::vector<std::uint32_t> table_; // open addressing, stores index + 1
  std::vector<std::uint32_t> parent_, parent_gen_, cayley_, inv_;
};

/// |GL_n(F_q)|; throws TooLarge past 64 bits.
std::uint64_t gl_order(std::uint64_t q, std::size_t n);

/// Closure of a set of elements of G, as a membership mask over G's indices.
std::vector<bool> subgroup_closure(const MatrixGroup &g, const std::vector<std::size_t> &gens);

/// Derived subgroup [G,G] as a membership mask (normal closure of the
/// generator commutators).
std::vector<bool> derived_subgroup(const MatrixGroup &g);

std::size_t abelianization_order(const MatrixGroup &g);

/// Exact: a nontrivial l-group quotient surjects onto Z/l.
bool has_l_power_quotient(const MatrixGroup &g);

/// Closure of G together with all scalar matrices.
Group adjoin_scalars(const MatrixGroup &g, std::size_t cap = kDefaultClosureCap);

} // namespace bigcheck

#pragma once

// Finite fields F_{l^d} in a polynomial basis.
//
// Elements are encoded as integers  c_0 + c_1 l + ... + c_{d-1} l^{d-1}  with
// 0 <= c_i < l, where  c_0 + c_1 x + ... + c_{d-1} x^{d-1}  is the residue
// class modulo the defining polynomial. Hot loops work on these raw codes via
// the FieldSpec member functions; FieldElement is the checked value type for
// the public API.

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "bigcheck/errors.hpp"

namespace bigcheck {

using Elt = std::uint64_t;

inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kDiscreteLogBound = std::uint64_t{1} << 24;
// Fields up to this size get exp/log tables for multiplication.
inline constexpr std::uint64_t kTableBound = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

class FieldSpec {
public:
  /// Builds F_l[x]/(modulus). The modulus is checked for primality of l,
  /// monicity and irreducibility.
  FieldSpec(std::uint64_t l, std::vector<std::uint64_t> modulus);

  std::uint64_t characteristic() const { return l_; }
  unsigned degree() const { return d_; }
  std::uint64_t order() const { return q_; }
  const std::vector<std::uint64_t> &modulus() const { return modulus_; }

  bool operator==(const FieldSpec &o) const { return l_ == o.l_ && modulus_ == o.modulus_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt from_int(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(l_);
    return static_cast<Elt>(r < 0 ? r + static_cast<std::int64_t>(l_) : r);
  }
  /// The class of x (only meaningful for d > 1; equals 0 when d = 1).
  Elt generator_x() const { return d_ == 1 ? 0 : l_; }

  std::vector<std::uint64_t> coeffs(Elt a) const;
  Elt encode(std::span<const std::uint64_t> coeffs) const;
  bool in_prime_subfield(Elt a) const { return a < l_; }

  Elt add(Elt a, Elt b) const {
    if (d_ == 1) {
      Elt s = a + b;
      return s >= l_ ? s - l_ : s;
    }
    return add_slow(a, b);
  }
  Elt neg(Elt a) const {
    if (d_ == 1)
      return a == 0 ? 0 : l_ - a;
    return neg_slow(a);
  }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (d_ == 1)
      return static_cast<Elt>((static_cast<unsigned __int128>(a) * b) % l_);
    if (a == 0 || b == 0)
      return 0;
    if (!log_.empty()) {
      std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
      if (e >= q_ - 1)
        e -= q_ - 1;
      return exp_[e];
    }
    return mul_slow(a, b);
  }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t e) const;
  /// a^(l^i); i may exceed d.
  Elt frobenius(Elt a, unsigned i) const;

  /// Smallest generator of the multiplicative group, ordered by code.
  Elt primitive() const;
  /// e in [0, q-1) with g^e = x. g must be primitive.
  std::uint64_t discrete_log(Elt g, Elt x) const;
  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(Elt a) const;

  std::string name() const;

private:
  Elt add_slow(Elt a, Elt b) const;
  Elt neg_slow(Elt a) const;
  Elt mul_slow(Elt a, Elt b) const;
  void build_tables();

  std::uint64_t l_;
  unsigned d_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  Elt table_generator_ = 0;
  mutable std::once_flag primitive_once_;
  mutable Elt primitive_ = 0;
};

using Field = std::shared_ptr<const FieldSpec>;

/// F_{l^d} with the least monic irreducible modulus (ordered by code of the
/// non-leading coefficients). Calls with equal (l, d) return the same object.
Field make_field(std::uint64_t l, unsigned d, std::uint64_t bound = kDefaultFieldBound);

/// Field with an explicitly given modulus (validated). Returns the canonical
/// cached instance when the modulus matches the default one.
Field make_field_with_modulus(std::uint64_t l, std::vector<std::uint64_t> modulus);

bool same_field(const Field &a, const Field &b);
void require_same_field(const Field &a, const Field &b);

/// Checked element value type.
class FieldElement {
public:
  FieldElement() = default;
  FieldElement(Field f, Elt v) : field_(std::move(f)), value_(v) {}
  static FieldElement from_coeffs(Field f, std::span<const std::uint64_t> c);

  const Field &field() const { return field_; }
  Elt value() const { return value_; }
  std::vector<std::uint64_t> coeffs() const { return field_->coeffs(value_); }
  bool is_zero() const { return value_ == 0; }
  bool in_prime_subfield() const { return field_->in_prime_subfield(value_); }

  FieldElement operator+(const FieldElement &o) const;
  FieldElement operator-(const FieldElement &o) const;
  FieldElement operator*(const FieldElement &o) const;
  FieldElement operator/(const FieldElement &o) const;
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }
  bool operator==(const FieldElement &o) const {
    return same_field(field_, o.field_) && value_ == o.value_;
  }

  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
  FieldElement frobenius(unsigned i) const { return {field_, field_->frobenius(value_, i)}; }

private:
  Field field_;
  Elt value_ = 0;
};

enum class ArithOp { add, sub, mul, div };
FieldElement arith(const FieldElement &a, const FieldElement &b, ArithOp op);
FieldElement primitive_element(const Field &f);
std::uint64_t discrete_log(const FieldElement &g, const FieldElement &x);

} // namespace bigcheck

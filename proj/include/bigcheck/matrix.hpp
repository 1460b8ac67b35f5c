#pragma once

// Dense matrices over finite fields and the eigenvalue data used by the
// bigness witness condition.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bigcheck/ff.hpp"
#include "bigcheck/poly.hpp"

namespace bigcheck {

using Vec = std::vector<Elt>;

class Matrix {
public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elt> data);

  static Matrix identity(Field f, std::size_t n);
  static Matrix scalar(Field f, std::size_t n, Elt c);
  static Matrix from_rows(Field f, const std::vector<std::vector<std::int64_t>> &rows);

  const Field &field() const { return field_; }
  const FieldSpec &spec() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elt &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elt operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Elt> &data() const { return data_; }
  std::vector<Elt> &data() { return data_; }
  std::span<const Elt> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool operator==(const Matrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ && same_field(field_, o.field_);
  }

  Matrix operator*(const Matrix &o) const;
  Matrix operator+(const Matrix &o) const;
  Matrix operator-(const Matrix &o) const;
  Matrix scaled(Elt c) const;
  Matrix transpose() const;
  Vec apply(std::span<const Elt> v) const;

  bool is_identity() const;
  Elt trace() const;
  Elt det() const;
  std::size_t rank() const;
  /// Throws NotInvertible.
  Matrix inverse() const;
  /// Basis of {v : M v = 0} as rows of the result (cols() columns).
  Matrix kernel() const;
  /// Reduced row echelon form; pivots returned through the optional pointer.
  Matrix rref(std::vector<std::size_t> *pivots = nullptr) const;
  /// Re-expresses every entry in a larger field through an embedding map.
  template <class F> Matrix map_entries(Field target, F &&fn) const {
    Matrix r(target, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
      r.data_[i] = fn(data_[i]);
    return r;
  }

private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elt> data_;
};

Matrix kron(const Matrix &a, const Matrix &b);

/// Monic det(xI - m), ascending coefficients (Hessenberg reduction).
Poly charpoly(const Matrix &m);

/// Incrementally maintained semi-echelon basis of a subspace.
class EchelonBasis {
public:
  EchelonBasis(Field f, std::size_t dim) : field_(std::move(f)), dim_(dim) {}
  /// Reduces v in place against the basis; returns true when v ends up zero.
  bool reduce(Vec &v) const;
  /// Adds v if independent; returns whether it was added.
  bool insert(Vec v);
  bool contains(Vec v) const { return reduce(v); }
  std::size_t size() const { return rows_.size(); }
  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Vec> &rows() const { return rows_; }
  /// Canonical reduced echelon basis.
  Matrix canonical() const;

private:
  Field field_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Dimension of a vector-space intersection / sum helpers over row bases.
std::size_t span_rank(const Field &f, std::size_t dim, const std::vector<Vec> &vectors);

// ---------------------------------------------------------------------------
// Eigenvalue data

/// F_{l^(d e)} together with the image of the generator of F_{l^d}.
struct FieldEmbedding {
  Field base;
  Field target;
  Elt image_of_x = 0;
  Elt operator()(Elt a) const;
};

/// Embedding of base into F_{l^(d*e)} (root of the base modulus, smallest code).
FieldEmbedding embed_into_extension(const Field &base, unsigned e);

struct EigenRoot {
  Elt value = 0;       // in the splitting field
  unsigned multiplicity = 0;
  bool in_base = false;
  Elt base_value = 0;  // valid when in_base
};

struct EigenReport {
  Matrix element;
  Poly charpoly;                  // over the base field
  std::vector<Factor> factors;    // over the base field
  FieldEmbedding splitting;       // base -> splitting field
  unsigned splitting_degree = 1;  // [splitting field : base field]
  std::vector<EigenRoot> roots;   // distinct roots, base roots first then by code
  unsigned M = 1;
  /// Ordered pairs (i, j), i != j, of root indices with roots_i^M = roots_j^M.
  std::vector<std::pair<std::size_t, std::size_t>> m_separation;

  bool is_simple(std::size_t i) const { return roots[i].multiplicity == 1; }
  bool is_separated(std::size_t i) const;
};

EigenReport eigen_data(const Matrix &m, unsigned M, std::uint64_t bound = kDefaultFieldBound);

struct EigenspaceMaps {
  Matrix projection; // 1 x n
  Matrix injection;  // n x 1
};

/// Projection/injection for a simple eigenvalue alpha (alpha's field may be
/// an extension of m's field that contains it).
EigenspaceMaps eigenspace_maps(const Matrix &m, const FieldElement &alpha);
EigenspaceMaps eigenspace_maps(const Matrix &m, const FieldElement &alpha,
                               const FieldEmbedding &embedding);

} // namespace bigcheck

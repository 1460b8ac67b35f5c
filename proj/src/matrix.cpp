#include "bigcheck/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace bigcheck {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elt> data)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw PreconditionViolation("matrix data has wrong size");
}

Matrix Matrix::identity(Field f, std::size_t n) { return scalar(std::move(f), n, 1); }

Matrix Matrix::scalar(Field f, std::size_t n, Elt c) {
  Matrix m(std::move(f), n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = c;
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<std::int64_t>> &rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw PreconditionViolation("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = f->from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::operator*(const Matrix &o) const {
  require_same_field(field_, o.field_);
  if (cols_ != o.rows_)
    throw PreconditionViolation("matrix shapes do not match for product");
  const FieldSpec &f = *field_;
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elt a = (*this)(i, k);
      if (!a)
        continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r(i, j) = f.add(r(i, j), f.mul(a, o(k, j)));
    }
  return r;
}

Matrix Matrix::operator+(const Matrix &o) const {
  require_same_field(field_, o.field_);
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = field_->add(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix &o) const {
  require_same_field(field_, o.field_);
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = field_->sub(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::scaled(Elt c) const {
  Matrix r = *this;
  for (auto &x : r.data_)
    x = field_->mul(x, c);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r(j, i) = (*this)(i, j);
  return r;
}

Vec Matrix::apply(std::span<const Elt> v) const {
  const FieldSpec &f = *field_;
  Vec r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    Elt s = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j])
        s = f.add(s, f.mul((*this)(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

bool Matrix::is_identity() const {
  if (!square())
    return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u))
        return false;
  return true;
}

Elt Matrix::trace() const {
  Elt t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
    t = field_->add(t, (*this)(i, i));
  return t;
}

Matrix Matrix::rref(std::vector<std::size_t> *pivots) const {
  const FieldSpec &f = *field_;
  Matrix r = *this;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t p = row;
    while (p < rows_ && r(p, col) == 0)
      ++p;
    if (p == rows_)
      continue;
    if (p != row)
      for (std::size_t j = 0; j < cols_; ++j)
        std::swap(r(p, j), r(row, j));
    const Elt inv = f.inv(r(row, col));
    for (std::size_t j = col; j < cols_; ++j)
      r(row, j) = f.mul(r(row, j), inv);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row)
        continue;
      const Elt c = r(i, col);
      if (!c)
        continue;
      for (std::size_t j = col; j < cols_; ++j)
        r(i, j) = f.sub(r(i, j), f.mul(c, r(row, j)));
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots)
    *pivots = std::move(piv);
  return r;
}

std::size_t Matrix::rank() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return piv.size();
}

Elt Matrix::det() const {
  if (!square())
    throw PreconditionViolation("determinant of a non-square matrix");
  const FieldSpec &f = *field_;
  Matrix r = *this;
  Elt d = 1;
  const std::size_t n = rows_;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && r(p, col) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(r(p, j), r(col, j));
      d = f.neg(d);
    }
    d = f.mul(d, r(col, col));
    const Elt inv = f.inv(r(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const Elt c = f.mul(r(i, col), inv);
      if (!c)
        continue;
      for (std::size_t j = col; j < n; ++j)
        r(i, j) = f.sub(r(i, j), f.mul(c, r(col, j)));
    }
  }
  return d;
}

Matrix Matrix::inverse() const {
  if (!square())
    throw NotInvertible("non-square matrix");
  const std::size_t n = rows_;
  Matrix aug(field_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  Matrix r = aug.rref(&piv);
  if (piv.size() < n || piv[n - 1] != n - 1)
    throw NotInvertible("matrix is singular");
  Matrix inv(field_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = r(i, n + j);
  return inv;
}

Matrix Matrix::kernel() const {
  const FieldSpec &f = *field_;
  std::vector<std::size_t> piv;
  Matrix r = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : piv)
    is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free])
      continue;
    Vec v(cols_, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i)
      v[piv[i]] = f.neg(r(i, free));
    basis.push_back(std::move(v));
  }
  Matrix k(field_, basis.size(), cols_);
  for (std::size_t i = 0; i < basis.size(); ++i)
    std::copy(basis[i].begin(), basis[i].end(), k.data().begin() + static_cast<long>(i * cols_));
  return k;
}

Matrix kron(const Matrix &a, const Matrix &b) {
  require_same_field(a.field(), b.field());
  const FieldSpec &f = a.spec();
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elt x = a(i, j);
      if (!x)
        continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
    }
  return r;
}

Poly charpoly(const Matrix &m) {
  if (!m.square())
    throw PreconditionViolation("charpoly of a non-square matrix");
  const FieldSpec &f = m.spec();
  const std::size_t n = m.rows();
  Matrix h = m;
  // similarity transform to upper Hessenberg form
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t i = k;
    while (i < n && h(i, k - 1) == 0)
      ++i;
    if (i == n)
      continue;
    if (i != k) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(h(i, j), h(k, j));
      for (std::size_t j = 0; j < n; ++j)
        std::swap(h(j, i), h(j, k));
    }
    const Elt inv = f.inv(h(k, k - 1));
    for (std::size_t r = k + 1; r < n; ++r) {
      const Elt u = f.mul(h(r, k - 1), inv);
      if (!u)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        h(r, j) = f.sub(h(r, j), f.mul(u, h(k, j)));
      for (std::size_t j = 0; j < n; ++j)
        h(j, k) = f.add(h(j, k), f.mul(u, h(j, r)));
    }
  }
  // p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im (prod_{j=i+1}^{m} h_{j,j-1}) p_i
  std::vector<Poly> p(n + 1);
  p[0] = {1};
  for (std::size_t mm = 0; mm < n; ++mm) {
    Poly next = poly::mul(f, p[mm], Poly{f.neg(h(mm, mm)), 1});
    Elt prod = 1;
    for (std::size_t i = mm; i-- > 0;) {
      prod = f.mul(prod, h(i + 1, i));
      const Elt c = f.mul(prod, h(i, mm));
      if (c)
        next = poly::sub(f, next, poly::scale(f, p[i], c));
    }
    p[mm + 1] = std::move(next);
  }
  Poly out = p[n];
  out.resize(n + 1, 0);
  return out;
}

bool EchelonBasis::reduce(Vec &v) const {
  const FieldSpec &f = *field_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elt c = v[pivots_[i]];
    if (!c)
      continue;
    const Vec &r = rows_[i];
    for (std::size_t j = 0; j < dim_; ++j)
      if (r[j])
        v[j] = f.sub(v[j], f.mul(c, r[j]));
  }
  return std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; });
}

bool EchelonBasis::insert(Vec v) {
  if (reduce(v))
    return false;
  std::size_t p = 0;
  while (v[p] == 0)
    ++p;
  const Elt inv = field_->inv(v[p]);
  for (auto &x : v)
    x = field_->mul(x, inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

Matrix EchelonBasis::canonical() const {
  Matrix m(field_, rows_.size(), dim_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    std::copy(rows_[i].begin(), rows_[i].end(), m.data().begin() + static_cast<long>(i * dim_));
  return m.rref();
}

std::size_t span_rank(const Field &f, std::size_t dim, const std::vector<Vec> &vectors) {
  EchelonBasis b(f, dim);
  for (const auto &v : vectors)
    b.insert(v);
  return b.size();
}

// ---------------------------------------------------------------------------

Elt FieldEmbedding::operator()(Elt a) const {
  if (target == base)
    return a;
  const FieldSpec &t = *target;
  auto c = base->coeffs(a);
  Elt r = 0;
  for (std::size_t i = c.size(); i-- > 0;)
    r = t.add(t.mul(r, image_of_x), c[i]);
  return r;
}

FieldEmbedding embed_into_extension(const Field &base, unsigned e) {
  FieldEmbedding emb;
  emb.base = base;
  if (e == 1) {
    emb.target = base;
    emb.image_of_x = base->generator_x();
    return emb;
  }
  emb.target = make_field(base->characteristic(), base->degree() * e);
  if (base->degree() == 1) {
    emb.image_of_x = 0;
    return emb;
  }
  // prime-field codes coincide in every field of the same characteristic
  Poly m(base->modulus().begin(), base->modulus().end());
  auto roots = roots_in(*emb.target, m);
  if (roots.empty())
    throw PreconditionViolation("base modulus has no root in the extension");
  emb.image_of_x = roots.front();
  return emb;
}

bool EigenReport::is_separated(std::size_t i) const {
  return std::none_of(m_separation.begin(), m_separation.end(),
                      [i](const auto &pr) { return pr.first == i; });
}

EigenReport eigen_data(const Matrix &m, unsigned M, std::uint64_t bound) {
  if (!m.square())
    throw PreconditionViolation("eigen data of a non-square matrix");
  if (M == 0)
    throw PreconditionViolation("M must be positive");
  const Field &k = m.field();
  EigenReport rep;
  rep.element = m;
  rep.M = M;
  rep.charpoly = charpoly(m);
  rep.factors = factor_over(*k, rep.charpoly);
  unsigned e = 1;
  for (const auto &fa : rep.factors)
    e = std::lcm(e, static_cast<unsigned>(poly::degree(fa.factor)));
  long double size = 1;
  for (unsigned i = 0; i < k->degree() * e; ++i)
    size *= static_cast<long double>(k->characteristic());
  if (size > static_cast<long double>(bound))
    throw TooLarge("splitting field of degree " + std::to_string(k->degree() * e) + " over F_" +
                   std::to_string(k->characteristic()));
  rep.splitting_degree = e;
  rep.splitting = embed_into_extension(k, e);
  const FieldSpec &K = *rep.splitting.target;
  for (const auto &fa : rep.factors) {
    if (poly::degree(fa.factor) == 1) {
      EigenRoot r;
      r.base_value = k->neg(fa.factor[0]);
      r.value = rep.splitting(r.base_value);
      r.in_base = true;
      r.multiplicity = fa.exponent;
      rep.roots.push_back(r);
    }
  }
  std::sort(rep.roots.begin(), rep.roots.end(),
            [](const EigenRoot &a, const EigenRoot &b) { return a.base_value < b.base_value; });
  std::vector<EigenRoot> ext;
  for (const auto &fa : rep.factors) {
    if (poly::degree(fa.factor) == 1)
      continue;
    Poly mapped;
    for (auto c : fa.factor)
      mapped.push_back(rep.splitting(c));
    for (Elt root : roots_in(K, mapped)) {
      EigenRoot r;
      r.value = root;
      r.multiplicity = fa.exponent;
      ext.push_back(r);
    }
  }
  std::sort(ext.begin(), ext.end(),
            [](const EigenRoot &a, const EigenRoot &b) { return a.value < b.value; });
  rep.roots.insert(rep.roots.end(), ext.begin(), ext.end());
  std::vector<Elt> powers;
  for (const auto &r : rep.roots)
    powers.push_back(K.pow(r.value, M));
  for (std::size_t i = 0; i < powers.size(); ++i)
    for (std::size_t j = 0; j < powers.size(); ++j)
      if (i != j && powers[i] == powers[j])
        rep.m_separation.emplace_back(i, j);
  return rep;
}

EigenspaceMaps eigenspace_maps(const Matrix &m, const FieldElement &alpha,
                               const FieldEmbedding &embedding) {
  require_same_field(m.field(), embedding.base);
  require_same_field(alpha.field(), embedding.target);
  const Field &F = embedding.target;
  const FieldSpec &f = *F;
  const std::size_t n = m.rows();
  Matrix mm = m.map_entries(F, [&](Elt x) { return embedding(x); });
  // multiplicity of alpha as a root of the characteristic polynomial
  Poly cp = charpoly(mm);
  unsigned mult = 0;
  Poly lin{f.neg(alpha.value()), 1};
  for (;;) {
    auto [q, r] = poly::divmod(f, cp, lin);
    if (!r.empty())
      break;
    ++mult;
    cp = q;
  }
  if (mult != 1)
    throw NotSimpleRoot("eigenvalue has multiplicity " + std::to_string(mult));
  Matrix shifted = mm - Matrix::scalar(F, n, alpha.value());
  Matrix right = shifted.kernel();
  Matrix left = shifted.transpose().kernel();
  Vec v(right.row(0).begin(), right.row(0).end());
  Vec u(left.row(0).begin(), left.row(0).end());
  Elt dot = 0;
  for (std::size_t i = 0; i < n; ++i)
    dot = f.add(dot, f.mul(u[i], v[i]));
  const Elt inv = f.inv(dot);
  EigenspaceMaps maps{Matrix(F, 1, n), Matrix(F, n, 1)};
  for (std::size_t i = 0; i < n; ++i) {
    maps.projection(0, i) = f.mul(u[i], inv);
    maps.injection(i, 0) = v[i];
  }
  return maps;
}

EigenspaceMaps eigenspace_maps(const Matrix &m, const FieldElement &alpha) {
  if (same_field(m.field(), alpha.field()))
    return eigenspace_maps(m, alpha, embed_into_extension(m.field(), 1));
  const auto &K = alpha.field();
  if (K->characteristic() != m.spec().characteristic() || K->degree() % m.spec().degree() != 0)
    throw FieldMismatch("eigenvalue field does not extend the matrix field");
  auto emb = embed_into_extension(m.field(), K->degree() / m.spec().degree());
  require_same_field(emb.target, K);
  return eigenspace_maps(m, alpha, emb);
}

} // namespace bigcheck

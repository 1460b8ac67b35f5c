#include "bigcheck/group.hpp"

#include <algorithm>
#include <numeric>

namespace bigcheck {

namespace {

void mul_raw(const FieldSpec &f, std::size_t n, const Elt *a, const Elt *b, Elt *out) {
  const std::uint64_t l = f.characteristic();
  if (f.degree() == 1 && l < (std::uint64_t{1} << 28)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < n; ++k)
          s += a[i * n + k] * b[k * n + j];
        out[i * n + j] = s % l;
      }
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elt s = 0;
      for (std::size_t k = 0; k < n; ++k)
        s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
      out[i * n + j] = s;
    }
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t MatrixGroup::hash(std::span<const Elt> data) const {
  std::uint64_t h = 0x12345;
  for (Elt e : data)
    h = mix(h ^ e);
  return h;
}

std::size_t MatrixGroup::lookup(std::span<const Elt> data, std::uint64_t h) const {
  const std::size_t mask = table_.size() - 1;
  for (std::size_t slot = h & mask;; slot = (slot + 1) & mask) {
    std::uint32_t v = table_[slot];
    if (v == 0)
      return SIZE_MAX;
    auto cand = element_data(v - 1);
    if (std::equal(cand.begin(), cand.end(), data.begin()))
      return v - 1;
  }
}

void MatrixGroup::insert_slot(std::size_t idx, std::uint64_t h) {
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = h & mask;
  while (table_[slot])
    slot = (slot + 1) & mask;
  table_[slot] = static_cast<std::uint32_t>(idx + 1);
}

void MatrixGroup::grow() {
  table_.assign(table_.size() * 2, 0);
  for (std::size_t i = 0; i < count_; ++i)
    insert_slot(i, hash(element_data(i)));
}

Group MatrixGroup::close(std::vector<Matrix> generators, std::size_t cap) {
  if (generators.empty())
    throw PreconditionViolation("closure of an empty generator list needs a field and dimension");
  Field f = generators.front().field();
  std::size_t n = generators.front().rows();
  return close(std::move(f), n, std::move(generators), cap);
}

Group MatrixGroup::close(Field f, std::size_t n, std::vector<Matrix> generators,
                         std::size_t cap) {
  if (cap > UINT32_MAX - 1)
    throw PreconditionViolation("closure cap too large");
  for (const auto &g : generators) {
    if (!g.square() || g.rows() != n)
      throw PreconditionViolation("generator of the wrong shape");
    require_same_field(g.field(), f);
    if (g.det() == 0)
      throw NotInvertible("generator is singular");
  }
  // the trivial group keeps one (identity) generator so modules always have
  // an action matrix to carry their dimension
  if (generators.empty())
    generators.push_back(Matrix::identity(f, n));
  std::shared_ptr<MatrixGroup> G(new MatrixGroup());
  G->field_ = f;
  G->n_ = n;
  G->cap_ = cap;
  G->gens_ = std::move(generators);
  const std::size_t ng = G->gens_.size(), nn = n * n;
  const FieldSpec &k = *f;
  G->table_.assign(64, 0);

  Matrix id = Matrix::identity(f, n);
  G->flat_ = id.data();
  G->count_ = 1;
  G->parent_.push_back(0);
  G->parent_gen_.push_back(0);
  G->insert_slot(0, G->hash(G->element_data(0)));

  std::vector<Elt> prod(nn);
  for (std::size_t i = 0; i < G->count_; ++i) {
    for (std::size_t s = 0; s < ng; ++s) {
      mul_raw(k, n, G->flat_.data() + i * nn, G->gens_[s].data().data(), prod.data());
      const auto h = G->hash(prod);
      std::size_t j = G->lookup(prod, h);
      if (j == SIZE_MAX) {
        if (G->count_ >= cap)
          throw CapExceeded("group closure exceeded " + std::to_string(cap) + " elements");
        j = G->count_++;
        G->flat_.insert(G->flat_.end(), prod.begin(), prod.end());
        G->parent_.push_back(static_cast<std::uint32_t>(i));
        G->parent_gen_.push_back(static_cast<std::uint32_t>(s));
        if (2 * G->count_ > G->table_.size())
          G->grow();
        else
          G->insert_slot(j, h);
      }
      G->cayley_.push_back(static_cast<std::uint32_t>(j));
    }
  }

  // pair each element with its inverse
  G->inv_.assign(G->count_, UINT32_MAX);
  for (std::size_t i = 0; i < G->count_; ++i) {
    if (G->inv_[i] != UINT32_MAX)
      continue;
    auto inv = G->element(i).inverse();
    auto j = G->index_of(inv.data());
    G->inv_[i] = static_cast<std::uint32_t>(*j);
    G->inv_[*j] = static_cast<std::uint32_t>(i);
  }
  return G;
}

Matrix MatrixGroup::element(std::size_t i) const {
  auto d = element_data(i);
  return Matrix(field_, n_, n_, std::vector<Elt>(d.begin(), d.end()));
}

std::optional<std::size_t> MatrixGroup::index_of(std::span<const Elt> data) const {
  if (data.size() != n_ * n_)
    return std::nullopt;
  auto j = lookup(data, hash(data));
  if (j == SIZE_MAX)
    return std::nullopt;
  return j;
}

std::optional<std::size_t> MatrixGroup::index_of(const Matrix &m) const {
  if (!same_field(m.field(), field_) || m.rows() != n_ || m.cols() != n_)
    return std::nullopt;
  return index_of(std::span<const Elt>(m.data()));
}

std::size_t MatrixGroup::mul(std::size_t i, std::size_t j) const {
  std::vector<Elt> prod(n_ * n_);
  mul_raw(*field_, n_, element_data(i).data(), element_data(j).data(), prod.data());
  auto r = lookup(prod, hash(prod));
  if (r == SIZE_MAX)
    throw PreconditionViolation("product left the group");
  return r;
}

std::uint64_t MatrixGroup::element_order(std::size_t i) const {
  std::uint64_t k = 1;
  for (std::size_t x = i; x != 0; x = mul(x, i))
    ++k;
  return i == 0 ? 1 : k;
}

std::size_t MatrixGroup::scalar_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < count_; ++i) {
    auto d = element_data(i);
    bool scalar = true;
    for (std::size_t r = 0; r < n_ && scalar; ++r)
      for (std::size_t s = 0; s < n_ && scalar; ++s)
        scalar = r == s ? d[r * n_ + s] == d[0] : d[r * n_ + s] == 0;
    c += scalar;
  }
  return c;
}

std::uint64_t gl_order(std::uint64_t q, std::size_t n) {
  unsigned __int128 result = 1;
  const unsigned __int128 limit = UINT64_MAX;
  unsigned __int128 qn = 1;
  for (std::size_t i = 0; i < n; ++i) {
    qn *= q;
    if (qn > limit)
      throw TooLarge("|GL_n(F_q)| exceeds 64 bits");
  }
  unsigned __int128 qi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    result *= qn - qi;
    if (result > limit)
      throw TooLarge("|GL_n(F_q)| exceeds 64 bits");
    qi *= q;
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<bool> subgroup_closure(const MatrixGroup &g, const std::vector<std::size_t> &gens) {
  std::vector<bool> member(g.order(), false);
  std::vector<std::size_t> queue{0};
  member[0] = true;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t s : gens) {
      std::size_t p = g.mul(queue[q], s);
      if (!member[p]) {
        member[p] = true;
        queue.push_back(p);
      }
    }
  return member;
}

std::vector<bool> derived_subgroup(const MatrixGroup &g) {
  const std::size_t ng = g.generator_count();
  std::vector<std::size_t> gen_idx(ng);
  for (std::size_t s = 0; s < ng; ++s)
    gen_idx[s] = g.right_mul(0, s);
  std::vector<std::size_t> sub_gens;
  for (std::size_t a = 0; a < ng; ++a)
    for (std::size_t b = a + 1; b < ng; ++b) {
      std::size_t x = gen_idx[a], y = gen_idx[b];
      std::size_t c = g.mul(g.mul(g.inverse(x), g.inverse(y)), g.mul(x, y));
      if (c != 0)
        sub_gens.push_back(c);
    }
  auto member = subgroup_closure(g, sub_gens);
  // normal closure: conjugate the subgroup generators until stable
  for (std::size_t k = 0; k < sub_gens.size(); ++k)
    for (std::size_t s : gen_idx) {
      std::size_t c = g.mul(g.mul(g.inverse(s), sub_gens[k]), s);
      if (!member[c]) {
        sub_gens.push_back(c);
        member = subgroup_closure(g, sub_gens);
      }
    }
  return member;
}

std::size_t abelianization_order(const MatrixGroup &g) {
  auto member = derived_subgroup(g);
  std::size_t d = static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
  return g.order() / d;
}

bool has_l_power_quotient(const MatrixGroup &g) {
  return abelianization_order(g) % g.field()->characteristic() == 0;
}

Group adjoin_scalars(const MatrixGroup &g, std::size_t cap) {
  auto gens = g.generators();
  gens.push_back(Matrix::scalar(g.field(), g.n(), g.field()->primitive()));
  return MatrixGroup::close(g.field(), g.n(), std::move(gens), cap);
}

} // namespace bigcheck

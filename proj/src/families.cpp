#include "bigcheck/families.hpp"

#include <random>

namespace bigcheck {

namespace {

// F_l-basis of k as field codes: 1, x, x^2, ...
std::vector<Elt> prime_basis(const FieldSpec &f) {
  std::vector<Elt> out;
  for (unsigned i = 0; i < f.degree(); ++i) {
    std::vector<std::uint64_t> c(f.degree(), 0);
    c[i] = 1;
    out.push_back(f.encode(c));
  }
  return out;
}

Matrix transvection(const Field &f, std::size_t n, std::size_t i, std::size_t j, Elt c) {
  Matrix t = Matrix::identity(f, n);
  t(i, j) = c;
  return t;
}

Matrix embed_block(const Matrix &a, std::size_t n, std::size_t offset) {
  Matrix out = Matrix::identity(a.field(), n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(offset + i, offset + j) = a(i, j);
  return out;
}

Matrix permutation_matrix(const Field &f, const std::vector<std::size_t> &perm) {
  // column j maps e_j to e_perm[j]
  Matrix p(f, perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j)
    p(perm[j], j) = 1;
  return p;
}

std::optional<Elt> square_root(const FieldSpec &f, Elt c) {
  for (Elt x = 0; x < f.order(); ++x)
    if (f.mul(x, x) == c)
      return x;
  return std::nullopt;
}

void require_quaternion_char(const FieldSpec &f) {
  if (f.characteristic() < 5)
    throw BadPrime("binary polyhedral models need characteristic at least 5");
}

struct Quaternions {
  Field f;
  Matrix one, i, j, k;

  explicit Quaternions(const Field &field) : f(field) {
    const FieldSpec &s = *f;
    const std::uint64_t l = s.characteristic();
    // a^2 + b^2 = -1 always has a solution in F_l
    Elt a = 0, b = 0;
    bool found = false;
    for (Elt x = 0; x < l && !found; ++x)
      for (Elt y = 0; y < l && !found; ++y)
        if (s.add(s.mul(x, x), s.mul(y, y)) == s.neg(1)) {
          a = x;
          b = y;
          found = true;
        }
    one = Matrix::identity(f, 2);
    i = Matrix(f, 2, 2, {a, b, b, s.neg(a)});
    j = Matrix(f, 2, 2, {0, 1, s.neg(1), 0});
    k = i * j;
  }

  // (c0 + c1 i + c2 j + c3 k) / den
  Matrix unit(Elt c0, Elt c1, Elt c2, Elt c3, Elt den) const {
    Matrix m = one.scaled(c0) + i.scaled(c1) + j.scaled(c2) + k.scaled(c3);
    return m.scaled(f->inv(den));
  }
};

std::vector<Matrix> tetrahedral_generators(const Quaternions &q) {
  const FieldSpec &s = *q.f;
  return {q.i, q.j, q.unit(s.neg(1), 1, 1, 1, 2)};
}

Matrix kron_chain(const std::vector<Matrix> &parts) {
  Matrix out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = kron(out, parts[i]);
  return out;
}

bool in_span(const Matrix &basis, const Vec &v) {
  EchelonBasis e(basis.field(), basis.cols());
  for (std::size_t r = 0; r < basis.rows(); ++r)
    e.insert(Vec(basis.row(r).begin(), basis.row(r).end()));
  return e.contains(v);
}

} // namespace

std::vector<Matrix> gl_generators(const Field &f, std::size_t n) {
  std::vector<Matrix> gens = sl_generators(f, n);
  Matrix d = Matrix::identity(f, n);
  d(0, 0) = f->primitive();
  gens.insert(gens.begin(), d);
  return gens;
}

std::vector<Matrix> sl_generators(const Field &f, std::size_t n) {
  std::vector<Matrix> gens;
  for (Elt c : prime_basis(*f))
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j)
          gens.push_back(transvection(f, n, i, j, c));
  return gens;
}

LabeledGroup reducible_group(const Field &f, std::size_t n, std::size_t d, std::size_t cap) {
  if (d == 0 || d >= n)
    throw PreconditionViolation("reducible_group needs 0 < d < n");
  std::vector<Matrix> gens;
  for (const auto &g : gl_generators(f, d))
    gens.push_back(embed_block(g, n, 0));
  for (const auto &g : gl_generators(f, n - d))
    gens.push_back(embed_block(g, n, d));
  for (Elt c : prime_basis(*f))
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = d; j < n; ++j)
        gens.push_back(transvection(f, n, i, j, c));
  LabeledGroup out;
  out.group = MatrixGroup::close(f, n, std::move(gens), cap);
  out.construction = "reducible";
  out.params = "n=" + std::to_string(n) + " d=" + std::to_string(d);
  out.declared_subspace = Matrix(f, d, n);
  for (std::size_t i = 0; i < d; ++i)
    out.declared_subspace(i, i) = 1;
  return out;
}

LabeledGroup imprimitive_wreath(const Field &f, std::size_t block_dim, std::size_t m,
                                std::size_t cap) {
  if (m < 2 || block_dim == 0)
    throw PreconditionViolation("imprimitive_wreath needs m >= 2 and a positive block size");
  const std::size_t n = block_dim * m;
  std::vector<Matrix> gens;
  for (std::size_t b = 0; b < m; ++b)
    for (const auto &g : gl_generators(f, block_dim))
      gens.push_back(embed_block(g, n, b * block_dim));
  const Matrix ib = Matrix::identity(f, block_dim);
  std::vector<std::size_t> swap(m), cycle(m);
  for (std::size_t i = 0; i < m; ++i) {
    swap[i] = i;
    cycle[i] = (i + 1) % m;
  }
  std::swap(swap[0], swap[1]);
  gens.push_back(kron(permutation_matrix(f, swap), ib));
  if (m > 2)
    gens.push_back(kron(permutation_matrix(f, cycle), ib));
  LabeledGroup out;
  out.group = MatrixGroup::close(f, n, std::move(gens), cap);
  out.construction = "imprimitive";
  out.params = "block_dim=" + std::to_string(block_dim) + " m=" + std::to_string(m);
  for (std::size_t b = 0; b < m; ++b) {
    Matrix blk(f, block_dim, n);
    for (std::size_t i = 0; i < block_dim; ++i)
      blk(i, b * block_dim + i) = 1;
    out.declared_blocks.push_back(std::move(blk));
  }
  return out;
}

LabeledGroup iterated_tensor(const std::vector<Group> &factors, std::size_t cap) {
  if (factors.size() < 2)
    throw PreconditionViolation("a tensor product needs at least two factors");
  const Field &f = factors.front()->field();
  std::size_t n = 1;
  for (const auto &g : factors) {
    require_same_field(g->field(), f);
    n *= g->n();
  }
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (const auto &g : factors[i]->generators()) {
      std::vector<Matrix> parts;
      for (std::size_t j = 0; j < factors.size(); ++j)
        parts.push_back(j == i ? g : Matrix::identity(f, factors[j]->n()));
      gens.push_back(kron_chain(parts));
    }
  LabeledGroup out;
  out.group = MatrixGroup::close(f, n, std::move(gens), cap);
  out.construction = factors.size() == 2 ? "tensor_product" : "iterated_tensor";
  out.params = "dims=";
  for (std::size_t i = 0; i < factors.size(); ++i)
    out.params += (i ? "x" : "") + std::to_string(factors[i]->n());
  out.tensor_factors = factors;
  return out;
}

LabeledGroup tensor_central_product(const Group &g1, const Group &g2, std::size_t cap) {
  return iterated_tensor({g1, g2}, cap);
}

LabeledGroup sl_scalars(const Field &f, std::size_t n, std::size_t cap) {
  auto gens = sl_generators(f, n);
  gens.push_back(Matrix::scalar(f, n, f->primitive()));
  LabeledGroup out;
  out.group = MatrixGroup::close(f, n, std::move(gens), cap);
  out.construction = "sl_scalars";
  out.params = "n=" + std::to_string(n);
  return out;
}

Group binary_tetrahedral(const Field &f) {
  require_quaternion_char(*f);
  return MatrixGroup::close(f, 2, tetrahedral_generators(Quaternions(f)));
}

Group binary_octahedral(const Field &f) {
  require_quaternion_char(*f);
  auto r = square_root(*f, 2);
  if (!r)
    throw NotFound("2 is not a square in " + f->name());
  Quaternions q(f);
  auto gens = tetrahedral_generators(q);
  gens.push_back(q.unit(1, 1, 0, 0, *r));
  return MatrixGroup::close(f, 2, std::move(gens));
}

Group binary_icosahedral(const Field &f) {
  require_quaternion_char(*f);
  const FieldSpec &s = *f;
  auto r = square_root(s, 5);
  if (!r)
    throw NotFound("5 is not a square in " + f->name());
  Quaternions q(f);
  const Elt phi = s.div(s.add(1, *r), 2);
  auto gens = tetrahedral_generators(q);
  gens.push_back(q.unit(phi, s.sub(phi, 1), 1, 0, 2));
  return MatrixGroup::close(f, 2, std::move(gens));
}

Matrix sym2(const Matrix &m) {
  if (m.rows() != 2 || m.cols() != 2)
    throw PreconditionViolation("sym2 expects a 2x2 matrix");
  const FieldSpec &s = m.spec();
  const Elt a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  auto two = [&](Elt x) { return s.add(x, x); };
  return Matrix(m.field(), 3, 3,
                {s.mul(a, a), s.mul(a, b), s.mul(b, b),
                 two(s.mul(a, c)), s.add(s.mul(a, d), s.mul(b, c)), two(s.mul(b, d)),
                 s.mul(c, c), s.mul(c, d), s.mul(d, d)});
}

LabeledGroup almost_simple_lift(const Field &f, std::size_t n, std::size_t cap) {
  if (n != 2 && n != 3)
    throw PreconditionViolation("almost_simple_lift supports n = 2 and n = 3");
  if (f->characteristic() < 7)
    throw BadPrime("almost_simple_lift needs characteristic at least 7");
  Group base;
  std::string kind;
  if (square_root(*f, 5)) {
    base = binary_icosahedral(f);
    kind = "2.A5";
  } else if (square_root(*f, 2)) {
    base = binary_octahedral(f);
    kind = "2.S4";
  } else {
    base = binary_tetrahedral(f);
    kind = "2.A4";
  }
  LabeledGroup out;
  out.construction = "almost_simple_lift";
  out.params = "n=" + std::to_string(n) + " base=" + kind;
  if (n == 2) {
    out.group = base;
  } else {
    std::vector<Matrix> gens;
    for (const auto &g : base->generators())
      gens.push_back(sym2(g));
    out.group = MatrixGroup::close(f, 3, std::move(gens), cap);
  }
  return out;
}

LabeledGroup binary_tetrahedral_tensor(std::uint64_t l) {
  if (l <= 3 || !is_prime(l))
    throw BadPrime("binary_tetrahedral_tensor needs a prime l > 3");
  Field f = make_field(l, 1);
  Group t = binary_tetrahedral(f);
  LabeledGroup out = tensor_central_product(t, t);
  out.construction = "binary_tetrahedral_tensor";
  out.params = "l=" + std::to_string(l);
  return out;
}

LabeledGroup induced_tensor(const Field &f, std::uint64_t a, std::uint64_t b, std::size_t cap) {
  const FieldSpec &s = *f;
  const std::uint64_t units = s.order() - 1;
  if (a == 0 || b == 0 || units % a != 0 || units % b != 0)
    throw BadOrder("character orders must divide q - 1");
  auto dihedral = [&](std::uint64_t m) {
    const Elt z = s.pow(s.primitive(), units / m);
    Matrix rot(f, 2, 2, {z, 0, 0, s.inv(z)});
    Matrix swap(f, 2, 2, {0, 1, 1, 0});
    return MatrixGroup::close(f, 2, {rot, swap}, cap);
  };
  LabeledGroup out = tensor_central_product(dihedral(a), dihedral(b), cap);
  out.construction = "induced_tensor";
  out.params = "orders=" + std::to_string(a) + "," + std::to_string(b);
  return out;
}

LabeledGroup random_subgroup(const Field &f, std::size_t n, std::size_t generator_count,
                             std::uint64_t seed, std::size_t cap) {
  std::mt19937_64 rng(seed);
  const std::uint64_t q = f->order();
  std::vector<Matrix> gens;
  while (gens.size() < generator_count) {
    Matrix m(f, n, n);
    for (auto &e : m.data())
      e = rng() % q;
    if (m.det() != 0)
      gens.push_back(std::move(m));
  }
  LabeledGroup out;
  out.group = MatrixGroup::close(f, n, std::move(gens), cap);
  out.construction = "random";
  out.params = "n=" + std::to_string(n) + " gens=" + std::to_string(generator_count);
  out.seed = seed;
  return out;
}

bool verify_construction(const LabeledGroup &lg) {
  const MatrixGroup &g = *lg.group;
  const std::string &c = lg.construction;
  if (c == "reducible") {
    const Matrix &w = lg.declared_subspace;
    for (const auto &a : g.generators())
      for (std::size_t r = 0; r < w.rows(); ++r)
        if (!in_span(w, a.apply(w.row(r))))
          return false;
    return w.rows() > 0 && w.rows() < g.n();
  }
  if (c == "imprimitive") {
    for (const auto &a : g.generators())
      for (const auto &blk : lg.declared_blocks) {
        Matrix image(g.field(), blk.rows(), blk.cols());
        for (std::size_t r = 0; r < blk.rows(); ++r) {
          Vec v = a.apply(blk.row(r));
          std::copy(v.begin(), v.end(), image.data().begin() + static_cast<long>(r * blk.cols()));
        }
        bool hit = false;
        for (const auto &other : lg.declared_blocks)
          hit = hit || image.rref() == other.rref();
        if (!hit)
          return false;
      }
    return lg.declared_blocks.size() >= 2;
  }
  if (!lg.tensor_factors.empty()) {
    const auto &fs = lg.tensor_factors;
    for (const auto &a : g.generators()) {
      bool ok = false;
      for (std::size_t i = 0; i < fs.size() && !ok; ++i)
        for (const auto &h : fs[i]->generators()) {
          std::vector<Matrix> parts;
          for (std::size_t j = 0; j < fs.size(); ++j)
            parts.push_back(j == i ? h : Matrix::identity(g.field(), fs[j]->n()));
          if (kron_chain(parts) == a) {
            ok = true;
            break;
          }
        }
      if (!ok)
        return false;
    }
    return true;
  }
  if (c == "sl_scalars")
    return g.contains(Matrix::scalar(g.field(), g.n(), g.field()->primitive()));
  return true;
}

} // namespace bigcheck

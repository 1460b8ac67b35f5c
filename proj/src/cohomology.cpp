#include "bigcheck/cohomology.hpp"

#include <numeric>

namespace bigcheck {

namespace {

Vec add_vec(const FieldSpec &f, Vec a, const Vec &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = f.add(a[i], b[i]);
  return a;
}

} // namespace

GModule sl_module(const Group &g) {
  return conjugation_module(g).restrict_to(sl_basis(g->field(), g->n()));
}

CohomologyResult h0(const GModule &mod) {
  const std::size_t dim = mod.dim();
  const auto &acts = mod.generator_actions();
  Matrix sys(mod.field(), acts.size() * dim, dim);
  for (std::size_t s = 0; s < acts.size(); ++s) {
    Matrix d = acts[s] - Matrix::identity(mod.field(), dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        sys(s * dim + i, j) = d(i, j);
  }
  Matrix ker = sys.kernel();
  CohomologyResult r;
  r.degree = 0;
  r.dimension = ker.rows();
  for (std::size_t i = 0; i < ker.rows(); ++i)
    r.basis.emplace_back(ker.row(i).begin(), ker.row(i).end());
  return r;
}

CohomologyResult h1(const GModule &mod, bool allow_fast_path, std::uint64_t budget) {
  const MatrixGroup &G = *mod.group();
  const Field &F = mod.field();
  const FieldSpec &f = *F;
  const std::size_t dim = mod.dim(), ng = G.generator_count(), U = ng * dim;
  const std::size_t order = G.order();
  CohomologyResult r;
  r.degree = 1;
  const std::size_t h0dim = h0(mod).dimension;
  r.coboundary_dimension = dim - h0dim;
  if (allow_fast_path && std::gcd<std::uint64_t>(order, f.characteristic()) == 1) {
    r.fast_path_used = true;
    r.cocycle_dimension = r.coboundary_dimension;
    return r;
  }
  const long double entries =
      static_cast<long double>(order) * dim * (U + dim);
  if (entries > static_cast<long double>(budget))
    throw BudgetExceeded("H^1 system needs " + std::to_string(static_cast<double>(entries)) +
                         " entries");

  // f(i) as a dim x U matrix in the unknowns, A_i the action; both along the tree.
  std::vector<Matrix> lin(order), act(order);
  lin[0] = Matrix(F, dim, U);
  act[0] = Matrix::identity(F, dim);
  auto edge_value = [&](std::size_t i, std::size_t s) {
    // f(i) + A_i f(s): f(s) is the block of unknowns for generator s
    Matrix v = lin[i];
    const Matrix &A = act[i];
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        if (A(a, b))
          v(a, s * dim + b) = f.add(v(a, s * dim + b), A(a, b));
    return v;
  };
  for (std::size_t i = 1; i < order; ++i) {
    const std::size_t p = G.parent(i), s = G.parent_generator(i);
    lin[i] = edge_value(p, s);
    act[i] = act[p] * mod.generator_actions()[s];
  }
  EchelonBasis constraints(F, U);
  for (std::size_t i = 0; i < order && constraints.size() < U; ++i)
    for (std::size_t s = 0; s < ng; ++s) {
      const std::size_t j = G.right_mul(i, s);
      if (j != 0 && G.parent(j) == i && G.parent_generator(j) == s)
        continue; // tree edge
      Matrix diff = edge_value(i, s) - lin[j];
      for (std::size_t a = 0; a < dim; ++a)
        constraints.insert(Vec(diff.row(a).begin(), diff.row(a).end()));
    }
  r.cocycle_dimension = U - constraints.size();
  if (r.cocycle_dimension < r.coboundary_dimension)
    throw PreconditionViolation("coboundaries exceed cocycles: inconsistent module");
  r.dimension = r.cocycle_dimension - r.coboundary_dimension;
  if (r.dimension == 0)
    return r;

  // representatives: extend a basis of B^1 by cocycles
  Matrix sys(F, constraints.size(), U);
  for (std::size_t i = 0; i < constraints.size(); ++i)
    std::copy(constraints.rows()[i].begin(), constraints.rows()[i].end(),
              sys.data().begin() + static_cast<long>(i * U));
  Matrix z1 = sys.kernel();
  EchelonBasis span(F, U);
  for (std::size_t j = 0; j < dim; ++j) {
    Vec b(U, 0);
    for (std::size_t s = 0; s < ng; ++s)
      for (std::size_t a = 0; a < dim; ++a)
        b[s * dim + a] = f.sub(mod.generator_actions()[s](a, j), a == j ? 1 : 0);
    span.insert(std::move(b));
  }
  for (std::size_t i = 0; i < z1.rows(); ++i) {
    Vec z(z1.row(i).begin(), z1.row(i).end());
    if (span.insert(z))
      r.basis.push_back(std::move(z));
  }
  if (r.basis.size() != r.dimension)
    throw PreconditionViolation("coboundaries are not cocycles: inconsistent module");
  return r;
}

std::vector<Vec> expand_cocycle(const GModule &mod, const Vec &generator_values) {
  const MatrixGroup &G = *mod.group();
  const FieldSpec &f = *mod.field();
  const std::size_t dim = mod.dim();
  auto acts = mod.all_actions();
  std::vector<Vec> table(G.order(), Vec(dim, 0));
  for (std::size_t i = 1; i < G.order(); ++i) {
    const std::size_t p = G.parent(i), s = G.parent_generator(i);
    Vec fs(generator_values.begin() + static_cast<long>(s * dim),
           generator_values.begin() + static_cast<long>((s + 1) * dim));
    table[i] = add_vec(f, table[p], acts[p].apply(fs));
  }
  return table;
}

bool is_cocycle(const GModule &mod, const std::vector<Vec> &table) {
  const MatrixGroup &G = *mod.group();
  const FieldSpec &f = *mod.field();
  auto acts = mod.all_actions();
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      if (table[G.mul(g, h)] != add_vec(f, table[g], acts[g].apply(table[h])))
        return false;
  return true;
}

} // namespace bigcheck

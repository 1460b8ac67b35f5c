#include "bigcheck/oracle.hpp"

#include "bigcheck/bigness.hpp"

#include <algorithm>

namespace bigcheck {

std::size_t naive_h0_dimension(const GModule &mod) {
  const std::size_t dim = mod.dim();
  const Field &F = mod.field();
  EchelonBasis rows(F, dim);
  for (std::size_t g = 0; g < mod.group()->order() && rows.size() < dim; ++g) {
    Matrix d = mod.action(g) - Matrix::identity(F, dim);
    for (std::size_t i = 0; i < dim; ++i)
      rows.insert(Vec(d.row(i).begin(), d.row(i).end()));
  }
  return dim - rows.size();
}

namespace {

std::size_t coboundary_rank(const GModule &mod) {
  const FieldSpec &f = *mod.field();
  const std::size_t dim = mod.dim(), ng = mod.generator_actions().size();
  EchelonBasis b(mod.field(), ng * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    Vec v(ng * dim, 0);
    for (std::size_t s = 0; s < ng; ++s)
      for (std::size_t a = 0; a < dim; ++a)
        v[s * dim + a] = f.sub(mod.generator_actions()[s](a, j), a == j ? 1 : 0);
    b.insert(std::move(v));
  }
  return b.size();
}

// Every f(g) unknown; equations f(s g) - f(s) - s f(g) = 0.
std::size_t h1_all_unknowns(const GModule &mod) {
  const MatrixGroup &G = *mod.group();
  const FieldSpec &f = *mod.field();
  const std::size_t dim = mod.dim(), order = G.order(), N = order * dim;
  EchelonBasis eqs(mod.field(), N);
  for (std::size_t s = 0; s < G.generator_count(); ++s) {
    const std::size_t si = *G.index_of(G.generators()[s]);
    const Matrix &A = mod.generator_actions()[s];
    for (std::size_t g = 0; g < order; ++g) {
      const std::size_t sg = G.mul(si, g);
      for (std::size_t a = 0; a < dim; ++a) {
        Vec row(N, 0);
        row[sg * dim + a] = f.add(row[sg * dim + a], 1);
        row[si * dim + a] = f.sub(row[si * dim + a], 1);
        for (std::size_t b = 0; b < dim; ++b)
          row[g * dim + b] = f.sub(row[g * dim + b], A(a, b));
        eqs.insert(std::move(row));
      }
    }
  }
  const std::size_t z1 = N - eqs.size();
  // coboundaries as full tables: f_v(g) = g v - v
  EchelonBasis b(mod.field(), N);
  for (std::size_t j = 0; j < dim; ++j) {
    Vec row(N, 0);
    for (std::size_t g = 0; g < order; ++g) {
      Matrix A = mod.action(g);
      for (std::size_t a = 0; a < dim; ++a)
        row[g * dim + a] = f.sub(A(a, j), a == j ? 1 : 0);
    }
    b.insert(std::move(row));
  }
  return z1 - b.size();
}

// Unknowns f(s); propagate f(s g) = f(s) + s f(g) over a left BFS tree.
std::size_t h1_left_tree(const GModule &mod) {
  const MatrixGroup &G = *mod.group();
  const FieldSpec &f = *mod.field();
  const std::size_t dim = mod.dim(), order = G.order(), ng = G.generator_count();
  const std::size_t U = ng * dim;
  std::vector<std::size_t> gen_idx(ng);
  for (std::size_t s = 0; s < ng; ++s)
    gen_idx[s] = *G.index_of(G.generators()[s]);
  // value[g]: dim rows of linear forms in the U unknowns
  std::vector<std::vector<Vec>> value(order);
  std::vector<bool> known(order, false);
  value[0].assign(dim, Vec(U, 0));
  known[0] = true;
  auto image = [&](std::size_t s, std::size_t g) {
    std::vector<Vec> out(dim, Vec(U, 0));
    const Matrix &A = mod.generator_actions()[s];
    for (std::size_t a = 0; a < dim; ++a) {
      out[a][s * dim + a] = 1;
      for (std::size_t b = 0; b < dim; ++b)
        if (A(a, b))
          for (std::size_t u = 0; u < U; ++u)
            out[a][u] = f.add(out[a][u], f.mul(A(a, b), value[g][b][u]));
    }
    return out;
  };
  std::vector<std::size_t> queue{0};
  EchelonBasis eqs(mod.field(), U);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const std::size_t g = queue[k];
    for (std::size_t s = 0; s < ng; ++s) {
      const std::size_t sg = G.mul(gen_idx[s], g);
      auto val = image(s, g);
      if (!known[sg]) {
        known[sg] = true;
        value[sg] = std::move(val);
        queue.push_back(sg);
      } else {
        for (std::size_t a = 0; a < dim; ++a) {
          Vec d = val[a];
          for (std::size_t u = 0; u < U; ++u)
            d[u] = f.sub(d[u], value[sg][a][u]);
          eqs.insert(std::move(d));
        }
      }
    }
  }
  return (U - eqs.size()) - coboundary_rank(mod);
}

} // namespace

std::size_t naive_h1_dimension(const GModule &mod, bool all_unknowns) {
  return all_unknowns ? h1_all_unknowns(mod) : h1_left_tree(mod);
}

bool naive_has_l_power_quotient(const MatrixGroup &g) {
  const auto l = g.field()->characteristic();
  std::vector<std::size_t> gens;
  std::vector<bool> mem(g.order(), false);
  mem[0] = true;
  for (std::size_t i = 0; i < g.order(); ++i)
    if (!mem[i] && g.element_order(i) % l != 0) {
      gens.push_back(i);
      mem = subgroup_closure(g, gens);
    }
  return static_cast<std::size_t>(std::count(mem.begin(), mem.end(), true)) < g.order();
}

} // namespace bigcheck

namespace bigcheck {

namespace {

// Action of h on gl_n by explicit conjugation of each E_ij.
Matrix naive_conjugation_action(const Matrix &h) {
  const std::size_t n = h.rows();
  Matrix hinv = h.inverse();
  Matrix act(h.field(), n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix e(h.field(), n, n);
      e(i, j) = 1;
      Matrix y = h * e * hinv;
      for (std::size_t k = 0; k < n * n; ++k)
        act(k, i * n + j) = y.data()[k];
    }
  return act;
}

// Action on trace-zero matrices in the basis E_ij (i != j), E_ii - E_nn.
Matrix naive_sl_action(const Matrix &h) {
  const std::size_t n = h.rows();
  const FieldSpec &f = h.spec();
  Matrix hinv = h.inverse();
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j || i + 1 < n)
        basis.emplace_back(i, j);
  Matrix act(h.field(), basis.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto [i, j] = basis[c];
    Matrix e(h.field(), n, n);
    e(i, j) = 1;
    if (i == j)
      e(n - 1, n - 1) = f.neg(1);
    Matrix y = h * e * hinv;
    for (std::size_t r = 0; r < basis.size(); ++r)
      act(r, c) = y(basis[r].first, basis[r].second);
  }
  return act;
}

} // namespace

BignessReport naive_oracle_check(const Group &gp, unsigned M) {
  const MatrixGroup &G = *gp;
  const Field &F = G.field();
  const std::size_t n = G.n();
  if (G.order() > 5000)
    throw TooLargeForOracle("oracle limited to groups of order <= 5000");
  long double lines = 0, power = 1;
  for (std::size_t i = 0; i < n * n; ++i, power *= F->order())
    lines += power;
  if (lines > 1e6L)
    throw TooLargeForOracle("oracle limited to 10^6 lines of gl_n");

  BignessReport rep;
  rep.order = G.order();
  rep.field = F;
  rep.n = n;
  rep.M = M;

  rep.cond_quotient = !naive_has_l_power_quotient(G);
  rep.evaluated_quotient = true;

  std::vector<Matrix> sl_acts, gl_acts;
  for (const auto &h : G.generators()) {
    sl_acts.push_back(naive_sl_action(h));
    gl_acts.push_back(naive_conjugation_action(h));
  }
  GModule sl(gp, sl_acts);
  rep.h0_dimension = naive_h0_dimension(sl);
  rep.cond_h0 = rep.h0_dimension == 0;
  rep.evaluated_h0 = true;
  rep.h1_dimension = naive_h1_dimension(sl, G.order() * sl.dim() <= 600);
  rep.cond_h1 = rep.h1_dimension == 0;
  rep.evaluated_h1 = true;

  GModule gl(gp, gl_acts);
  auto subs = probe_irreducible_submodules(gl);

  // admissible eigen data per element, through the splitting field
  struct Candidate {
    Elt alpha;
    Matrix pi, inj;
  };
  std::vector<std::vector<Candidate>> cands(G.order());
  for (std::size_t h = 0; h < G.order(); ++h) {
    Matrix m = G.element(h);
    auto ed = eigen_data(m, M);
    for (std::size_t i = 0; i < ed.roots.size(); ++i) {
      if (!ed.roots[i].in_base || !ed.is_simple(i) || !ed.is_separated(i))
        continue;
      auto maps = eigenspace_maps(m, FieldElement(F, ed.roots[i].base_value));
      cands[h].push_back({ed.roots[i].base_value, maps.projection, maps.injection});
    }
  }
  rep.cond_witnesses = true;
  for (const auto &w : subs) {
    WitnessEntry e{w, false, std::nullopt, std::nullopt};
    e.scalar_line = w.dim() == 1 && Matrix(F, n, n, Vec(w.basis.row(0).begin(), w.basis.row(0).end())) ==
                                        Matrix::scalar(F, n, w.basis(0, 0));
    for (std::size_t h = 0; h < G.order() && !e.witness; ++h)
      for (const auto &c : cands[h]) {
        for (std::size_t r = 0; r < w.dim() && !e.witness; ++r) {
          Matrix x(F, n, n, Vec(w.basis.row(r).begin(), w.basis.row(r).end()));
          if ((c.pi * x * c.inj)(0, 0) != 0)
            e.witness = Witness{h, c.alpha, r};
        }
        if (e.witness)
          break;
      }
    rep.cond_witnesses = rep.cond_witnesses && e.witness.has_value();
    rep.witness_table.push_back(std::move(e));
  }
  rep.evaluated_witnesses = true;
  rep.big = rep.cond_quotient && rep.cond_h0 && rep.cond_h1 && rep.cond_witnesses;
  return rep;
}

} // namespace bigcheck

#include "bigcheck/bigness.hpp"

#include <chrono>

namespace bigcheck {

namespace {

Elt dot(const FieldSpec &f, std::span<const Elt> a, std::span<const Elt> b) {
  Elt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i])
      s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

bool is_scalar_line(const Submodule &w, std::size_t n) {
  if (w.dim() != 1)
    return false;
  auto r = w.basis.row(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i * n + j] != (i == j ? r[0] : 0))
        return false;
  return true;
}

std::optional<std::size_t> detecting_row(const FieldSpec &f, const Submodule &w, const Vec &lambda) {
  for (std::size_t r = 0; r < w.dim(); ++r)
    if (dot(f, w.basis.row(r), lambda) != 0)
      return r;
  return std::nullopt;
}

std::optional<ExtensionWitness> find_extension_witness(const MatrixGroup &g, const Submodule &w,
                                                       unsigned M) {
  const std::size_t n = g.n();
  for (std::size_t h = 0; h < g.order(); ++h) {
    EigenReport rep;
    try {
      rep = eigen_data(g.element(h), M, kDiscreteLogBound);
    } catch (const TooLarge &) {
      continue;
    }
    for (std::size_t i = 0; i < rep.roots.size(); ++i) {
      if (rep.roots[i].in_base || !rep.is_simple(i) || !rep.is_separated(i))
        continue;
      const Field &K = rep.splitting.target;
      auto maps = eigenspace_maps(g.element(h), FieldElement(K, rep.roots[i].value), rep.splitting);
      for (std::size_t r = 0; r < w.dim(); ++r) {
        Matrix x(K, n, n);
        for (std::size_t k = 0; k < n * n; ++k)
          x.data()[k] = rep.splitting(w.basis(r, k));
        if ((maps.projection * x * maps.injection)(0, 0) != 0)
          return ExtensionWitness{h, rep.roots[i].value, rep.splitting_degree};
      }
    }
  }
  return std::nullopt;
}

} // namespace

std::vector<std::string> BignessReport::failing_conditions() const {
  std::vector<std::string> out;
  if (evaluated_quotient && !cond_quotient)
    out.push_back("quotient");
  if (evaluated_h0 && !cond_h0)
    out.push_back("h0");
  if (evaluated_h1 && !cond_h1)
    out.push_back("h1");
  if (evaluated_witnesses && !cond_witnesses)
    out.push_back("witnesses");
  return out;
}

std::vector<Functional> admissible_functionals(const Matrix &h, unsigned M) {
  const FieldSpec &f = h.spec();
  const std::size_t n = h.rows();
  std::vector<Functional> out;
  Poly cp = charpoly(h);
  for (Elt alpha : roots_in(f, cp)) {
    Poly g = poly::divmod(f, cp, Poly{f.neg(alpha), 1}).first;
    if (poly::eval(f, g, alpha) == 0)
      continue; // not simple
    Poly xm = poly::x_power(M);
    xm[0] = f.neg(f.pow(alpha, M));
    if (poly::degree(poly::gcd(f, g, xm)) > 0)
      continue; // some other root has the same M-th power
    Matrix shifted = h - Matrix::scalar(h.field(), n, alpha);
    Matrix right = shifted.kernel(), left = shifted.transpose().kernel();
    auto v = right.row(0), u = left.row(0);
    const Elt inv = f.inv(dot(f, u, v));
    Functional fn{alpha, Vec(n * n)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        fn.coefficients[i * n + j] = f.mul(f.mul(u[i], v[j]), inv);
    out.push_back(std::move(fn));
  }
  return out;
}

std::optional<Witness> find_witness(const MatrixGroup &g, const Submodule &w, unsigned M) {
  const FieldSpec &f = *g.field();
  for (std::size_t h = 0; h < g.order(); ++h)
    for (const auto &fn : admissible_functionals(g.element(h), M))
      if (auto r = detecting_row(f, w, fn.coefficients))
        return Witness{h, fn.alpha, *r};
  return std::nullopt;
}

BignessReport check_m_big(const Group &gp, unsigned M, const BignessOptions &opts) {
  if (M == 0)
    throw PreconditionViolation("M must be positive");
  const auto start = std::chrono::steady_clock::now();
  const MatrixGroup &G = *gp;
  const FieldSpec &f = *G.field();
  const std::size_t n = G.n();
  BignessReport rep;
  rep.order = G.order();
  rep.field = G.field();
  rep.n = n;
  rep.M = M;
  auto stop = [&] { return opts.short_circuit && !rep.failing_conditions().empty(); };

  rep.abelianization = abelianization_order(G);
  rep.cond_quotient = rep.abelianization % f.characteristic() != 0;
  rep.evaluated_quotient = true;

  if (!stop()) {
    GModule sl = sl_module(gp);
    rep.h0_dimension = h0(sl).dimension;
    rep.cond_h0 = rep.h0_dimension == 0;
    rep.evaluated_h0 = true;
    if (!stop()) {
      auto c = h1(sl, true, opts.cohomology_budget);
      rep.h1_dimension = c.dimension;
      rep.h1_fast_path = c.fast_path_used;
      rep.cond_h1 = c.dimension == 0;
      rep.evaluated_h1 = true;
    }
  }

  if (!stop()) {
    GModule gl = conjugation_module(gp);
    auto subs = enumerate_irreducible_submodules(gl, opts.submodule_cap, opts.seed);
    rep.truncated = subs.truncated;
    rep.exhaustive = !subs.truncated;
    for (auto &s : subs.all_irreducibles)
      rep.witness_table.push_back({s, is_scalar_line(s, n), std::nullopt, std::nullopt});
    std::size_t pending = rep.witness_table.size();
    EchelonBasis span(G.field(), n * n);
    for (std::size_t h = 0; h < G.order() && span.size() < n * n; ++h) {
      for (const auto &fn : admissible_functionals(G.element(h), M)) {
        span.insert(fn.coefficients);
        if (!pending)
          continue;
        for (auto &e : rep.witness_table) {
          if (e.witness)
            continue;
          if (auto r = detecting_row(f, e.submodule, fn.coefficients)) {
            e.witness = Witness{h, fn.alpha, *r};
            --pending;
          }
        }
      }
    }
    rep.witness_span_rank = span.size();
    rep.cond_witnesses = span.size() == n * n;
    rep.evaluated_witnesses = true;
    if (!subs.truncated && (pending == 0) != rep.cond_witnesses)
      throw PreconditionViolation("witness table disagrees with the witness span certificate");
    if (!rep.cond_witnesses) {
      // common kernel of the functionals is stable and witness-free
      Matrix rows(G.field(), span.size(), n * n);
      for (std::size_t i = 0; i < span.size(); ++i)
        std::copy(span.rows()[i].begin(), span.rows()[i].end(),
                  rows.data().begin() + static_cast<long>(i * n * n));
      Matrix z = rows.kernel();
      rep.witness_free_dimension = z.rows();
    }
    if (opts.extension_witnesses)
      for (auto &e : rep.witness_table)
        if (!e.witness)
          e.extension = find_extension_witness(G, e.submodule, M);
  }

  rep.big = rep.evaluated_quotient && rep.evaluated_h0 && rep.evaluated_h1 &&
            rep.evaluated_witnesses && rep.cond_quotient && rep.cond_h0 && rep.cond_h1 &&
            rep.cond_witnesses;
  if (opts.timing)
    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

} // namespace bigcheck

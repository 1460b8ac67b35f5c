#include "bigcheck/gmodule.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace bigcheck {

namespace {

// Nonzero rows of the RREF of the given rows.
Matrix row_space(const Matrix &rows) {
  std::vector<std::size_t> piv;
  Matrix r = rows.rref(&piv);
  Matrix out(rows.field(), piv.size(), rows.cols());
  std::copy(r.data().begin(), r.data().begin() + static_cast<long>(piv.size() * rows.cols()),
            out.data().begin());
  return out;
}

Matrix rows_to_matrix(const Field &f, std::size_t dim, const std::vector<Vec> &rows) {
  Matrix m(f, rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy(rows[i].begin(), rows[i].end(), m.data().begin() + static_cast<long>(i * dim));
  return m;
}

Matrix eval_matrix_poly(const Poly &p, const Matrix &a) {
  const std::size_t n = a.rows();
  Matrix r(a.field(), n, n);
  for (std::size_t i = p.size(); i-- > 0;)
    r = r * a + Matrix::scalar(a.field(), n, p[i]);
  return r;
}

bool less_basis(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows())
    return a.rows() < b.rows();
  return a.data() < b.data();
}

Vec flatten(const Matrix &m) { return m.data(); }

// Proper nonzero stable subspace, or nullopt when the module is irreducible.
std::optional<Matrix> find_proper_submodule(const Field &f, std::size_t dim,
                                            const std::vector<Matrix> &actions,
                                            std::mt19937_64 &rng) {
  if (dim <= 1)
    return std::nullopt;
  const FieldSpec &k = *f;
  if (actions.empty())
    throw PreconditionViolation("module without action matrices");
  std::vector<Matrix> transposes;
  for (const auto &a : actions)
    transposes.push_back(a.transpose());

  std::vector<Matrix> pool = actions;
  std::uniform_int_distribution<Elt> coef(0, k.order() - 1);
  constexpr int kAttempts = 400;
  constexpr std::size_t kPool = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    {
      Matrix prod = pool[rng() % pool.size()] * pool[rng() % pool.size()];
      if (pool.size() < kPool)
        pool.push_back(std::move(prod));
      else
        pool[actions.size() + rng() % (kPool - actions.size())] = std::move(prod);
    }
    Matrix a = Matrix::scalar(f, dim, coef(rng));
    for (int t = 0; t < 3; ++t)
      a = a + pool[rng() % pool.size()].scaled(coef(rng));
    auto factors = factor_over(k, charpoly(a), rng());
    for (const auto &fa : factors) {
      Matrix theta = eval_matrix_poly(fa.factor, a);
      Matrix ker = theta.kernel();
      Vec v(ker.row(0).begin(), ker.row(0).end());
      Matrix s = spin_with(actions, v);
      if (s.rows() < dim)
        return s;
      if (ker.rows() != static_cast<std::size_t>(poly::degree(fa.factor)))
        continue;
      Matrix kt = theta.transpose().kernel();
      Vec w(kt.row(0).begin(), kt.row(0).end());
      Matrix d = spin_with(transposes, w);
      if (d.rows() < dim)
        return row_space(d.kernel());
      return std::nullopt;
    }
  }
  throw BudgetExceeded("irreducibility test undecided after " + std::to_string(kAttempts) +
                       " random algebra elements");
}

void chop(const GModule &mod, std::mt19937_64 &rng, std::vector<GModule> &out) {
  auto sub = find_proper_submodule(mod.field(), mod.dim(), mod.generator_actions(), rng);
  if (!sub) {
    out.push_back(mod);
    return;
  }
  chop(mod.restrict_to(*sub), rng, out);
  chop(mod.quotient_by(*sub), rng, out);
}

std::uint64_t projective_count(std::uint64_t Q, std::size_t m) {
  // (Q^m - 1)/(Q - 1), saturating
  std::uint64_t total = 0, power = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (total > UINT64_MAX - power)
      return UINT64_MAX;
    total += power;
    if (i + 1 < m && power > UINT64_MAX / Q)
      return UINT64_MAX;
    power *= Q;
  }
  return total;
}

struct IsotypicData {
  GModule factor;
  std::vector<Matrix> end_basis;  // k-basis of End(W)
  std::vector<Matrix> hom_ebasis; // basis of Hom(W, V) over End(W)
  std::uint64_t Q = 0;
};

std::vector<IsotypicData> isotypic_data(const GModule &mod, std::uint64_t seed) {
  auto factors = composition_factors(mod, seed);
  std::vector<GModule> classes;
  for (const auto &fac : factors) {
    bool seen = false;
    for (const auto &c : classes)
      if (c.dim() == fac.dim() &&
          !hom_space(c.generator_actions(), fac.generator_actions()).empty()) {
        seen = true;
        break;
      }
    if (!seen)
      classes.push_back(fac);
  }
  std::vector<IsotypicData> result;
  const Field &f = mod.field();
  for (auto &c : classes) {
    auto hom = hom_space(c.generator_actions(), mod.generator_actions());
    if (hom.empty())
      continue;
    IsotypicData data{c, hom_space(c.generator_actions(), c.generator_actions()), {}, 0};
    const std::size_t e = data.end_basis.size();
    data.Q = ipow(f->order(), static_cast<unsigned>(e));
    EchelonBasis span(f, mod.dim() * c.dim());
    for (const auto &phi : hom) {
      if (span.contains(flatten(phi)))
        continue;
      for (const auto &eps : data.end_basis)
        span.insert(flatten(phi * eps));
      data.hom_ebasis.push_back(phi);
    }
    result.push_back(std::move(data));
  }
  return result;
}

Submodule image_of(const Matrix &phi) { return {row_space(phi.transpose())}; }

} // namespace

GModule::GModule(Group g, std::vector<Matrix> generator_actions)
    : group_(std::move(g)), gens_(std::move(generator_actions)) {
  if (gens_.size() != group_->generator_count())
    throw PreconditionViolation("one action matrix per group generator is required");
  field_ = group_->field();
  dim_ = gens_.empty() ? 0 : gens_.front().rows();
  for (const auto &a : gens_) {
    require_same_field(a.field(), field_);
    if (!a.square() || a.rows() != dim_)
      throw PreconditionViolation("action matrices must be square of equal size");
  }
}

GModule GModule::natural(Group g) {
  auto gens = g->generators();
  GModule m(std::move(g), std::move(gens));
  m.dim_ = m.group_->n();
  return m;
}

Matrix GModule::action(std::size_t element) const {
  std::vector<std::size_t> path;
  for (std::size_t i = element; i != 0; i = group_->parent(i))
    path.push_back(group_->parent_generator(i));
  Matrix r = Matrix::identity(field_, dim_);
  for (std::size_t i = path.size(); i-- > 0;)
    r = r * gens_[path[i]];
  return r;
}

std::vector<Matrix> GModule::all_actions() const {
  std::vector<Matrix> table;
  table.reserve(group_->order());
  table.push_back(Matrix::identity(field_, dim_));
  for (std::size_t i = 1; i < group_->order(); ++i)
    table.push_back(table[group_->parent(i)] * gens_[group_->parent_generator(i)]);
  return table;
}

bool GModule::is_stable(const Matrix &basis) const {
  EchelonBasis eb(field_, dim_);
  for (std::size_t i = 0; i < basis.rows(); ++i)
    eb.insert(Vec(basis.row(i).begin(), basis.row(i).end()));
  for (const auto &a : gens_)
    for (std::size_t i = 0; i < basis.rows(); ++i)
      if (!eb.contains(a.apply(basis.row(i))))
        return false;
  return true;
}

GModule GModule::restrict_to(const Matrix &basis) const {
  std::vector<std::size_t> piv;
  Matrix b = row_space(basis);
  b.rref(&piv);
  if (!is_stable(b))
    throw PreconditionViolation("subspace is not stable under the group");
  const std::size_t k = b.rows();
  std::vector<Matrix> acts;
  for (const auto &a : gens_) {
    Matrix r(field_, k, k);
    for (std::size_t j = 0; j < k; ++j) {
      Vec w = a.apply(b.row(j));
      for (std::size_t i = 0; i < k; ++i)
        r(i, j) = w[piv[i]];
    }
    acts.push_back(std::move(r));
  }
  GModule m(group_, std::move(acts));
  m.dim_ = k;
  return m;
}

GModule GModule::quotient_by(const Matrix &basis) const {
  std::vector<std::size_t> piv;
  Matrix b = row_space(basis);
  b.rref(&piv);
  if (!is_stable(b))
    throw PreconditionViolation("subspace is not stable under the group");
  std::vector<bool> is_pivot(dim_, false);
  for (auto p : piv)
    is_pivot[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < dim_; ++j)
    if (!is_pivot[j])
      rest.push_back(j);
  const FieldSpec &f = *field_;
  std::vector<Matrix> acts;
  for (const auto &a : gens_) {
    Matrix r(field_, rest.size(), rest.size());
    for (std::size_t j = 0; j < rest.size(); ++j) {
      Vec w(dim_);
      for (std::size_t i = 0; i < dim_; ++i)
        w[i] = a(i, rest[j]);
      for (std::size_t i = 0; i < piv.size(); ++i) {
        const Elt c = w[piv[i]];
        if (c)
          for (std::size_t t = 0; t < dim_; ++t)
            w[t] = f.sub(w[t], f.mul(c, b(i, t)));
      }
      for (std::size_t i = 0; i < rest.size(); ++i)
        r(i, j) = w[rest[i]];
    }
    acts.push_back(std::move(r));
  }
  GModule m(group_, std::move(acts));
  m.dim_ = rest.size();
  return m;
}

GModule conjugation_module(const Group &g) {
  std::vector<Matrix> acts;
  for (const auto &h : g->generators())
    acts.push_back(kron(h, h.inverse().transpose()));
  return GModule(g, std::move(acts));
}

Matrix sl_basis(const Field &f, std::size_t n) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && i + 1 == n)
        continue;
      Vec v(n * n, 0);
      v[i * n + j] = 1;
      if (i == j)
        v[(n - 1) * n + (n - 1)] = f->neg(1);
      rows.push_back(std::move(v));
    }
  return row_space(rows_to_matrix(f, n * n, rows));
}

Matrix spin_with(const std::vector<Matrix> &actions, const Vec &v) {
  if (std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; }))
    throw ZeroVector("cannot spin the zero vector");
  if (actions.empty())
    throw PreconditionViolation("spin_with needs at least one action matrix");
  const Field &f = actions.front().field();
  EchelonBasis eb(f, v.size());
  std::vector<Vec> queue{v};
  eb.insert(v);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto &a : actions) {
      Vec w = a.apply(queue[i]);
      if (eb.insert(w))
        queue.push_back(std::move(w));
    }
  return eb.canonical();
}

Matrix spin(const GModule &mod, const Vec &v) {
  if (v.size() != mod.dim())
    throw PreconditionViolation("vector has the wrong length");
  if (std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; }))
    throw ZeroVector("cannot spin the zero vector");
  return spin_with(mod.generator_actions(), v);
}

std::vector<Matrix> hom_space(const std::vector<Matrix> &a_actions,
                              const std::vector<Matrix> &b_actions) {
  if (a_actions.size() != b_actions.size() || a_actions.empty())
    throw PreconditionViolation("hom_space needs matching nonempty action lists");
  const Field &f = a_actions.front().field();
  const FieldSpec &k = *f;
  const std::size_t da = a_actions.front().rows(), db = b_actions.front().rows();
  const std::size_t vars = da * db;
  Matrix sys(f, a_actions.size() * vars, vars);
  std::size_t row = 0;
  for (std::size_t s = 0; s < a_actions.size(); ++s) {
    const Matrix &A = a_actions[s], &B = b_actions[s];
    // (B X - X A)_{ij}, X[r][c] at index r * da + c
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < da; ++j, ++row) {
        for (std::size_t t = 0; t < db; ++t)
          sys(row, t * da + j) = k.add(sys(row, t * da + j), B(i, t));
        for (std::size_t t = 0; t < da; ++t)
          sys(row, i * da + t) = k.sub(sys(row, i * da + t), A(t, j));
      }
  }
  Matrix ker = sys.kernel();
  std::vector<Matrix> basis;
  for (std::size_t r = 0; r < ker.rows(); ++r)
    basis.emplace_back(f, db, da, Vec(ker.row(r).begin(), ker.row(r).end()));
  return basis;
}

std::size_t endomorphism_dimension(const GModule &mod) {
  return hom_space(mod.generator_actions(), mod.generator_actions()).size();
}

std::vector<GModule> composition_factors(const GModule &mod, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GModule> out;
  if (mod.dim() == 0)
    return out;
  chop(mod, rng, out);
  return out;
}

bool is_irreducible(const GModule &mod, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return !find_proper_submodule(mod.field(), mod.dim(), mod.generator_actions(), rng);
}

bool is_absolutely_irreducible(const GModule &mod, std::uint64_t seed) {
  return is_irreducible(mod, seed) && endomorphism_dimension(mod) == 1;
}

std::uint64_t SubmoduleList::total_irreducibles() const {
  std::uint64_t t = 0;
  for (const auto &c : constituents)
    t = c.count > UINT64_MAX - t ? UINT64_MAX : t + c.count;
  return t;
}

SubmoduleList socle_constituents(const GModule &mod, std::uint64_t seed) {
  SubmoduleList list;
  for (const auto &d : isotypic_data(mod, seed)) {
    Constituent c;
    c.representative = image_of(d.hom_ebasis.front());
    c.multiplicity = d.hom_ebasis.size();
    c.end_dimension = d.end_basis.size();
    c.count = projective_count(d.Q, c.multiplicity);
    list.constituents.push_back(std::move(c));
  }
  std::sort(list.constituents.begin(), list.constituents.end(),
            [](const Constituent &a, const Constituent &b) {
              return less_basis(a.representative.basis, b.representative.basis);
            });
  return list;
}

SubmoduleList enumerate_irreducible_submodules(const GModule &mod, std::size_t cap,
                                               std::uint64_t seed) {
  SubmoduleList list;
  list.enumerated = true;
  const Field &f = mod.field();
  const std::uint64_t q = f->order();
  for (const auto &d : isotypic_data(mod, seed)) {
    Constituent c;
    c.representative = image_of(d.hom_ebasis.front());
    c.multiplicity = d.hom_ebasis.size();
    c.end_dimension = d.end_basis.size();
    c.count = projective_count(d.Q, c.multiplicity);
    const std::size_t m = c.multiplicity, e = c.end_dimension;
    list.constituents.push_back(c);

    // Element of End(W) from an integer in [0, Q): base-q digits over end_basis.
    auto end_element = [&](std::uint64_t code) {
      Matrix r(f, d.factor.dim(), d.factor.dim());
      for (std::size_t j = 0; j < e; ++j, code /= q)
        if (code % q)
          r = r + d.end_basis[j].scaled(code % q);
      return r;
    };
    std::size_t produced = 0;
    for (std::size_t lead = 0; lead < m && produced < cap; ++lead) {
      const std::size_t tail = m - 1 - lead;
      std::vector<std::uint64_t> digits(tail, 0); // each in [0, Q)
      for (;;) {
        Matrix phi = d.hom_ebasis[lead];
        for (std::size_t t = 0; t < tail; ++t)
          if (digits[t])
            phi = phi + d.hom_ebasis[lead + 1 + t] * end_element(digits[t]);
        list.all_irreducibles.push_back(image_of(phi));
        if (++produced >= cap)
          break;
        std::size_t pos = 0;
        while (pos < tail && ++digits[pos] == d.Q)
          digits[pos++] = 0;
        if (pos == tail)
          break;
      }
    }
    if (produced < c.count)
      list.truncated = true;
  }
  std::sort(list.constituents.begin(), list.constituents.end(),
            [](const Constituent &a, const Constituent &b) {
              return less_basis(a.representative.basis, b.representative.basis);
            });
  std::sort(list.all_irreducibles.begin(), list.all_irreducibles.end(),
            [](const Submodule &a, const Submodule &b) { return less_basis(a.basis, b.basis); });
  return list;
}

std::vector<Submodule> probe_irreducible_submodules(const GModule &mod,
                                                    std::uint64_t line_limit) {
  const Field &f = mod.field();
  const std::uint64_t q = f->order();
  const std::size_t dim = mod.dim();
  std::uint64_t lines = 0, power = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    lines += power;
    if (lines > line_limit)
      throw TooLargeForOracle("line probing needs more than " + std::to_string(line_limit) +
                              " lines");
    power *= q;
  }
  std::set<std::pair<std::size_t, Vec>> spins;
  for (std::size_t lead = 0; lead < dim; ++lead) {
    Vec v(dim, 0);
    v[lead] = 1;
    for (;;) {
      Matrix s = spin(mod, v);
      spins.emplace(s.rows(), s.data());
      std::size_t pos = lead + 1;
      while (pos < dim && ++v[pos] == q)
        v[pos++] = 0;
      if (pos == dim)
        break;
    }
  }
  std::vector<Submodule> irreducible;
  for (const auto &[k, data] : spins) {
    Matrix s(f, k, dim, data);
    bool minimal = true;
    if (k > 1) {
      EchelonBasis eb(f, dim);
      for (std::size_t i = 0; i < k; ++i)
        eb.insert(Vec(s.row(i).begin(), s.row(i).end()));
      for (const auto &u : irreducible) {
        if (u.dim() >= k)
          continue;
        bool inside = true;
        for (std::size_t i = 0; i < u.dim() && inside; ++i)
          inside = eb.contains(Vec(u.basis.row(i).begin(), u.basis.row(i).end()));
        if (inside) {
          minimal = false;
          break;
        }
      }
    }
    if (minimal)
      irreducible.push_back({std::move(s)});
  }
  std::sort(irreducible.begin(), irreducible.end(),
            [](const Submodule &a, const Submodule &b) { return less_basis(a.basis, b.basis); });
  return irreducible;
}

} // namespace bigcheck

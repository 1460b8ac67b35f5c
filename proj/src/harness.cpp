#include "bigcheck/harness.hpp"

#include <map>
#include <numeric>

#include "bigcheck/parallel.hpp"

namespace bigcheck {

namespace {

using Key = std::vector<Elt>;

Matrix image_of(const Matrix &a, const Matrix &basis) {
  Matrix out(basis.field(), basis.rows(), basis.cols());
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    Vec v = a.apply(basis.row(r));
    std::copy(v.begin(), v.end(), out.data().begin() + static_cast<long>(r * basis.cols()));
  }
  return out.rref();
}

// RREF bases of all d-dimensional subspaces of k^n: pivot sets in
// lexicographic order, free entries as an odometer (first position fastest).
template <class Visit>
void for_each_subspace(const Field &f, std::size_t n, std::size_t d, Visit &&visit) {
  const std::uint64_t q = f->order();
  std::vector<std::size_t> piv(d);
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = piv[r] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end())
          free.emplace_back(r, c);
    Matrix m(f, d, n);
    for (std::size_t r = 0; r < d; ++r)
      m(r, piv[r]) = 1;
    while (true) {
      visit(m);
      std::size_t i = 0;
      for (; i < free.size(); ++i) {
        auto &e = m(free[i].first, free[i].second);
        if (++e < q)
          break;
        e = 0;
      }
      if (i == free.size())
        break;
    }
    // next pivot combination
    std::size_t i = d;
    while (i > 0 && piv[i - 1] == n - d + i - 1)
      --i;
    if (i == 0)
      return;
    ++piv[i - 1];
    for (std::size_t j = i; j < d; ++j)
      piv[j] = piv[j - 1] + 1;
  }
}

bool extends_direct(EchelonBasis &span, const std::vector<Matrix> &members) {
  for (const auto &b : members)
    for (std::size_t r = 0; r < b.rows(); ++r)
      if (!span.insert(Vec(b.row(r).begin(), b.row(r).end())))
        return false;
  return true;
}

std::vector<std::size_t> divisors_from_two(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t m = 2; m <= n; ++m)
    if (n % m == 0)
      out.push_back(m);
  return out;
}

constexpr std::uint64_t kDfsBudget = 10'000'000;

} // namespace

std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t d) {
  if (d > n)
    return 0;
  // product of (q^(n-i) - 1) / (q^(i+1) - 1), exact at every step
  unsigned __int128 r = 1;
  const unsigned __int128 cap = UINT64_MAX;
  for (std::size_t i = 0; i < d; ++i) {
    unsigned __int128 num = 1, den = 1;
    for (std::size_t k = 0; k < n - i; ++k) {
      num *= q;
      if (num > cap)
        return UINT64_MAX;
    }
    for (std::size_t k = 0; k < i + 1; ++k)
      den *= q;
    r *= num - 1;
    if (r > cap * cap / 4)
      return UINT64_MAX;
    r /= den - 1;
    if (r > cap)
      return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

std::optional<BlockSystem> find_block_system(const MatrixGroup &g, std::size_t m,
                                             std::uint64_t budget) {
  const std::size_t n = g.n();
  if (m < 2 || n % m != 0)
    throw PreconditionViolation("block count must be a divisor of n, at least 2");
  const std::size_t b = n / m;
  const Field &f = g.field();
  if (gaussian_binomial(f->order(), n, b) > budget)
    throw BudgetExceeded("too many subspaces for the block system search");

  std::map<Key, bool> seen;
  std::vector<std::vector<Matrix>> orbits; // small orbits, each a direct sum
  for_each_subspace(f, n, b, [&](const Matrix &s) {
    if (seen.count(s.data()))
      return;
    std::vector<Matrix> orbit{s};
    std::map<Key, bool> in_orbit{{s.data(), true}};
    bool small = true;
    for (std::size_t i = 0; i < orbit.size() && small; ++i)
      for (const auto &a : g.generators()) {
        Matrix t = image_of(a, orbit[i]);
        if (in_orbit.emplace(t.data(), true).second) {
          orbit.push_back(t);
          if (orbit.size() > m) {
            small = false;
            break;
          }
        }
      }
    for (const auto &o : orbit)
      seen[o.data()] = true;
    EchelonBasis span(f, n);
    if (small && extends_direct(span, orbit))
      orbits.push_back(std::move(orbit));
  });

  // a decomposition needs the small orbits to span k^n
  EchelonBasis all(f, n);
  for (const auto &o : orbits)
    for (const auto &s : o)
      for (std::size_t r = 0; r < s.rows(); ++r)
        all.insert(Vec(s.row(r).begin(), s.row(r).end()));
  if (all.size() < n)
    return std::nullopt;

  std::uint64_t steps = 0;
  std::vector<std::size_t> chosen;
  std::optional<BlockSystem> found;
  auto dfs = [&](auto &&self, std::size_t start, std::size_t count, const EchelonBasis &span) {
    if (count == m) {
      found.emplace();
      for (std::size_t i : chosen)
        for (const auto &s : orbits[i])
          found->push_back(s);
      return true;
    }
    for (std::size_t i = start; i < orbits.size(); ++i) {
      if (++steps > kDfsBudget)
        throw BudgetExceeded("block system search exceeded its step budget");
      if (count + orbits[i].size() > m)
        continue;
      EchelonBasis next = span;
      if (!extends_direct(next, orbits[i]))
        continue;
      chosen.push_back(i);
      if (self(self, i + 1, count + orbits[i].size(), next))
        return true;
      chosen.pop_back();
    }
    return false;
  };
  dfs(dfs, 0, 0, EchelonBasis(f, n));
  return found;
}

bool verify_block_system(const MatrixGroup &g, const BlockSystem &blocks) {
  const std::size_t n = g.n();
  if (blocks.size() < 2)
    return false;
  EchelonBasis span(g.field(), n);
  if (!extends_direct(span, blocks) || span.size() != n)
    return false;
  std::vector<Key> keys;
  for (const auto &blk : blocks)
    keys.push_back(blk.rref().data());
  for (const auto &a : g.generators())
    for (const auto &blk : blocks) {
      Key img = image_of(a, blk).data();
      if (std::find(keys.begin(), keys.end(), img) == keys.end())
        return false;
    }
  return true;
}

std::optional<TensorEvidence> prime_to_l_tensor_evidence(const LabeledGroup &lg) {
  const MatrixGroup &g = *lg.group;
  const std::uint64_t l = g.field()->characteristic();
  if (!lg.tensor_factors.empty()) {
    TensorEvidence e{"metadata", {}, 0};
    for (const auto &fct : lg.tensor_factors)
      if (fct->order() % l != 0)
        e.factor_orders.push_back(fct->order());
    if (!e.factor_orders.empty())
      return e;
  }
  const std::size_t proj = g.order() / g.scalar_count();
  if (proj % l != 0)
    return TensorEvidence{"whole_group", {}, proj};
  return std::nullopt;
}

std::string to_string(Classification c) {
  switch (c) {
  case Classification::none:
    return "none";
  case Classification::not_abs_irreducible:
    return "not_abs_irreducible";
  case Classification::induced:
    return "induced";
  case Classification::tensor_prime_to_l:
    return "tensor_with_prime_to_l_factor";
  case Classification::unexplained:
    return "unexplained";
  }
  return "none";
}

TrichotomyConfig trichotomy_config_from_json(const Json &j) {
  if (!j.is_object())
    throw ParseError("trichotomy config must be a JSON object");
  TrichotomyConfig c;
  try {
    if (j.contains("primes"))
      c.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    c.n = j.value("n", c.n);
    c.M = j.value("M", c.M);
    c.seed = j.value("seed", c.seed);
    c.closure_cap = j.value("closure_cap", c.closure_cap);
    c.submodule_cap = j.value("submodule_cap", c.submodule_cap);
    c.subspace_budget = j.value("subspace_budget", c.subspace_budget);
    if (j.contains("families")) {
      if (!j.at("families").is_array())
        throw ParseError("families must be a list");
      for (const auto &f : j.at("families")) {
        if (!f.is_object() || !f.contains("family") || !f.at("family").is_string())
          throw ParseError("each family needs a \"family\" name");
        c.families.push_back(f);
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(e.what());
  }
  for (auto l : c.primes)
    if (!is_prime(l))
      throw ParseError(std::to_string(l) + " is not prime");
  if (c.M == 0 || c.n == 0 || c.closure_cap == 0 || c.submodule_cap == 0)
    throw ParseError("M, n and caps must be positive");
  return c;
}

TrichotomyRecord classify_group(const LabeledGroup &g, unsigned M, const TrichotomyConfig &cfg,
                                std::size_t index) {
  TrichotomyRecord rec;
  rec.index = index;
  rec.group = g;
  rec.checked = adjoin_scalars(*g.group, cfg.closure_cap);
  BignessOptions opts;
  opts.submodule_cap = cfg.submodule_cap;
  opts.seed = cfg.seed;
  rec.report = check_m_big(rec.checked, M, opts);
  if (rec.report->big)
    return rec;

  if (!is_absolutely_irreducible(GModule::natural(rec.checked), cfg.seed))
    rec.matched.push_back(Classification::not_abs_irreducible);
  for (std::size_t m : divisors_from_two(rec.checked->n())) {
    try {
      rec.blocks = find_block_system(*rec.checked, m, cfg.subspace_budget);
    } catch (const BudgetExceeded &e) {
      rec.notes.push_back("block search with m = " + std::to_string(m) + " skipped: " + e.what());
    }
    if (rec.blocks) {
      if (!verify_block_system(*rec.checked, *rec.blocks))
        throw PreconditionViolation("block system failed verification");
      rec.matched.push_back(Classification::induced);
      break;
    }
  }
  LabeledGroup scaled = g;
  scaled.group = rec.checked;
  rec.evidence = prime_to_l_tensor_evidence(scaled);
  if (rec.evidence)
    rec.matched.push_back(Classification::tensor_prime_to_l);
  rec.classification = rec.matched.empty() ? Classification::unexplained : rec.matched.front();
  return rec;
}

std::vector<TrichotomyRecord> run_trichotomy(const TrichotomyConfig &cfg, unsigned jobs) {
  struct Entry {
    Json spec;
    Field field;
    std::uint64_t seed;
  };
  std::vector<Entry> entries;
  for (const auto &fam : cfg.families) {
    std::vector<Field> fields;
    if (fam.contains("field"))
      fields.push_back(field_from_json(fam.at("field")));
    else
      for (auto l : cfg.primes)
        fields.push_back(make_field(l, 1));
    std::size_t count = 1;
    std::uint64_t seed = cfg.seed;
    if (fam.at("family") == "random") {
      const Json params = fam.value("params", Json::object());
      count = params.value("count", std::size_t{1});
      seed = fam.value("seed", cfg.seed);
    }
    for (const auto &f : fields)
      for (std::size_t i = 0; i < count; ++i)
        entries.push_back({fam, f, seed + i});
  }
  return parallel_map<TrichotomyRecord>(entries.size(), jobs, [&](std::size_t i) {
    const Entry &e = entries[i];
    TrichotomyRecord rec;
    rec.index = i;
    try {
      Json spec = e.spec;
      spec.erase("field");
      spec["seed"] = e.seed;
      auto g = family_from_json(spec, e.field, cfg.n, e.seed, cfg.closure_cap);
      rec = classify_group(g, cfg.M, cfg, i);
    } catch (const std::exception &ex) {
      rec.error = ex.what();
      rec.group.construction = e.spec.at("family").get<std::string>();
      rec.group.params = e.field->name();
    }
    return rec;
  });
}

TrichotomySummary summarize(const std::vector<TrichotomyRecord> &records) {
  TrichotomySummary s;
  for (const auto &r : records) {
    ++s.total;
    if (!r.error.empty()) {
      ++s.errors;
      continue;
    }
    if (r.report->big) {
      ++s.big;
      continue;
    }
    ++s.not_big;
    switch (r.classification) {
    case Classification::not_abs_irreducible:
      ++s.not_abs_irreducible;
      break;
    case Classification::induced:
      ++s.induced;
      break;
    case Classification::tensor_prime_to_l:
      ++s.tensor_prime_to_l;
      break;
    default:
      ++s.unexplained;
      s.unexplained_indices.push_back(r.index);
    }
  }
  return s;
}

Json record_to_json(const TrichotomyRecord &r) {
  Json j;
  j["index"] = r.index;
  j["construction"] = r.group.construction;
  j["params"] = r.group.params;
  if (r.group.construction == "random")
    j["seed"] = r.group.seed;
  if (!r.error.empty()) {
    j["error"] = r.error;
    return j;
  }
  j["field"] = field_to_json(r.group.group->field());
  j["n"] = r.group.group->n();
  j["order"] = r.group.group->order();
  j["checked_order"] = r.checked->order();
  j["verdict"] = r.report->verdict();
  j["failing_conditions"] = r.report->failing_conditions();
  j["classification"] = to_string(r.classification);
  Json matched = Json::array();
  for (auto c : r.matched)
    matched.push_back(to_string(c));
  j["matched"] = std::move(matched);
  if (r.blocks) {
    Json blocks = Json::array();
    for (const auto &b : *r.blocks)
      blocks.push_back(matrix_to_json(b));
    j["block_system"] = std::move(blocks);
  }
  if (r.evidence) {
    Json e;
    e["source"] = r.evidence->source;
    if (r.evidence->source == "metadata")
      e["factor_orders"] = r.evidence->factor_orders;
    else
      e["projective_order"] = r.evidence->projective_order;
    j["tensor_evidence"] = std::move(e);
  }
  if (!r.notes.empty())
    j["notes"] = r.notes;
  j["generators"] = group_to_json(*r.group.group)["generators"];
  j["report"] = report_to_json(*r.report, *r.checked);
  return j;
}

Json summary_to_json(const TrichotomySummary &s) {
  Json j;
  j["total"] = s.total;
  j["big"] = s.big;
  j["not_big"] = s.not_big;
  j["errors"] = s.errors;
  Json c;
  c["not_abs_irreducible"] = s.not_abs_irreducible;
  c["induced"] = s.induced;
  c["tensor_with_prime_to_l_factor"] = s.tensor_prime_to_l;
  c["unexplained"] = s.unexplained;
  j["classifications"] = std::move(c);
  j["unexplained_indices"] = s.unexplained_indices;
  j["note"] = "unexplained records are findings, not failures: the classification of non-big "
              "images is only guaranteed for l beyond a non-effective bound";
  return j;
}

} // namespace bigcheck

#include <random>

#include "bigcheck/bigness.hpp"
#include "doctest.h"

using namespace bigcheck;

namespace {

Matrix M(const Field &f, std::vector<std::vector<std::int64_t>> rows) {
  return Matrix::from_rows(f, rows);
}

Group gl2(const Field &f) {
  return MatrixGroup::close(
      {M(f, {{static_cast<std::int64_t>(f->primitive()), 0}, {0, 1}}), M(f, {{-1, 1}, {-1, 0}})});
}

Group random_group(const Field &f, std::size_t n, std::mt19937_64 &rng, std::size_t gens) {
  std::vector<Matrix> g;
  while (g.size() < gens) {
    Matrix m(f, n, n);
    for (auto &x : m.data())
      x = rng() % f->order();
    if (m.det() != 0)
      g.push_back(m);
  }
  return MatrixGroup::close(g);
}

void check_same(const BignessReport &a, const BignessReport &b) {
  CHECK(a.big == b.big);
  CHECK(a.cond_quotient == b.cond_quotient);
  CHECK(a.cond_h0 == b.cond_h0);
  CHECK(a.cond_h1 == b.cond_h1);
  CHECK(a.cond_witnesses == b.cond_witnesses);
}

} // namespace

TEST_CASE("check_m_big examples") {
  auto f7 = make_field(7, 1);
  auto triv = MatrixGroup::close(f7, 2, {});
  auto r = check_m_big(triv, 1);
  CHECK_FALSE(r.big);
  CHECK_FALSE(r.cond_h0);
  CHECK(r.h0_dimension == 3);
  check_same(r, naive_oracle_check(triv, 1));

  auto g = gl2(f7);
  REQUIRE(g->order() == 2016);
  auto big = check_m_big(g, 1);
  CHECK(big.big);
  CHECK(big.witness_span_rank == 4);
  CHECK(big.witness_table.size() == 2);
  check_same(big, naive_oracle_check(g, 1));
  CHECK(check_m_big(g, 2).big);

  auto unip = MatrixGroup::close({M(f7, {{1, 1}, {0, 1}})});
  auto u = check_m_big(unip, 1);
  CHECK_FALSE(u.big);
  CHECK_FALSE(u.cond_quotient);
  CHECK(u.failing_conditions().front() == "quotient");
  BignessOptions sc;
  sc.short_circuit = true;
  auto us = check_m_big(unip, 1, sc);
  CHECK_FALSE(us.evaluated_h0);
  CHECK(us.failing_conditions() == std::vector<std::string>{"quotient"});
}

TEST_CASE("find_witness examples") {
  auto f7 = make_field(7, 1);
  auto torus = MatrixGroup::close({M(f7, {{3, 0}, {0, 1}}), M(f7, {{1, 0}, {0, 3}})});
  REQUIRE(torus->order() == 36);
  Submodule e12{M(f7, {{0, 1, 0, 0}})};
  CHECK_FALSE(find_witness(*torus, e12, 1).has_value());
  auto fs = admissible_functionals(M(f7, {{1, 0}, {0, 3}}), 1);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].alpha == 1);
  CHECK(fs[0].coefficients == Vec{1, 0, 0, 0});

  auto g = gl2(f7);
  CHECK(find_witness(*g, {sl_basis(f7, 2)}, 1).has_value());
  auto w = find_witness(*g, {M(f7, {{1, 0, 0, 1}})}, 1);
  REQUIRE(w.has_value());
  CHECK(w->h_index > 0);
}

TEST_CASE("oracle agreement on GL2(F5)") {
  auto f5 = make_field(5, 1);
  auto g = gl2(f5);
  for (unsigned m : {1u, 2u})
    check_same(check_m_big(g, m), naive_oracle_check(g, m));
}

TEST_CASE("properties on random groups") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (auto [l, n] : {std::pair{5ull, 2u}, {7ull, 2u}, {3ull, 2u}}) {
    auto f = make_field(l, 1);
    for (int t = 0; t < 10; ++t) {
      auto g = random_group(f, n, rng, 1 + t % 2);
      auto r1 = check_m_big(g, 1), r2 = check_m_big(g, 2);
      check_same(r1, naive_oracle_check(g, 1));
      check_same(r2, naive_oracle_check(g, 2));
      // every M-separated witness is 1-separated
      if (r2.big)
        CHECK(r1.big);
      CHECK(r2.witness_span_rank <= r1.witness_span_rank);
      auto s = adjoin_scalars(*g);
      CHECK(check_m_big(s, 1).big == r1.big);
      ++checked;
    }
  }
  CHECK(checked == 30);
}

#include <algorithm>

#include "bigcheck/harness.hpp"
#include "doctest.h"

using namespace bigcheck;

namespace {

Group group_of(const Field &f, std::vector<Matrix> gens) {
  const std::size_t n = gens.empty() ? 2 : gens.front().rows();
  return MatrixGroup::close(f, n, std::move(gens));
}

bool has(const std::vector<Classification> &v, Classification c) {
  return std::find(v.begin(), v.end(), c) != v.end();
}

TrichotomyConfig small_config() {
  return trichotomy_config_from_json(parse_json(R"({
    "primes": [7], "n": 2, "M": 1, "seed": 11,
    "families": [
      {"family": "reducible", "params": {"d": 1}},
      {"family": "wreath", "params": {"block_dim": 1, "m": 2}},
      {"family": "sl_scalars"},
      {"family": "random", "params": {"count": 3, "generators": 2}}
    ]})"));
}

} // namespace

TEST_CASE("field and group JSON round trip") {
  auto f25 = make_field(5, 2);
  auto j = field_to_json(f25);
  auto back = field_from_json(j);
  CHECK(back->order() == 25);
  CHECK(back->modulus() == f25->modulus());
  CHECK(field_from_json(parse_json("7"))->order() == 7);
  CHECK(field_from_json(parse_json(R"({"l": 3, "d": 2})"))->order() == 9);

  auto f7 = make_field(7, 1);
  auto g = sl_scalars(f7, 2).group;
  auto h = group_from_json(group_to_json(*g));
  CHECK(h->order() == g->order());
  CHECK(group_to_json(*h).dump() == group_to_json(*g).dump());

  Matrix a(f25, 1, 1);
  a(0, 0) = element_from_json(*f25, parse_json("[1, 2]"));
  CHECK(element_to_json(*f25, a(0, 0)) == parse_json("[1, 2]"));
}

TEST_CASE("JSON errors map to ParseError") {
  CHECK_THROWS_AS(parse_json("{\"field\": 7,"), ParseError);
  CHECK_THROWS_AS(field_from_json(parse_json("6")), ParseError);
  CHECK_THROWS_AS(field_from_json(parse_json(R"({"d": 2})")), ParseError);
  CHECK_THROWS_AS(group_from_json(parse_json(R"({"field": 7, "n": 2})")), ParseError);
  CHECK_THROWS_AS(group_from_json(parse_json(R"({"field": 7, "n": 2, "generators": [[[1, 2]]]})")),
                  ParseError);
  // singular generator
  CHECK_THROWS_AS(
      group_from_json(parse_json(R"({"field": 7, "n": 2, "generators": [[[1, 1], [1, 1]]]})")),
      ParseError);
  CHECK_THROWS_AS(element_from_json(*make_field(5, 2), parse_json("[1, 2, 3]")), ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/x.json"), ParseError);
  auto f7 = make_field(7, 1);
  CHECK_THROWS_AS(family_from_json(parse_json(R"({"family": "nope"})"), f7, 2, 1), ParseError);
  CHECK_THROWS_AS(family_from_json(parse_json(R"({"family": "tensor_product", "params": {}})"), f7,
                                   2, 1),
                  ParseError);
}

TEST_CASE("family_from_json builds the named constructions") {
  auto f7 = make_field(7, 1);
  auto w = family_from_json(parse_json(R"({"family": "wreath", "params": {"block_dim": 1}})"), f7,
                            2, 1);
  CHECK(w.construction == "imprimitive");
  CHECK(w.group->order() == 72);
  auto t = family_from_json(
      parse_json(R"({"family": "tensor_product", "params": {"factors": [
        {"family": "sl_scalars"}, {"family": "wreath", "params": {"block_dim": 1}}]}})"),
      f7, 2, 1);
  CHECK(t.construction == "tensor_product");
  CHECK(t.group->n() == 4);
  CHECK(t.tensor_factors.size() == 2);
  CHECK(verify_construction(t));
}

TEST_CASE("report JSON has fixed keys") {
  auto f7 = make_field(7, 1);
  auto g = sl_scalars(f7, 2).group;
  auto j = report_to_json(check_m_big(g, 1), *g);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it)
    keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"field", "n", "order", "M", "verdict",
                                         "failing_conditions", "conditions"});
  CHECK(j["verdict"] == "big");
  CHECK(j["conditions"]["witnesses"]["span_rank"] == 4);
}

TEST_CASE("block systems") {
  auto f5 = make_field(5, 1);
  auto mono = imprimitive_wreath(f5, 1, 2).group;
  auto b = find_block_system(*mono, 2);
  REQUIRE(b);
  REQUIRE(b->size() == 2);
  CHECK(verify_block_system(*mono, *b));
  std::vector<std::vector<Elt>> rows;
  for (const auto &m : *b)
    rows.push_back({m(0, 0), m(0, 1)});
  std::sort(rows.begin(), rows.end());
  CHECK(rows == std::vector<std::vector<Elt>>{{0, 1}, {1, 0}});

  auto gl = group_of(f5, gl_generators(f5, 2));
  CHECK_FALSE(find_block_system(*gl, 2));

  auto trivial = group_of(f5, {});
  auto tb = find_block_system(*trivial, 2);
  REQUIRE(tb);
  CHECK(verify_block_system(*trivial, *tb));

  // blocks that are not a direct sum are rejected
  Matrix l1(f5, 1, 2), l2(f5, 1, 2);
  l1(0, 0) = 1;
  l2(0, 0) = 1;
  CHECK_FALSE(verify_block_system(*trivial, {l1, l2}));

  CHECK_THROWS_AS(find_block_system(*mono, 3), PreconditionViolation);
  CHECK_THROWS_AS(find_block_system(*mono, 2, 3), BudgetExceeded);

  CHECK(gaussian_binomial(5, 2, 1) == 6);
  CHECK(gaussian_binomial(2, 4, 2) == 35);
  CHECK(gaussian_binomial(3, 3, 0) == 1);
}

TEST_CASE("tensor evidence") {
  auto f13 = make_field(13, 1);
  auto sl = sl_scalars(f13, 2);
  CHECK_FALSE(prime_to_l_tensor_evidence(sl));

  auto t = binary_tetrahedral_tensor(11);
  auto e = prime_to_l_tensor_evidence(t);
  REQUIRE(e);
  CHECK(e->source == "metadata");
  CHECK(e->factor_orders == std::vector<std::size_t>{24, 24});

  auto f5 = make_field(5, 1);
  LabeledGroup q8;
  q8.group = binary_tetrahedral(f5);
  q8.construction = "random";
  auto w = prime_to_l_tensor_evidence(q8);
  REQUIRE(w);
  CHECK(w->source == "whole_group");
  CHECK(w->projective_order == 12);
}

TEST_CASE("classification of non-big groups") {
  auto cfg = small_config();
  auto f7 = make_field(7, 1);
  auto red = classify_group(reducible_group(f7, 2, 1), 1, cfg);
  REQUIRE(red.report);
  CHECK_FALSE(red.report->big);
  CHECK(red.classification == Classification::not_abs_irreducible);

  auto f13 = make_field(13, 1);
  auto ind = classify_group(induced_tensor(f13, 3, 4), 1, cfg);
  CHECK(ind.classification == Classification::induced);
  REQUIRE(ind.blocks);
  CHECK(verify_block_system(*ind.checked, *ind.blocks));

  auto big = classify_group(sl_scalars(f7, 2), 1, cfg);
  CHECK(big.report->big);
  CHECK(big.classification == Classification::none);
  CHECK(big.matched.empty());

  auto tt = classify_group(binary_tetrahedral_tensor(11), 1, cfg);
  CHECK(tt.classification == Classification::tensor_prime_to_l);
  CHECK(has(tt.matched, Classification::tensor_prime_to_l));
  CHECK(to_string(Classification::tensor_prime_to_l) == "tensor_with_prime_to_l_factor");
}

TEST_CASE("trichotomy config parsing") {
  auto cfg = small_config();
  CHECK(cfg.primes == std::vector<std::uint64_t>{7});
  CHECK(cfg.families.size() == 4);
  CHECK_THROWS_AS(trichotomy_config_from_json(parse_json(R"({"primes": "7", "families": []})")),
                  ParseError);
  CHECK(trichotomy_config_from_json(parse_json(R"({"primes": [7]})")).families.empty());
  CHECK_THROWS_AS(trichotomy_config_from_json(parse_json("[1]")), ParseError);
}

TEST_CASE("trichotomy run is deterministic and complete") {
  auto cfg = small_config();
  auto r1 = run_trichotomy(cfg, 1);
  auto r3 = run_trichotomy(cfg, 3);
  REQUIRE(r1.size() == 6);
  REQUIRE(r3.size() == r1.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].index == i);
    CHECK(record_to_json(r1[i]).dump() == record_to_json(r3[i]).dump());
  }
  auto s = summarize(r1);
  CHECK(s.total == 6);
  CHECK(s.errors == 0);
  CHECK(s.big + s.not_big == 6);
  CHECK(s.not_abs_irreducible + s.induced + s.tensor_prime_to_l + s.unexplained == s.not_big);
  CHECK(summary_to_json(s)["total"] == 6);
}

TEST_CASE("empty corpus") {
  auto cfg = trichotomy_config_from_json(parse_json(R"({"primes": [7], "families": []})"));
  auto r = run_trichotomy(cfg, 2);
  CHECK(r.empty());
  CHECK(summarize(r).total == 0);
}

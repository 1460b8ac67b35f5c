#include "bigcheck/bigness.hpp"
#include "bigcheck/families.hpp"
#include "doctest.h"

using namespace bigcheck;

namespace {

std::uint64_t wreath_order(std::uint64_t q, std::size_t b, std::size_t m) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < m; ++i)
    out *= gl_order(q, b);
  for (std::size_t i = 2; i <= m; ++i)
    out *= i;
  return out;
}

bool is_kron_of_factors(const LabeledGroup &g) {
  return verify_construction(g) && !g.tensor_factors.empty();
}

} // namespace

TEST_CASE("reducible_group") {
  auto f5 = make_field(5, 1);
  auto b = reducible_group(f5, 2, 1);
  CHECK(b.group->order() == 80);
  CHECK(verify_construction(b));
  // e1 is fixed up to scalar by every generator
  for (const auto &g : b.group->generators())
    CHECK(g(1, 0) == 0);
  CHECK_THROWS_AS(reducible_group(f5, 2, 2), PreconditionViolation);
  CHECK_THROWS_AS(reducible_group(f5, 2, 0), PreconditionViolation);

  // Borel order formula q^(d(n-d)) |GL_d| |GL_(n-d)|
  auto f3 = make_field(3, 1);
  auto p = reducible_group(f3, 3, 1);
  CHECK(p.group->order() == 9 * gl_order(3, 1) * gl_order(3, 2));
  auto f4 = make_field(2, 2);
  CHECK(reducible_group(f4, 2, 1).group->order() == 4 * 3 * 3);

  auto m = GModule::natural(b.group);
  CHECK_FALSE(is_irreducible(m));
}

TEST_CASE("imprimitive_wreath") {
  auto f5 = make_field(5, 1);
  auto w = imprimitive_wreath(f5, 1, 2);
  CHECK(w.group->order() == 32);
  CHECK(verify_construction(w));
  CHECK(is_irreducible(GModule::natural(w.group)));
  auto f3 = make_field(3, 1);
  auto w3 = imprimitive_wreath(f3, 1, 3);
  CHECK(w3.group->order() == 48);
  CHECK(w3.group->order() == wreath_order(3, 1, 3));
  CHECK(imprimitive_wreath(f3, 2, 2).group->order() == wreath_order(3, 2, 2));
  CHECK_THROWS_AS(imprimitive_wreath(f5, 1, 1), PreconditionViolation);

  // a tampered block list is caught
  auto bad = w;
  bad.declared_blocks[1] = Matrix::from_rows(f5, {{1, 1}});
  CHECK_FALSE(verify_construction(bad));
}

TEST_CASE("tensor constructions") {
  auto f5 = make_field(5, 1);
  auto sl2 = MatrixGroup::close(f5, 2, sl_generators(f5, 2));
  REQUIRE(sl2->order() == 120);
  auto t = tensor_central_product(sl2, sl2);
  CHECK(t.group->order() == 120 * 120 / 2);
  CHECK(t.group->n() == 4);
  CHECK(is_kron_of_factors(t));
  CHECK(t.construction == "tensor_product");

  // natural module of the product is the tensor product of the naturals
  auto g0 = t.group->generators()[0];
  CHECK(g0 == kron(sl2->generators()[0], Matrix::identity(f5, 2)));
  CHECK(is_absolutely_irreducible(GModule::natural(t.group)));

  auto c2 = MatrixGroup::close({Matrix::scalar(f5, 1, 4)});
  auto it = iterated_tensor({c2, sl2, c2});
  CHECK(it.construction == "iterated_tensor");
  CHECK(it.group->n() == 2);
  CHECK(verify_construction(it));
  CHECK_THROWS_AS(iterated_tensor({sl2}), PreconditionViolation);
}

TEST_CASE("sl_scalars") {
  auto f5 = make_field(5, 1);
  auto s = sl_scalars(f5, 2);
  CHECK(s.group->order() == 240);
  CHECK(s.group->scalar_count() == 4);
  CHECK(verify_construction(s));
  CHECK(sl_scalars(make_field(7, 1), 2).group->order() == 336 * 6 / 2);
  CHECK_THROWS_AS(sl_scalars(make_field(101, 1), 3), CapExceeded);
  CHECK(MatrixGroup::close(make_field(7, 1), 2, gl_generators(make_field(7, 1), 2))->order() ==
        gl_order(7, 2));
  auto f9 = make_field(3, 2);
  CHECK(MatrixGroup::close(f9, 2, gl_generators(f9, 2))->order() == gl_order(9, 2));
}

TEST_CASE("binary polyhedral groups") {
  for (std::uint64_t l : {5ull, 7ull, 11ull, 13ull}) {
    auto f = make_field(l, 1);
    auto t = binary_tetrahedral(f);
    CHECK(t->order() == 24);
    CHECK(t->scalar_count() == 2);
    for (const auto &g : t->generators())
      CHECK(g.det() == 1);
  }
  CHECK(binary_octahedral(make_field(7, 1))->order() == 48);
  CHECK_THROWS_AS(binary_octahedral(make_field(13, 1)), NotFound);
  CHECK(binary_icosahedral(make_field(11, 1))->order() == 120);
  CHECK_THROWS_AS(binary_icosahedral(make_field(7, 1)), NotFound);
  CHECK_THROWS_AS(binary_tetrahedral(make_field(3, 1)), BadPrime);

  auto a = almost_simple_lift(make_field(11, 1), 3);
  CHECK(a.group->order() == 60);
  CHECK(is_absolutely_irreducible(GModule::natural(a.group)));
  CHECK(almost_simple_lift(make_field(7, 1), 2).group->order() == 48);
  CHECK(almost_simple_lift(make_field(13, 1), 2).group->order() == 24);
  CHECK_THROWS_AS(almost_simple_lift(make_field(5, 1), 2), BadPrime);
}

TEST_CASE("sym2 is multiplicative") {
  auto f = make_field(11, 1);
  auto a = Matrix::from_rows(f, {{1, 2}, {3, 5}}), b = Matrix::from_rows(f, {{0, 7}, {4, 9}});
  CHECK(sym2(a * b) == sym2(a) * sym2(b));
  CHECK(sym2(Matrix::identity(f, 2)).is_identity());
}

TEST_CASE("binary_tetrahedral_tensor") {
  auto t = binary_tetrahedral_tensor(13);
  CHECK(t.group->order() == 288);
  CHECK(is_kron_of_factors(t));
  CHECK(t.tensor_factors.size() == 2);
  CHECK(t.tensor_factors[0]->order() == 24);
  CHECK_THROWS_AS(binary_tetrahedral_tensor(3), BadPrime);
  CHECK_THROWS_AS(binary_tetrahedral_tensor(9), BadPrime);

  // no simple eigenvalue in F_5 or F_11: the witness condition fails
  for (std::uint64_t l : {5ull, 11ull}) {
    auto r = check_m_big(binary_tetrahedral_tensor(l).group, 1);
    CHECK_FALSE(r.big);
    CHECK(r.failing_conditions() == std::vector<std::string>{"witnesses"});
    CHECK(r.witness_span_rank == 0);
  }
  // for l = 1 mod 3, omega (x) omega (omega of order 3) has simple
  // eigenvalues z3^(+-1) in F_l
  for (std::uint64_t l : {7ull, 13ull}) {
    auto g = binary_tetrahedral_tensor(l);
    const auto &omega = g.tensor_factors[0]->generators()[2];
    REQUIRE(g.tensor_factors[0]->element_order(*g.tensor_factors[0]->index_of(omega)) == 3);
    auto fs = admissible_functionals(kron(omega, omega), 1);
    CHECK(fs.size() == 2);
    auto r = check_m_big(g.group, 1);
    CHECK(r.witness_table.size() == 4);
    CHECK(r.witness_span_rank == 16);
    CHECK(r.big);
  }
}

TEST_CASE("induced_tensor") {
  auto f13 = make_field(13, 1);
  auto g = induced_tensor(f13, 3, 4);
  CHECK(g.group->order() == 48);
  CHECK(is_kron_of_factors(g));
  // every element is monomial
  for (std::size_t i = 0; i < g.group->order(); ++i) {
    auto e = g.group->element(i);
    for (std::size_t r = 0; r < 4; ++r) {
      int nz = 0;
      for (std::size_t c = 0; c < 4; ++c)
        nz += e(r, c) != 0;
      CHECK(nz == 1);
    }
  }
  auto r = check_m_big(g.group, 1);
  CHECK_FALSE(r.big);
  CHECK_FALSE(r.cond_witnesses);
  CHECK_THROWS_AS(induced_tensor(f13, 5, 4), BadOrder);
  CHECK_THROWS_AS(induced_tensor(f13, 0, 4), BadOrder);
}

TEST_CASE("random_subgroup") {
  auto f5 = make_field(5, 1);
  auto a = random_subgroup(f5, 2, 2, 42), b = random_subgroup(f5, 2, 2, 42);
  CHECK(a.group->order() == 80);
  CHECK(a.group->order() == b.group->order());
  for (std::size_t i = 0; i < a.group->order(); ++i)
    CHECK(a.group->element(i) == b.group->element(i));
  auto triv = random_subgroup(f5, 2, 0, 1);
  CHECK(triv.group->order() == 1);
  CHECK(random_subgroup(f5, 3, 1, 7).group->n() == 3);
}

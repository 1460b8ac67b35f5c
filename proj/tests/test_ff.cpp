#include <random>

#include "bigcheck/ff.hpp"
#include "bigcheck/poly.hpp"
#include "doctest.h"

using namespace bigcheck;

namespace {

// Brute-force multiplicative order by repeated multiplication.
std::uint64_t naive_order(const FieldSpec &f, Elt a) {
  Elt x = a;
  std::uint64_t k = 1;
  while (x != 1) {
    x = f.mul(x, a);
    ++k;
  }
  return k;
}

Elt naive_primitive(const FieldSpec &f) {
  for (Elt c = 1; c < f.order(); ++c)
    if (naive_order(f, c) == f.order() - 1)
      return c;
  return 0;
}

} // namespace

TEST_CASE("make_field picks the least irreducible modulus") {
  auto f5 = make_field(5, 1);
  CHECK(f5->modulus() == std::vector<std::uint64_t>{0, 1});
  CHECK(f5->order() == 5);

  // x^2 + c1 x + c0 over F_3 is irreducible iff it has no root in F_3.
  std::vector<std::uint64_t> least;
  for (std::uint64_t code = 0; code < 9 && least.empty(); ++code) {
    std::uint64_t c0 = code % 3, c1 = code / 3;
    bool has_root = false;
    for (std::uint64_t x = 0; x < 3; ++x)
      has_root |= (x * x + c1 * x + c0) % 3 == 0;
    if (!has_root)
      least = {c0, c1, 1};
  }
  auto f9 = make_field(3, 2);
  CHECK(f9->modulus() == least);
  CHECK(f9->modulus() == std::vector<std::uint64_t>{1, 0, 1});

  CHECK_THROWS_AS(make_field(4, 1), NotPrime);
  CHECK_THROWS_AS(make_field(2, 41), TooLarge);
  CHECK_THROWS_AS(make_field(5, 3, 100), TooLarge);
}

TEST_CASE("make_field is deterministic") {
  for (auto [l, d] : {std::pair{2ull, 8u}, {3ull, 5u}, {7ull, 4u}, {13ull, 3u}}) {
    auto a = make_field(l, d);
    auto b = make_field(l, d);
    CHECK(a->modulus() == b->modulus());
    FieldSpec fresh(l, a->modulus());
    CHECK(fresh == *a);
  }
}

TEST_CASE("modulus validation rejects reducible polynomials") {
  CHECK_THROWS_AS(FieldSpec(3, {2, 0, 1}), PreconditionViolation); // x^2 - 1
  CHECK_THROWS_AS(FieldSpec(6, {0, 1}), NotPrime);
  CHECK_NOTHROW(FieldSpec(3, {2, 1, 1}));
}

TEST_CASE("arith examples") {
  auto f5 = make_field(5, 1);
  FieldElement three(f5, 3), four(f5, 4), two(f5, 2), zero(f5, 0);
  CHECK(arith(three, four, ArithOp::mul).value() == 2);
  CHECK_THROWS_AS(arith(two, zero, ArithOp::div), DivisionByZero);

  auto f9 = make_field(3, 2);
  FieldElement x(f9, f9->generator_x());
  CHECK((x * x).coeffs() == std::vector<std::uint64_t>{2, 0});

  FieldElement other(make_field(7, 1), 1);
  CHECK_THROWS_AS(three + other, FieldMismatch);
}

TEST_CASE("frobenius") {
  auto f9 = make_field(3, 2);
  FieldElement x(f9, f9->generator_x());
  CHECK(x.frobenius(1).coeffs() == std::vector<std::uint64_t>{0, 2});
  CHECK(x.frobenius(0) == x);
  CHECK(x.frobenius(2) == x);

  for (auto [l, d] : {std::pair{2ull, 6u}, {3ull, 4u}, {5ull, 3u}, {7ull, 2u}}) {
    auto f = make_field(l, d);
    for (Elt a = 0; a < f->order(); ++a)
      REQUIRE(f->frobenius(a, d) == a);
  }
}

TEST_CASE("primitive elements") {
  auto f5 = make_field(5, 1), f7 = make_field(7, 1), f2 = make_field(2, 1);
  CHECK(primitive_element(f5).value() == naive_primitive(*f5));
  CHECK(primitive_element(f5).value() == 2);
  CHECK(primitive_element(f7).value() == naive_primitive(*f7));
  CHECK(primitive_element(f7).value() == 3);
  CHECK(primitive_element(f2).value() == 1);
  for (auto [l, d] : {std::pair{3ull, 3u}, {2ull, 5u}, {5ull, 2u}}) {
    auto f = make_field(l, d);
    CHECK(f->primitive() == naive_primitive(*f));
  }
  CHECK_THROWS_AS(primitive_element(make_field(2, 30)), TooLarge);
}

TEST_CASE("discrete log") {
  auto f11 = make_field(11, 1);
  FieldElement g(f11, 2);
  CHECK(discrete_log(g, FieldElement(f11, 8)) == 3);
  CHECK(discrete_log(g, FieldElement(f11, 1)) == 0);
  CHECK_THROWS_AS(discrete_log(g, FieldElement(f11, 0)), ZeroArgument);

  // round trip: table-backed and baby-step giant-step paths
  for (auto [l, d] : {std::pair{11ull, 1u}, {3ull, 5u}, {2ull, 22u}, {1009ull, 2u}}) {
    auto f = make_field(l, d);
    Elt gen = f->primitive();
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
      Elt x = 1 + rng() % (f->order() - 1);
      auto e = f->discrete_log(gen, x);
      REQUIRE(e < f->order() - 1);
      REQUIRE(f->pow(gen, e) == x);
    }
  }
}

TEST_CASE("field axioms on random triples") {
  for (auto [l, d] : {std::pair{2ull, 1u}, {5ull, 1u}, {3ull, 4u}, {7ull, 3u}, {2ull, 24u},
                      {13ull, 2u}, {7ull, 8u}}) {
    auto f = make_field(l, d);
    std::mt19937_64 rng(l * 100 + d);
    for (int t = 0; t < 10000; ++t) {
      Elt a = rng() % f->order(), b = rng() % f->order(), c = rng() % f->order();
      REQUIRE(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
      REQUIRE(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
      REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      REQUIRE(f->add(a, f->neg(a)) == 0);
      if (a)
        REQUIRE(f->mul(a, f->inv(a)) == 1);
    }
  }
}

TEST_CASE("factor_over examples and reconstruction") {
  auto f5 = make_field(5, 1), f3 = make_field(3, 1), f7 = make_field(7, 1);
  auto fx = factor_over(*f5, {4, 0, 1});
  REQUIRE(fx.size() == 2);
  CHECK(fx[0].factor == Poly{1, 1}); // x + 1
  CHECK(fx[1].factor == Poly{4, 1}); // x - 1
  auto irr = factor_over(*f3, {1, 0, 1});
  REQUIRE(irr.size() == 1);
  CHECK(irr[0].factor == Poly{1, 0, 1});
  CHECK(irr[0].exponent == 1);
  auto sq = factor_over(*f7, {4, 3, 1}); // (x-2)^2
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].factor == Poly{5, 1});
  CHECK(sq[0].exponent == 2);
  CHECK_THROWS_AS(factor_over(*f7, {}), ZeroPolynomial);

  for (auto [l, d] : {std::pair{2ull, 1u}, {3ull, 1u}, {5ull, 2u}, {7ull, 1u}, {2ull, 3u}}) {
    auto f = make_field(l, d);
    std::mt19937_64 rng(l + d);
    for (int t = 0; t < 200; ++t) {
      int deg = 1 + static_cast<int>(rng() % 9);
      Poly p(deg + 1);
      for (auto &c : p)
        c = rng() % f->order();
      p.back() = 1;
      // square a random factor sometimes to exercise repeated factors
      if (t % 3 == 0)
        p = poly::mul(*f, p, Poly{rng() % f->order(), 1});
      if (t % 5 == 0 && f->characteristic() <= 3) {
        Poly frob = p;
        for (unsigned k = 1; k < f->characteristic(); ++k)
          frob = poly::mul(*f, frob, p);
        p = frob;
      }
      auto factors = factor_over(*f, p);
      Poly prod{1};
      for (auto &fa : factors) {
        REQUIRE(poly::is_irreducible(*f, fa.factor));
        for (unsigned k = 0; k < fa.exponent; ++k)
          prod = poly::mul(*f, prod, fa.factor);
      }
      REQUIRE(prod == poly::monic(*f, p));
    }
  }
}

#include <random>

#include "bigcheck/gmodule.hpp"
#include "doctest.h"

using namespace bigcheck;

namespace {

Matrix M(const Field &f, std::vector<std::vector<std::int64_t>> rows) {
  return Matrix::from_rows(f, rows);
}

Group gl2(const Field &f) {
  // diag(g, 1) and [[-1, 1], [-1, 0]] generate GL_2(F_p) for a primitive root g
  return MatrixGroup::close(
      {M(f, {{static_cast<std::int64_t>(f->primitive()), 0}, {0, 1}}), M(f, {{-1, 1}, {-1, 0}})});
}

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
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

} // namespace

TEST_CASE("conjugation module") {
  auto f5 = make_field(5, 1);
  auto g = gl2(f5);
  REQUIRE(g->order() == 480);
  auto mod = conjugation_module(g);
  CHECK(mod.dim() == 4);
  CHECK(mod.is_stable(sl_basis(f5, 2)));
  CHECK(sl_basis(f5, 2).rows() == 3);
  // action is a homomorphism: spot check all pairs through the tables
  auto acts = mod.all_actions();
  for (std::size_t i = 0; i < g->order(); i += 7)
    for (std::size_t j = 0; j < g->order(); j += 11)
      REQUIRE(acts[g->mul(i, j)] == acts[i] * acts[j]);
  auto triv = conjugation_module(MatrixGroup::close(f5, 2, {}));
  CHECK(triv.action(0).is_identity());
  CHECK(triv.generator_actions()[0].is_identity());
}

TEST_CASE("spin examples") {
  auto f5 = make_field(5, 1);
  auto triv = GModule::natural(MatrixGroup::close(f5, 2, {}));
  CHECK(spin(triv, {1, 3}).rows() == 1);
  auto mod = conjugation_module(gl2(f5));
  auto s = spin(mod, {1, 0, 0, 1});
  CHECK(s == M(f5, {{1, 0, 0, 1}}));
  auto t = spin(mod, {0, 1, 0, 0});
  CHECK(t == sl_basis(f5, 2));
  CHECK_THROWS_AS(spin(mod, {0, 0, 0, 0}), ZeroVector);
}

TEST_CASE("socle and submodule examples") {
  auto f5 = make_field(5, 1);
  auto mod = conjugation_module(gl2(f5));
  auto soc = socle_constituents(mod);
  REQUIRE(soc.constituents.size() == 2);
  CHECK(soc.constituents[0].representative.basis == M(f5, {{1, 0, 0, 1}}));
  CHECK(soc.constituents[1].representative.basis == sl_basis(f5, 2));
  auto all = enumerate_irreducible_submodules(mod);
  CHECK(all.all_irreducibles.size() == 2);
  CHECK_FALSE(all.truncated);
  auto probe = probe_irreducible_submodules(mod);
  CHECK(probe == all.all_irreducibles);

  auto triv = GModule::natural(MatrixGroup::close(f5, 2, {}));
  auto ts = enumerate_irreducible_submodules(triv);
  REQUIRE(ts.constituents.size() == 1);
  CHECK(ts.constituents[0].multiplicity == 2);
  CHECK(ts.all_irreducibles.size() == 6);
  CHECK(ts.total_irreducibles() == 6);
  CHECK(probe_irreducible_submodules(triv).size() == 6);
  auto capped = enumerate_irreducible_submodules(triv, 4);
  CHECK(capped.truncated);
  CHECK(capped.all_irreducibles.size() == 4);

  auto torus = GModule::natural(
      MatrixGroup::close({M(f5, {{2, 0}, {0, 1}}), M(f5, {{1, 0}, {0, 2}})}));
  auto tor = enumerate_irreducible_submodules(torus);
  REQUIRE(tor.all_irreducibles.size() == 2);
  CHECK(tor.all_irreducibles[0].basis == M(f5, {{0, 1}}));
  CHECK(tor.all_irreducibles[1].basis == M(f5, {{1, 0}}));
}

TEST_CASE("absolute irreducibility") {
  auto f5 = make_field(5, 1);
  CHECK(is_absolutely_irreducible(GModule::natural(gl2(f5))));
  // multiplication by a primitive element of F_25 on the basis {1, x}
  auto f25 = make_field(5, 2);
  Elt z = f25->primitive();
  Matrix c(f5, 2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    auto col = f25->coeffs(f25->mul(z, j == 0 ? 1 : f25->generator_x()));
    for (std::size_t i = 0; i < 2; ++i)
      c(i, j) = col[i];
  }
  auto cartan = MatrixGroup::close({c});
  CHECK(cartan->order() == 24);
  auto nat = GModule::natural(cartan);
  CHECK(is_irreducible(nat));
  CHECK(endomorphism_dimension(nat) == 2);
  CHECK_FALSE(is_absolutely_irreducible(nat));
  auto torus = GModule::natural(
      MatrixGroup::close({M(f5, {{2, 0}, {0, 1}}), M(f5, {{1, 0}, {0, 2}})}));
  CHECK_FALSE(is_irreducible(torus));
  auto cm = enumerate_irreducible_submodules(nat);
  CHECK(cm.all_irreducibles.size() == 1);

  for (auto [l, n] : {std::pair{3ull, 2u}, {7ull, 2u}, {3ull, 3u}, {2ull, 4u}}) {
    auto f = make_field(l, 1);
    std::vector<Matrix> gens;
    Matrix d = Matrix::identity(f, n);
    d(0, 0) = f->primitive();
    gens.push_back(d);
    Matrix cyc(f, n, n); // -1 in the corner of a cyclic shift
    for (std::size_t i = 0; i + 1 < n; ++i)
      cyc(i + 1, i) = 1;
    cyc(0, n - 1) = f->neg(1);
    gens.push_back(cyc);
    Matrix u = Matrix::identity(f, n);
    u(0, 1) = 1;
    gens.push_back(u);
    auto g = MatrixGroup::close(gens);
    CHECK(g->order() == gl_order(l, n));
    CHECK(is_absolutely_irreducible(GModule::natural(g)));
  }
}

TEST_CASE("enumeration agrees with exhaustive line probing") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (auto [l, n] : {std::pair{2ull, 2u}, {3ull, 2u}, {5ull, 2u}, {2ull, 3u}, {3ull, 3u}}) {
    auto f = make_field(l, 1);
    for (int t = 0; t < 10; ++t) {
      auto g = random_group(f, n, rng, 1 + t % 2);
      if (g->order() > 2000)
        continue;
      for (auto mod : {conjugation_module(g), GModule::natural(g)}) {
        auto en = enumerate_irreducible_submodules(mod, 1'000'000);
        REQUIRE_FALSE(en.truncated);
        auto probe = probe_irreducible_submodules(mod);
        REQUIRE(en.all_irreducibles == probe);
        REQUIRE(en.total_irreducibles() == probe.size());
        for (const auto &w : en.all_irreducibles) {
          REQUIRE(mod.is_stable(w.basis));
          // minimality: every vector of a basis spins back to the whole of w
          for (std::size_t r = 0; r < w.dim(); ++r)
            REQUIRE(spin(mod, Vec(w.basis.row(r).begin(), w.basis.row(r).end())).rows() ==
                    w.dim());
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("composition factors have the right total dimension") {
  std::mt19937_64 rng(4);
  auto f = make_field(5, 1);
  for (int t = 0; t < 20; ++t) {
    auto g = random_group(f, 2, rng, 2);
    auto mod = conjugation_module(g);
    std::size_t total = 0;
    for (const auto &c : composition_factors(mod)) {
      total += c.dim();
      REQUIRE(is_irreducible(c, 99));
    }
    REQUIRE(total == 4);
  }
}

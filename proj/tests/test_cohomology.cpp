#include <doctest.h>

#include <random>

#include "gammalat/cohomology.hpp"
#include "lattice_fixtures.hpp"

using namespace gammalat;

TEST_CASE("first cohomology examples") {
  auto c2 = fixtures::cyclic(2);
  CHECK(h1(c2->whole(), fixtures::sign_lattice(c2)).structure().to_string() == "[2]");
  CHECK(h1(c2->whole(), regular_lattice(c2)).structure().trivial());
  for (const auto& [name, m] : fixtures::small_lattices())
    CHECK(h1(m->group()->trivial_subgroup(), m).structure().trivial());
}

TEST_CASE("Tate cohomology examples") {
  auto c2 = fixtures::cyclic(2);
  CHECK(tate_zero(c2->whole(), trivial_lattice(c2, 1)).to_string() == "[2]");
  CHECK(tate_minus1(c2->whole(), fixtures::sign_lattice(c2)).to_string() == "[2]");
  CHECK(tate_minus1(c2->whole(), regular_lattice(c2)).trivial());
  CHECK(tate(-1, c2->whole(), trivial_lattice(c2, 1)).trivial());
  CHECK_THROWS_AS(tate(1, c2->whole(), trivial_lattice(c2, 1)), InputError);
}

TEST_CASE("second cohomology examples") {
  auto c2 = fixtures::cyclic(2);
  CHECK(h2(c2->whole(), trivial_lattice(c2, 1)).structure().to_string() == "[2]");
  CHECK(h2(c2->whole(), regular_lattice(c2)).structure().trivial());
  auto v4 = fixtures::klein4();
  auto j = fixtures::norm_quotient(v4);
  CHECK(h2(v4->whole(), j).structure().to_string() == "[2]");
  CohomologyLimits tiny;
  tiny.h2_max_order = 2;
  CHECK_THROWS_AS(h2(v4->whole(), j, tiny), CapExceeded);
}

TEST_CASE("compact coordinates agree with the full systems") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    for (const auto& h : m->group()->subgroup_classes()) {
      CAPTURE(h.label());
      CHECK(h1(h, m).structure() == h1_reference(h, m));
      CHECK(h2(h, m).structure() == h2_reference(h, m));
    }
  }
}

TEST_CASE("expanded cocycles satisfy the cocycle identities") {
  std::mt19937_64 rng(17);
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    Subgroup g = m->group()->whole();
    const FiniteGroup& grp = *m->group();
    auto c1 = h1(g, m);
    for (int trial = 0; trial < 3; ++trial) {
      IntVector coeffs(c1.cocycle_basis().cols());
      for (auto& x : coeffs) x = static_cast<long>(rng() % 7) - 3;
      IntVector z = c1.cocycle_basis() * coeffs;
      auto f = expand_cocycle1(g, m, z);
      for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b) {
          int x = g.members()[a], y = g.members()[b];
          CHECK(f[static_cast<std::size_t>(g.position(grp.multiply(x, y)))] == f[a] + m->rho(x) * f[b]);
        }
      CHECK(compact_from_full1(g, f, g) == z);
    }
    auto c2 = h2(g, m);
    for (int trial = 0; trial < 3; ++trial) {
      IntVector coeffs(c2.cocycle_basis().cols());
      for (auto& x : coeffs) x = static_cast<long>(rng() % 7) - 3;
      IntVector z = c2.cocycle_basis() * coeffs;
      auto c = expand_cocycle2(g, m, z);
      for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
          for (std::size_t d = 0; d < g.order(); ++d) {
            int x = g.members()[a], y = g.members()[b], w = g.members()[d];
            auto pos = [&](int e) { return static_cast<std::size_t>(g.position(e)); };
            IntVector lhs = m->rho(x) * c[b][d] + c[a][pos(grp.multiply(y, w))];
            IntVector rhs = c[pos(grp.multiply(x, y))][d] + c[a][b];
            CHECK(lhs == rhs);
          }
      CHECK(compact_from_full2(g, c, g) == z);
    }
  }
}

TEST_CASE("Ext groups") {
  auto c2 = fixtures::cyclic(2);
  auto one = trivial_lattice(c2, 1);
  CHECK(ext1(fixtures::sign_lattice(c2), one).to_string() == "[2]");
  CHECK(ext1(regular_lattice(c2), one).trivial());
  for (const auto& [name, m] : fixtures::small_lattices())
    CHECK(ext1(trivial_lattice(m->group(), 1), m) == h1(m->group()->whole(), m).structure());
}

TEST_CASE("Tate duality cross-check") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    auto d = dual_lattice(m);
    for (const auto& h : m->group()->subgroup_classes()) CHECK(tate_minus1(h, m) == h1(h, d).structure());
  }
  auto s4 = fixtures::symmetric4();
  auto j = fixtures::norm_quotient(s4);
  auto d = dual_lattice(j);
  for (const auto& h : s4->subgroup_classes()) CHECK(tate_minus1(h, j) == h1(h, d).structure());
}

TEST_CASE("Shapiro vanishing") {
  for (const auto& [name, g] : fixtures::all_groups()) {
    CAPTURE(name);
    for (const auto& k : g->subgroup_classes()) {
      auto p = coset_lattice(k);
      for (const auto& h : g->subgroup_classes()) CHECK(h1(h, p).structure().trivial());
    }
  }
}

TEST_CASE("cyclic periodicity") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    for (const auto& h : m->group()->subgroup_classes())
      if (h.is_cyclic()) CHECK(h2(h, m).structure() == tate_zero(h, m));
  }
}

TEST_CASE("restriction kernels") {
  auto v4 = fixtures::klein4();
  auto j = fixtures::norm_quotient(v4);
  auto cyc = cyclic_subgroups_up_to_conjugacy(v4);
  auto k2 = restriction_kernel(2, j, cyc);
  CHECK(k2.structure.to_string() == "[2]");
  REQUIRE(k2.generators.size() == 1);
  for (const auto& h : cyc) {
    auto local = h2(h, j);
    CHECK(local.is_coboundary(compact_from_full2(v4->whole(), expand_cocycle2(v4->whole(), j, k2.generators[0]), h)));
  }
  CHECK(restriction_kernel(1, j, cyc).structure.trivial());
  CHECK(h1(v4->whole(), j).structure().to_string() == "[2,2]");

  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    auto g = m->group();
    for (int d = 1; d <= 2; ++d) {
      auto full = d == 1 ? h1(g->whole(), m).structure() : h2(g->whole(), m).structure();
      CHECK(restriction_kernel(d, m, {g->trivial_subgroup()}).structure == full);
      CHECK(restriction_kernel(d, m, {}).structure == full);
      CHECK(restriction_kernel(d, m, {g->whole()}).structure.trivial());
    }
  }
  CHECK_THROWS_AS(restriction_kernel(1, j, {fixtures::cyclic(2)->whole()}), InputError);
  CHECK_THROWS_AS(restriction_kernel(3, j, {}), InputError);
}

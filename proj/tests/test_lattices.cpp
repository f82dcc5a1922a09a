#include <doctest.h>

#include "gammalat/cohomology.hpp"
#include "gammalat/errors.hpp"
#include "gammalat/extensions.hpp"
#include "gammalat/lattices.hpp"
#include "lattice_fixtures.hpp"

using namespace gammalat;

TEST_CASE("basic constructions") {
  auto s3 = fixtures::symmetric3();
  auto nat = coset_lattice(s3->subgroup_classes()[1]);
  CHECK(nat->rank() == 3);
  CHECK(nat->has_permutation_action());

  auto c2 = fixtures::cyclic(2);
  auto one = trivial_lattice(c2, 1);
  CHECK(one->rank() == 1);
  CHECK(one->generator_matrices()[0] == IntMatrix::identity(1));
  auto sign = fixtures::sign_lattice(c2);
  CHECK(sign->rho(1) == IntMatrix::from_rows({{-1}}));

  CHECK_THROWS_AS(matrix_lattice(c2, {IntMatrix::from_rows({{2}})}), InputError);
  // x ↦ x + 1 on a 2-cycle is unimodular but has infinite order
  CHECK_THROWS_AS(matrix_lattice(c2, {IntMatrix::from_rows({{1, 1}, {0, 1}})}), InputError);
  CHECK_THROWS_AS(matrix_lattice(c2, {}), InputError);
}

TEST_CASE("duals") {
  auto c2 = fixtures::cyclic(2);
  auto sign = fixtures::sign_lattice(c2);
  CHECK(same_action(*dual_lattice(sign), *sign));
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    CHECK(same_action(*dual_lattice(dual_lattice(m)), *m));
    if (m->has_permutation_action()) CHECK(same_action(*dual_lattice(m), *m));
  }
  auto s3 = fixtures::symmetric3();
  for (const auto& h : s3->subgroup_classes()) {
    auto p = coset_lattice(h);
    CHECK(same_action(*dual_lattice(p), *p));
  }
}

TEST_CASE("direct sums") {
  auto c2 = fixtures::cyclic(2);
  auto s = direct_sum(trivial_lattice(c2, 1), fixtures::sign_lattice(c2));
  CHECK(s->rank() == 2);
  CHECK(s->generator_matrices()[0] == IntMatrix::from_rows({{1, 0}, {0, -1}}));
  auto a = fixtures::sign_lattice(c2);
  CHECK(same_action(*direct_sum(a, trivial_lattice(c2, 0)), *a));
  CHECK_THROWS_AS(direct_sum(a, trivial_lattice(fixtures::cyclic(3), 1)), InputError);

  auto lats = fixtures::small_lattices();
  for (std::size_t i = 0; i < lats.size(); ++i)
    for (std::size_t j = 0; j < lats.size(); ++j) {
      if (lats[i].second->group() != lats[j].second->group()) continue;
      auto fa = fingerprint(lats[i].second), fb = fingerprint(lats[j].second);
      auto fs = fingerprint(direct_sum(lats[i].second, lats[j].second));
      for (std::size_t k = 0; k < fs.entries.size(); ++k)
        CHECK(fs.entries[k].fixed_rank == fa.entries[k].fixed_rank + fb.entries[k].fixed_rank);
    }
}

TEST_CASE("hom lattices") {
  auto c2 = fixtures::cyclic(2);
  auto sign = fixtures::sign_lattice(c2);
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    CHECK(same_action(*hom_lattice(trivial_lattice(m->group(), 1), m), *m));
  }
  CHECK(same_action(*hom_lattice(sign, trivial_lattice(c2, 1)), *sign));
  auto reg = regular_lattice(c2);
  auto hom = hom_lattice(reg, reg);
  CHECK(hom->rank() == 4);
  CHECK(fixed_sublattice(hom, c2->whole()).cols() == 2);
  // every fixed vector is an equivariant map
  auto fixed = fixed_sublattice(hom, c2->whole());
  for (std::size_t c = 0; c < fixed.cols(); ++c)
    CHECK(check_equivariant(unvectorize(fixed.column(c), 2, 2), reg, reg).ok);
}

TEST_CASE("fixed sublattices and restriction") {
  auto c2 = fixtures::cyclic(2);
  auto reg = regular_lattice(c2);
  CHECK(fixed_sublattice(reg, c2->whole()) == IntMatrix::from_rows({{1}, {1}}));
  CHECK(fixed_sublattice(fixtures::sign_lattice(c2), c2->whole()).cols() == 0);
  CHECK(fixed_sublattice(reg, c2->trivial_subgroup()).cols() == 2);

  auto v4 = fixtures::klein4();
  auto rv = regular_lattice(v4);
  for (const auto& h : v4->subgroup_classes()) {
    if (h.order() != 2) continue;
    auto r = restrict_action(rv, h);
    CHECK(r->group()->order() == 2);
    // two free orbits: fixed rank 2, no cohomology
    CHECK(fixed_sublattice(r, r->group()->whole()).cols() == 2);
    CHECK(h1(r->group()->whole(), r).structure().trivial());
    CHECK(tate_zero(r->group()->whole(), r).trivial());
  }
  auto triv = restrict_action(rv, v4->trivial_subgroup());
  CHECK(triv->group()->order() == 1);
  CHECK(triv->rank() == 4);
  auto whole = restrict_action(rv, v4->whole());
  CHECK(whole->group()->order() == 4);
  CHECK(fingerprint(whole).entries.size() == 5);
}

TEST_CASE("equivariance checks") {
  auto c2 = fixtures::cyclic(2);
  auto one = trivial_lattice(c2, 1);
  auto reg = regular_lattice(c2);
  CHECK(check_equivariant(IntMatrix::from_rows({{1}, {1}}), one, reg).ok);
  auto bad = check_equivariant(IntMatrix::from_rows({{1}, {0}}), one, reg);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violating_generator == 0);
  CHECK(check_equivariant(IntMatrix::from_rows({{1, 1}}), reg, one).ok);
  CHECK_THROWS_AS(make_map(one, reg, IntMatrix::from_rows({{1}, {0}})), InputError);
}

TEST_CASE("quotients") {
  auto v4 = fixtures::klein4();
  auto j = fixtures::norm_quotient(v4);
  CHECK(j->rank() == 3);
  auto c2 = fixtures::cyclic(2);
  auto reg = regular_lattice(c2);
  auto one = trivial_lattice(c2, 1);
  auto q = quotient_lattice(make_map(one, reg, IntMatrix::from_rows({{1}, {1}})));
  CHECK(q.lattice->rank() == 1);
  CHECK(q.lattice->generator_matrices()[0] == IntMatrix::from_rows({{-1}}));
  CHECK((q.projection.matrix * IntMatrix::from_rows({{1}, {1}})).is_zero());
  CHECK(q.projection.matrix * q.section == IntMatrix::identity(1));
  CHECK(check_equivariant(q.projection.matrix, reg, q.lattice).ok);

  try {
    quotient_lattice(make_map(one, one, IntMatrix::from_rows({{2}})));
    FAIL("expected torsion error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("[2]") != std::string::npos);
  }
}

TEST_CASE("dualized sequences stay exact") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    // 0 → M^G → M → Q → 0 with the inclusion of the fixed sublattice.
    IntMatrix fixed = fixed_sublattice(m, m->group()->whole());
    auto inc = sublattice(m, fixed);
    auto q = quotient_lattice(inc);
    auto dm = dual_lattice(m), dq = dual_lattice(q.lattice), dsub = dual_lattice(inc.source);
    auto pd = dual_map(q.projection, dm, dq);   // Q^∨ → M^∨
    auto id = dual_map(inc, dsub, dm);          // M^∨ → sub^∨
    CHECK(check_equivariant(pd.matrix, dq, dm).ok);
    CHECK(check_equivariant(id.matrix, dm, dsub).ok);
    CHECK((id.matrix * pd.matrix).is_zero());
    for (const auto& d : smith_invariants(pd.matrix)) CHECK(d == 1);   // injective, saturated
    for (const auto& d : smith_invariants(id.matrix)) CHECK(d == 1);   // surjective
    CHECK(smith_invariants(id.matrix).size() == dsub->rank());
    CHECK(kernel_basis(id.matrix).cols() == dq->rank());
  }
}

TEST_CASE("fingerprints") {
  auto c2 = fixtures::cyclic(2);
  auto fp = fingerprint(fixtures::sign_lattice(c2));
  REQUIRE(fp.entries.size() == 2);
  CHECK(fp.entries[0].fixed_rank == 1);
  CHECK(fp.entries[0].h1.trivial());
  CHECK(fp.entries[0].tate_minus1.trivial());
  CHECK(fp.entries[1].fixed_rank == 0);
  CHECK(fp.entries[1].h1.to_string() == "[2]");
  CHECK(fp.entries[1].tate_minus1.to_string() == "[2]");

  auto ft = fingerprint(trivial_lattice(c2, 1));
  for (const auto& e : ft.entries) {
    CHECK(e.fixed_rank == 1);
    CHECK(e.h1.trivial());
    CHECK(e.tate_minus1.trivial());
  }

  for (const auto& [name, g] : fixtures::all_groups()) {
    if (g->order() > 12) continue;
    for (const auto& k : g->subgroup_classes()) {
      auto f = fingerprint(coset_lattice(k));
      for (const auto& e : f.entries) CHECK(e.h1.trivial());
    }
  }
}

TEST_CASE("permutation summands are invisible to cohomology") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    auto fm = fingerprint(m);
    for (const auto& k : m->group()->subgroup_classes()) {
      auto fs = fingerprint(direct_sum(m, coset_lattice(k)));
      CHECK(fs.same_cohomology(fm));
    }
  }
}

TEST_CASE("parallel fingerprint matches serial reference") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    CHECK(fingerprint(m) == fingerprint_serial(m));
  }
  auto s4 = fixtures::symmetric4();
  auto m = fixtures::norm_quotient(s4);
  CHECK(fingerprint(m) == fingerprint_serial(m));
}

TEST_CASE("module generators span the lattice") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    IntMatrix gens = module_generators(m);
    std::vector<IntVector> rows;
    for (std::size_t c = 0; c < gens.cols(); ++c)
      for (int g = 0; g < static_cast<int>(m->group()->order()); ++g) rows.push_back(m->rho(g) * gens.column(c));
    IntMatrix span = hermite_basis(rows, m->rank());
    CHECK(span.rows() == m->rank());
    CHECK(span.is_identity());
  }
}

TEST_CASE("streamed solver agrees with the basis solver") {
  // Maps into every coset lattice, constrained on module generators to match
  // a random equivariant map or a random non-equivariant target.
  std::mt19937_64 rng(4242);
  for (const auto& [name, m] : fixtures::small_lattices()) {
    for (const auto& h : m->group()->subgroup_classes()) {
      CAPTURE(name);
      auto p = coset_lattice(h);
      auto basis = equivariant_maps(m, p);
      IntMatrix gens = module_generators(m);
      IntMatrix left = IntMatrix::identity(p->rank());
      IntMatrix phi(p->rank(), m->rank());
      for (const auto& b : basis) phi += b.scaled(static_cast<long>(rng() % 5) - 2);
      IntMatrix bogus = phi * gens;
      if (bogus.rows() > 0 && bogus.cols() > 0) bogus(0, 0) += 1;
      for (const IntMatrix& target : {IntMatrix(phi * gens), bogus}) {
        MapConstraint c{left, gens, target};
        auto streamed = solve_into_permutation(m, p, c, default_split_cap);
        auto reference = solve_equivariant(basis, p->rank(), m->rank(), {c});
        CHECK(streamed.map.has_value() == reference.map.has_value());
        if (streamed.map) {
          CHECK(check_equivariant(*streamed.map, m, p).ok);
          CHECK(*streamed.map * gens == target);
        }
      }
    }
  }
  auto m = fixtures::small_lattices().front().second;
  auto p = regular_lattice(m->group());
  IntMatrix gens = module_generators(m);
  CHECK_THROWS_AS(solve_into_permutation(m, p, {IntMatrix::identity(p->rank()), gens, IntMatrix(p->rank(), gens.cols())}, 1),
                  CapExceeded);
}

TEST_CASE("declarative builds") {
  auto s3 = fixtures::symmetric3();
  // Stabilizer of the point 0 in S₃: the natural permutation lattice.
  std::vector<int> stab;
  for (int x = 0; x < static_cast<int>(s3->order()); ++x)
    if (s3->element(x)[0] == 0) stab.push_back(x);
  auto nat = build_lattice(s3, CosetsSpec{s3->make_subgroup(stab)}, "natural");
  CHECK(nat->rank() == 3);
  CHECK(nat->has_permutation_action());
  CHECK(nat->name() == "natural");

  auto c2 = fixtures::cyclic(2);
  auto t = build_lattice(c2, TrivialSpec{1});
  CHECK(t->rank() == 1);
  CHECK(t->generator_matrices()[0] == IntMatrix::identity(1));
  auto sign = build_lattice(c2, MatricesSpec{1, {IntMatrix::from_rows({{-1}})}});
  CHECK(same_action(*sign, *fixtures::sign_lattice(c2)));
  CHECK(build_lattice(c2, RegularSpec{})->rank() == 2);
  CHECK(build_lattice(c2, DualSpec{sign})->rank() == 1);
  CHECK(build_lattice(c2, SumSpec{sign, t})->rank() == 2);
  CHECK(build_lattice(c2, HomSpec{sign, sign})->generator_matrices()[0] == IntMatrix::identity(1));

  CHECK_THROWS_AS(build_lattice(c2, MatricesSpec{1, {IntMatrix::from_rows({{2}})}}), InputError);
  CHECK_THROWS_AS(build_lattice(c2, MatricesSpec{2, {IntMatrix::from_rows({{0, 1}, {1, 1}})}}), InputError);
  CHECK_THROWS_AS(build_lattice(s3, DualSpec{sign}), InputError);
  CHECK_THROWS_AS(build_lattice(s3, CosetsSpec{c2->whole()}), InputError);
}

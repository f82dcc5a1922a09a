#include <doctest.h>

#include <random>

#include "gammalat/torus.hpp"
#include "lattice_fixtures.hpp"

using namespace gammalat;

namespace {

Torus quadratic() { return {fixtures::sign_lattice(fixtures::cyclic(2)), "quadratic norm-one"}; }
Torus biquadratic() { return {fixtures::norm_quotient(fixtures::klein4()), "biquadratic norm-one"}; }

// Every class of `small` lies in the span of the classes of `big`.
bool classes_contained(const RestrictionKernel& small, const RestrictionKernel& big) {
  const auto& amb = big.ambient;
  const auto& orders = amb.structure().torsion;
  if (orders.empty()) return small.generators.empty();
  std::vector<IntVector> rows;
  for (const auto& gvec : big.generators) rows.push_back(amb.class_of(gvec));
  for (std::size_t i = 0; i < orders.size(); ++i) {
    IntVector e(orders.size(), 0);
    e[i] = orders[i];
    rows.push_back(e);
  }
  IntMatrix span = hermite_basis(rows, orders.size());
  SublatticeBasis sb(span.transpose());
  for (const auto& gvec : small.generators)
    if (!sb.contains(amb.class_of(gvec))) return false;
  return true;
}

}  // namespace

TEST_CASE("flags of the pinned tori") {
  for (const auto& [name, g] : fixtures::all_groups()) {
    if (g->order() > 8) continue;
    for (const auto& h : g->subgroup_classes()) {
      CAPTURE(name);
      auto f = classify_torus({coset_lattice(h), "quasi-trivial"});
      CHECK(f.quasi_trivial);
      CHECK(f.special);
      CHECK(f.coflasque);
      CHECK(f.flasque);
    }
  }
  for (const auto& t : {quadratic(), biquadratic()}) {
    CAPTURE(t.label);
    auto f = classify_torus(t);
    CHECK_FALSE(f.quasi_trivial);
    CHECK_FALSE(f.special);
    CHECK_FALSE(f.coflasque);
    CHECK_FALSE(f.flasque);
  }
}

TEST_CASE("rationality verdicts") {
  auto q = retract_rational(quadratic());
  CHECK(q.holds);
  CHECK(q.invariant.flasque->rank() == 1);
  CHECK(stably_rational_partial(quadratic()).verdict == Verdict::yes);

  auto b = retract_rational(biquadratic());
  CHECK_FALSE(b.holds);
  // Independent confirmation: a nonzero h1 of F̂ rules out invertibility.
  CHECK_FALSE(h1(fixtures::klein4()->whole(), b.invariant.flasque).structure().trivial());
  CHECK(stably_rational_partial(biquadratic()).verdict == Verdict::no);

  auto c2 = fixtures::cyclic(2);
  Torus qt{regular_lattice(c2), "R(C2)"};
  CHECK(retract_rational(qt).holds);
  CHECK(stably_rational_partial(qt).verdict == Verdict::yes);

  // Quasi-trivial tori over S₃, also in a disguised basis: the witness is
  // F̂ ⊕ T̂ ≅ P from the split flasque resolution.
  auto s3 = fixtures::symmetric3();
  std::mt19937_64 rng(17);
  for (const auto& h : s3->subgroup_classes()) {
    auto p = coset_lattice(h);
    for (const auto& m : {p, fixtures::conjugate(p, fixtures::random_unimodular(rng, p->rank()))}) {
      auto r = stably_rational_partial(Torus{m, "P"});
      REQUIRE(r.verdict == Verdict::yes);
      CHECK(verify_stable_witness(flasque_invariant(m).flasque, r));
    }
  }
}

TEST_CASE("both Zhe routes") {
  auto q = zhe_trivial(quadratic());
  CHECK(q.trivial);
  CHECK(q.route_a);
  CHECK(q.route_b);
  auto b = zhe_trivial(biquadratic());
  CHECK_FALSE(b.trivial);
  CHECK_FALSE(b.route_b);
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    auto z = zhe_trivial({m, name});
    CHECK(z.route_a == z.route_b);
  }
}

TEST_CASE("restriction kernels of the biquadratic torus") {
  auto v4 = fixtures::klein4();
  auto t = biquadratic();
  CHECK(sha_kernel(t, 2).structure.to_string() == "[2]");
  CHECK(sha_kernel(t, 2).label == "ω-kernel (upper bound)");
  CHECK(sha_kernel(t, 1).structure.trivial());
  // Oracle: H²(H, J) ≅ H³(H, ℤ) vanishes for cyclic H, so the kernel is all
  // of H²(V₄, J) ≅ H³(V₄, ℤ) = ℤ/2.
  CHECK(h2(v4->whole(), t.character_lattice).structure().to_string() == "[2]");
  for (const auto& h : cyclic_subgroups_up_to_conjugacy(v4)) CHECK(h2(h, t.character_lattice).structure().trivial());
  CHECK(h2_reference(v4->whole(), t.character_lattice).to_string() == "[2]");

  auto whole = sha_kernel(t, 2, LocalsChoice::listed, {v4->whole()});
  CHECK(whole.structure.trivial());
  CHECK(whole.label == "realized");
  CHECK_THROWS_AS(sha_kernel(t, 2, LocalsChoice::listed, {fixtures::cyclic(2)->whole()}), InputError);
}

TEST_CASE("restriction kernels shrink as locals grow") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    const auto& g = m->group();
    auto classes = g->subgroup_classes();
    for (int degree : {1, 2}) {
      std::vector<Subgroup> locals;
      RestrictionKernel prev = restriction_kernel(degree, m, locals);
      for (const auto& h : classes) {
        locals.push_back(h);
        auto next = restriction_kernel(degree, m, locals);
        CHECK(classes_contained(next, prev));
        CHECK(next.structure.order() <= prev.structure.order());
        prev = next;
      }
      CHECK(prev.structure.trivial());
    }
  }
}

TEST_CASE("permutation character lattices have no restriction kernels") {
  for (const auto& [name, g] : fixtures::all_groups()) {
    if (g->order() > 8) continue;
    for (const auto& h : g->subgroup_classes()) {
      CAPTURE(name);
      Torus t{coset_lattice(h), "P"};
      CHECK(sha_kernel(t, 1, LocalsChoice::cyclic).structure.trivial());
      CHECK(sha_kernel(t, 1, LocalsChoice::listed, {g->trivial_subgroup()}).structure.trivial());
      CHECK(sha_kernel(t, 2, LocalsChoice::cyclic).structure.trivial());
    }
  }
}

TEST_CASE("degree-2 kernel matches h1 of the flasque invariant") {
  // Classical identity Ш²_ω(G, T̂) ≅ H¹(G, F̂); an independent route.
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    Torus t{m, name};
    auto f = flasque_invariant(m);
    CHECK(sha_kernel(t, 2).structure == h1(m->group()->whole(), f.flasque).structure());
  }
}

TEST_CASE("Zhe reports") {
  auto b = zhe_report(biquadratic(), FieldModel::number_field);
  REQUIRE(b.zhe_group);
  CHECK(b.zhe_group->to_string() == "[2]");
  CHECK_FALSE(b.retract_rational);
  CHECK_FALSE(b.zhe_trivial);

  auto q = zhe_report(quadratic(), FieldModel::number_field);
  CHECK(q.zhe_group->trivial());
  CHECK(q.zhe_trivial);
  CHECK(q.retract_rational);

  for (auto model : {FieldModel::local_nonarchimedean, FieldModel::finite, FieldModel::cohomological_dim_le_1}) {
    auto r = zhe_report(biquadratic(), model);
    CHECK(r.zhe_trivial);
    CHECK(r.zhe_group->trivial());
  }
  auto g = zhe_report(biquadratic(), FieldModel::general);
  CHECK_FALSE(g.zhe_group);
  CHECK(g.zhe_trivial == g.retract_rational);
  CHECK(parse_field_model("finite") == FieldModel::finite);
  CHECK_THROWS_AS(parse_field_model("p-adic"), InputError);
}

TEST_CASE("report flag implications on the zoo") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    auto r = zhe_report({m, name}, FieldModel::general);
    if (r.flags.quasi_trivial) CHECK(r.flags.special);
    if (r.flags.special) {
      CHECK(r.retract_rational);
      CHECK(r.zhe_trivial);
    }
    CHECK(r.retract_rational == r.zhe_trivial);
  }
}

#include <doctest.h>

#include <random>

#include "gammalat/cohomology.hpp"
#include "gammalat/resolutions.hpp"
#include "lattice_fixtures.hpp"

using namespace gammalat;

namespace {

bool all_identity(const LatticePtr& m) {
  for (const auto& a : m->generator_matrices())
    if (!a.is_identity()) return false;
  return true;
}

ExtensionClass random_class(std::mt19937_64& rng, const LatticePtr& a, const LatticePtr& b) {
  auto grp = h1(a->group()->whole(), hom_lattice(a, b));
  IntVector v(grp.ambient(), 0);
  for (std::size_t c = 0; c < grp.cocycle_basis().cols(); ++c)
    v = v + scaled(grp.cocycle_basis().column(c), static_cast<long>(rng() % 5) - 2);
  return class_from_compact(a, b, v);
}

std::size_t whole_class(const GroupPtr& g) { return g->subgroup_classes().size() - 1; }

}  // namespace

TEST_CASE("coflasque resolution of the sign lattice") {
  auto c2 = fixtures::cyclic(2);
  auto sign = fixtures::sign_lattice(c2);
  auto r = build_resolution(sign, ResolutionKind::coflasque, 1);
  CHECK(r.verified);
  // M^{C2} = 0 and M^{e} = ℤ: one regular summand, kernel ℤ(1,1).
  CHECK(r.permutation_term->rank() == 2);
  CHECK(r.permutation_summands == std::vector<std::size_t>{0});
  CHECK(r.designated_term->rank() == 1);
  CHECK(all_identity(r.designated_term));
  CHECK(same_action(*r.permutation_term, *regular_lattice(c2)));
}

TEST_CASE("flasque resolution of the sign lattice is the dual") {
  auto c2 = fixtures::cyclic(2);
  auto sign = fixtures::sign_lattice(c2);
  auto f = build_resolution(sign, ResolutionKind::flasque, 1);
  CHECK(f.verified);
  CHECK(f.sequence.sub() == sign);
  CHECK(f.designated_term->rank() == 1);
  CHECK(all_identity(f.designated_term));
  auto inv = flasque_invariant(sign);
  for (const auto& e : inv.fingerprint.entries) {
    CHECK(e.h1.trivial());
    CHECK(e.tate_minus1.trivial());
  }
}

TEST_CASE("predicates on pinned examples") {
  auto c2 = fixtures::cyclic(2);
  auto sign = fixtures::sign_lattice(c2);
  auto v = is_coflasque(sign);
  CHECK_FALSE(v.holds);
  CHECK(v.failing_class == static_cast<int>(whole_class(c2)));
  CHECK(v.witness.to_string() == "[2]");
  CHECK_FALSE(is_flasque(sign).holds);
  CHECK(is_coflasque(trivial_lattice(c2, 3)).holds);

  for (const auto& [gname, g] : fixtures::all_groups())
    for (const auto& h : g->subgroup_classes()) {
      CAPTURE(gname);
      auto p = coset_lattice(h);
      CHECK(is_coflasque(p).holds);
      CHECK(is_flasque(p).holds);
      CHECK(is_invertible(p).holds);
      CHECK(is_permutation(p).verdict == Verdict::yes);
    }

  // From 0 → I → ℤ[G] → ℤ → 0: H¹(G, I) = ℤ / |G|.
  auto v4 = fixtures::klein4();
  auto j = fixtures::norm_quotient(v4);
  auto fl = is_flasque(j);
  CHECK_FALSE(fl.holds);
  CHECK(h1(v4->whole(), dual_lattice(j)).structure().to_string() == "[4]");
  CHECK(h1(v4->whole(), j).structure().to_string() == "[2,2]");
}

TEST_CASE("invertibility refutation for the sign lattice") {
  auto c2 = fixtures::cyclic(2);
  auto sign = fixtures::sign_lattice(c2);
  auto v = is_invertible(sign);
  CHECK_FALSE(v.holds);
  CHECK(v.refutation.find("2*y0 = 1") != std::string::npos);
  CHECK(v.ext_group.to_string() == "[2]");
  auto mixed = direct_sum(trivial_lattice(c2, 1), sign);
  CHECK_FALSE(is_invertible(mixed).holds);
  auto sec = is_invertible(regular_lattice(c2));
  REQUIRE(sec.holds);
  CHECK((sec.resolution.surj.matrix * *sec.section).is_identity());
}

TEST_CASE("permutation search") {
  auto c2 = fixtures::cyclic(2);
  CHECK(is_permutation(fixtures::sign_lattice(c2)).verdict == Verdict::no);
  auto zero = is_permutation(trivial_lattice(c2, 0));
  CHECK(zero.verdict == Verdict::yes);
  CHECK(zero.basis.rows() == 0);

  std::mt19937_64 rng(7);
  int found = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto u = fixtures::random_unimodular(rng, 2, 3);
    if (cmpabs(u.max_abs(), 2ul) > 0) continue;
    auto m = fixtures::conjugate(regular_lattice(c2), u);
    auto r = is_permutation(m);
    REQUIRE(r.verdict == Verdict::yes);
    CHECK(is_permuted_basis(m, r.basis));
    ++found;
  }
  CHECK(found > 5);

  // ℤ ⊕ ℤ⁻ has the fixed ranks of ℤ[C₂] but h1(C₂) = [2].
  auto mixed = direct_sum(trivial_lattice(c2, 1), fixtures::sign_lattice(c2));
  auto pm = is_permutation(mixed);
  CHECK(pm.verdict == Verdict::no);
  CHECK(pm.obstruction.find("[2]") != std::string::npos);
  // ℤ² with the swap is ℤ[C₂]; ℤ² with trivial action has different fixed ranks.
  CHECK(permutation_obstruction(trivial_lattice(c2, 2)).empty());
}

TEST_CASE("stably permutation") {
  auto c2 = fixtures::cyclic(2);
  auto reg = regular_lattice(c2);
  auto r = is_stably_permutation(reg);
  REQUIRE(r.verdict == Verdict::yes);
  CHECK(r.p1->rank() == 0);
  CHECK(verify_stable_witness(reg, r));
  CHECK(is_stably_permutation(fixtures::sign_lattice(c2)).verdict == Verdict::no);
  auto v4 = fixtures::klein4();
  auto j = is_stably_permutation(fixtures::norm_quotient(v4));
  CHECK(j.verdict == Verdict::no);
  // The first nonzero entry in class order is reported.
  CHECK(j.obstruction.find("is nonzero") != std::string::npos);

  // h1(C₃, I) = ℤ/3.
  auto c3 = fixtures::cyclic(3);
  CHECK(is_stably_permutation(fixtures::augmentation_ideal(c3)).verdict == Verdict::no);

  std::mt19937_64 rng(11);
  auto s3 = fixtures::symmetric3();
  auto nat = coset_lattice(s3->subgroup_classes()[1]);
  auto d = fixtures::conjugate(nat, fixtures::random_unimodular(rng, 3, 2));
  auto rd = is_stably_permutation(d);
  REQUIRE(rd.verdict == Verdict::yes);
  CHECK(verify_stable_witness(d, rd));
}

TEST_CASE("quasi-trivial split route") {
  // ℤ[C₂] ⊕ ℤ disguised at rank 3: the split resolution route or the
  // permuted basis must produce a verified witness.
  auto c2 = fixtures::cyclic(2);
  std::mt19937_64 rng(3);
  auto m = fixtures::conjugate(direct_sum(regular_lattice(c2), trivial_lattice(c2, 1)),
                               fixtures::random_unimodular(rng, 3, 5));
  auto r = is_stably_permutation(m);
  REQUIRE(r.verdict == Verdict::yes);
  CHECK(verify_stable_witness(m, r));
}

TEST_CASE("four resolution shapes on the zoo") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    for (auto kind : {ResolutionKind::coflasque, ResolutionKind::flasque})
      for (int type : {1, 2}) {
        auto c = build_resolution(m, kind, type);
        CHECK(c.verified);
        CHECK(c.permutation_term->has_permutation_action());
        if (kind == ResolutionKind::coflasque) CHECK(is_coflasque(c.designated_term).holds);
        else CHECK(is_flasque(c.designated_term).holds);
        // The resolved lattice keeps its identity.
        if (kind == ResolutionKind::coflasque && type == 1) CHECK(c.sequence.quot() == m);
        if (kind == ResolutionKind::flasque && type == 1) CHECK(c.sequence.sub() == m);
        if (kind == ResolutionKind::coflasque && type == 2) CHECK(c.sequence.sub() == m);
        if (kind == ResolutionKind::flasque && type == 2) CHECK(c.sequence.quot() == m);
      }
  }
}

TEST_CASE("flasque resolution is the dual of the coflasque resolution of the dual") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    auto md = dual_lattice(m);
    auto f = build_resolution(m, ResolutionKind::flasque, 1);
    auto c = build_resolution(md, ResolutionKind::coflasque, 1);
    auto d = dual_sequence(c.sequence);
    CHECK(same_action(*f.sequence.sub(), *d.sub()));
    CHECK(same_action(*f.sequence.mid(), *d.mid()));
    CHECK(same_action(*f.sequence.quot(), *d.quot()));
    CHECK(f.sequence.inj.matrix == d.inj.matrix);
    CHECK(f.sequence.surj.matrix == d.surj.matrix);
  }
}

TEST_CASE("strategies all give coflasque kernels") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    for (auto s : {GeneratorStrategy::descending, GeneratorStrategy::ascending, GeneratorStrategy::full}) {
      auto c = build_resolution(m, ResolutionKind::coflasque, 1, {s, true});
      CHECK(c.verified);
    }
  }
}

TEST_CASE("predicate consistency and fast mode") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    auto all = is_coflasque(m);
    auto fast = is_coflasque(m, CoflasqueMode::prime_power_classes);
    auto serial = is_coflasque_serial(m);
    CHECK(all.holds == fast.holds);
    CHECK(all.holds == serial.holds);
    CHECK(all.failing_class == serial.failing_class);
    auto inv = is_invertible(m);
    if (inv.holds) {
      CHECK(all.holds);
      CHECK(is_flasque(m).holds);
    }
    auto perm = is_permutation(m);
    auto stably = is_stably_permutation(m);
    if (perm.verdict == Verdict::yes) {
      CHECK(is_permuted_basis(m, perm.basis));
      CHECK(stably.verdict == Verdict::yes);
    }
    if (stably.verdict == Verdict::yes) {
      CHECK(verify_stable_witness(m, stably));
      CHECK(inv.holds);
    }
    if (stably.verdict == Verdict::no) CHECK_FALSE(stably.obstruction.empty());
  }
}

TEST_CASE("flasque invariant of the biquadratic lattice") {
  auto v4 = fixtures::klein4();
  auto inv = flasque_invariant(fixtures::norm_quotient(v4));
  CHECK_FALSE(h1(v4->whole(), inv.flasque).structure().trivial());
  CHECK_FALSE(is_invertible(inv.flasque).holds);
}

TEST_CASE("first-kind versality") {
  auto c2 = fixtures::cyclic(2);
  auto sign = fixtures::sign_lattice(c2);
  auto r = build_resolution(sign, ResolutionKind::coflasque, 1);
  // ψ = α itself.
  auto f = versal_factorization(r, r.sequence.surj);
  REQUIRE(f.found());
  CHECK(r.sequence.surj.matrix * f.map->matrix == r.sequence.surj.matrix);
  // ψ: ℤ[C₂] → ℤ⁻, e ↦ generator.
  auto reg = regular_lattice(c2);
  LatticeMap psi = make_map(reg, sign, IntMatrix::from_rows({{1, -1}}));
  auto g = versal_factorization(r, psi);
  REQUIRE(g.found());
  CHECK(r.sequence.surj.matrix * g.map->matrix == psi.matrix);
  CHECK(check_equivariant(g.map->matrix, reg, r.sequence.mid()).ok);

  // Flasque side: ψ: ℤ⁻ → ℤ[C₂].
  auto fr = build_resolution(sign, ResolutionKind::flasque, 1);
  LatticeMap chi = make_map(sign, reg, IntMatrix::from_rows({{1}, {-1}}));
  auto h = versal_factorization(fr, chi);
  REQUIRE(h.found());
  CHECK(h.map->matrix * fr.sequence.inj.matrix == chi.matrix);

  // The hypothesis is checked: ℤ⁻ is not invertible.
  LatticeMap bad = make_map(sign, sign, IntMatrix::from_rows({{1}}));
  CHECK_THROWS_AS(versal_factorization(r, bad), InputError);
}

TEST_CASE("second-kind versality") {
  std::mt19937_64 rng(5);
  auto c2 = fixtures::cyclic(2);
  auto v4 = fixtures::klein4();
  struct Case {
    LatticePtr m;
    LatticePtr q;
  };
  std::vector<Case> cases = {
      {fixtures::sign_lattice(c2), regular_lattice(c2)},
      {fixtures::sign_lattice(c2), trivial_lattice(c2, 1)},
      {direct_sum(trivial_lattice(c2, 1), fixtures::sign_lattice(c2)), regular_lattice(c2)},
      {fixtures::norm_quotient(v4), coset_lattice(v4->subgroup_classes()[1])},
  };
  for (const auto& cs : cases) {
    auto co = build_resolution(cs.m, ResolutionKind::coflasque, 2);
    auto fl = build_resolution(cs.m, ResolutionKind::flasque, 2);
    for (int trial = 0; trial < 3; ++trial) {
      // 0 → M → N → Q → 0
      auto given = extension_from_class(random_class(rng, cs.q, cs.m));
      auto f = versal_factorization(co, given);
      REQUIRE(f.found());
      CHECK(f.map->matrix * given.inj.matrix == co.sequence.inj.matrix);
      // 0 → Q → N → M → 0
      auto given2 = extension_from_class(random_class(rng, cs.m, cs.q));
      auto g = versal_factorization(fl, given2);
      REQUIRE(g.found());
      CHECK(given2.surj.matrix * g.map->matrix == fl.sequence.surj.matrix);
    }
  }
}

TEST_CASE("crossed resolutions agree") {
  for (const auto& [name, m] : fixtures::small_lattices()) {
    CAPTURE(name);
    CHECK(crossed_resolution_check(m, 1).consistent);
    CHECK(crossed_resolution_check(m, 2).consistent);
    auto same = crossed_resolution_check(m, 1, GeneratorStrategy::descending, GeneratorStrategy::descending);
    CHECK(same.consistent);
    CHECK(same.first.sequence.surj.matrix == same.second.sequence.surj.matrix);
  }
}

#include "lemmas.hpp"

#include <exception>
#include <optional>

#include "gammalat/cohomology.hpp"
#include "gammalat/extensions.hpp"
#include "gammalat/resolutions.hpp"

namespace gammalat::cli {

namespace {

constexpr std::size_t max_notes = 5;

void fail(LemmaResult& r, const std::string& note) {
  ++r.failures;
  if (r.failure_notes.size() < max_notes) r.failure_notes.push_back(note);
}

long small(std::mt19937_64& rng) { return static_cast<long>(rng() % 5) - 2; }

ExtensionClass random_class(std::mt19937_64& rng, const LatticePtr& a, const LatticePtr& b) {
  auto grp = h1(a->group()->whole(), hom_lattice(a, b));
  IntVector v(grp.ambient(), 0);
  for (std::size_t c = 0; c < grp.cocycle_basis().cols(); ++c) v = v + scaled(grp.cocycle_basis().column(c), small(rng));
  return class_from_compact(a, b, v);
}

LatticeMap random_equivariant(std::mt19937_64& rng, const LatticePtr& a, const LatticePtr& b) {
  IntMatrix f(b->rank(), a->rank());
  for (const auto& phi : equivariant_maps(a, b)) f += phi.scaled(small(rng));
  return LatticeMap{a, b, f};
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[rng() % v.size()];
}

}  // namespace

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    u.add_row_multiple(a, b, rng() % 2 ? 1 : -1);
  }
  if (rng() % 2) u.swap_rows(0, n - 1);
  return u;
}

LatticePtr conjugate_lattice(const LatticePtr& m, const IntMatrix& u, const std::string& name) {
  IntMatrix ui = inverse_unimodular(u);
  std::vector<IntMatrix> mats;
  for (const auto& a : m->generator_matrices()) mats.push_back(ui * a * u);
  return make_lattice(m->group(), m->rank(), mats, name);
}

LemmaResult shapiro_lemma(const GroupPtr& g) {
  LemmaResult r{"shapiro"};
  const auto classes = g->subgroup_classes();
  for (const auto& k : classes) {
    auto perm = coset_lattice(k);
    for (const auto& h : classes) {
      ++r.instances;
      auto s = h1(h, perm).structure();
      if (!s.trivial()) fail(r, "h1(" + h.label() + ", Z[G/" + k.label() + "]) = " + s.to_string());
    }
  }
  return r;
}

LemmaResult duality_lemma(const NamedLattices& lattices) {
  LemmaResult r{"duality"};
  for (const auto& [name, m] : lattices) {
    const auto classes = m->group()->subgroup_classes();
    auto d = dual_lattice(m);
    for (const auto& h : classes) {
      ++r.instances;
      auto left = tate_minus1(h, m);
      auto right = h1(h, d).structure();
      if (left != right)
        fail(r, name + " at " + h.label() + ": tate-1 " + left.to_string() + " vs h1 of dual " + right.to_string());
    }
    ++r.instances;
    try {
      if (is_flasque(m).holds != is_coflasque(d).holds) fail(r, name + ": is_flasque differs from is_coflasque(dual)");
    } catch (const PropertyViolation& e) {
      fail(r, name + ": " + e.what());
    }
  }
  return r;
}

LemmaResult versality_lemma(const GroupPtr& g, const NamedLattices& lattices, const LemmaOptions& o) {
  LemmaResult r{"versality"};
  std::vector<LatticePtr> ms;
  for (const auto& [name, m] : lattices)
    if (m->rank() <= o.versality_max_rank && m->rank() > 0) ms.push_back(m);
  std::mt19937_64 rng(o.seed);
  // P′ and Q: coset lattices, their disguises, and sums of two.
  std::vector<LatticePtr> invertibles;
  const auto classes = g->subgroup_classes();
  for (const auto& k : classes) {
    auto p = coset_lattice(k);
    if (p->rank() > o.versality_max_invertible_rank) continue;
    invertibles.push_back(p);
    invertibles.push_back(conjugate_lattice(p, random_unimodular(rng, p->rank(), 6)));
  }
  const std::size_t singles = invertibles.size();
  for (std::size_t i = 0; i < singles; i += 2)
    for (std::size_t j = i; j < singles; j += 2)
      if (invertibles[i]->rank() + invertibles[j]->rank() <= o.versality_max_invertible_rank)
        invertibles.push_back(direct_sum(invertibles[i], invertibles[j]));
  if (ms.empty() || invertibles.empty()) return r;

  std::map<std::pair<const GammaLattice*, int>, ResolutionCertificate> cache;
  auto resolution = [&](const LatticePtr& m, ResolutionKind kind, int type) -> const ResolutionCertificate& {
    auto key = std::make_pair(m.get(), static_cast<int>(kind) * 2 + type);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_resolution(m, kind, type)).first;
    return it->second;
  };

  for (std::size_t i = 0; i < o.versality_instances; ++i) {
    const auto& m = pick(rng, ms);
    const auto& q = pick(rng, invertibles);
    const int shape = static_cast<int>(i % 4);
    ++r.instances;
    const std::string where = "instance " + std::to_string(i) + " (rank " + std::to_string(m->rank()) + " with rank " +
                              std::to_string(q->rank()) + ")";
    try {
      if (shape == 0) {
        const auto& c = resolution(m, ResolutionKind::coflasque, 1);
        auto psi = random_equivariant(rng, q, m);
        auto f = versal_factorization(c, psi);
        if (!f.found()) fail(r, where + ", coflasque first kind: " + f.obstruction);
        else if (!check_equivariant(f.map->matrix, q, c.sequence.mid()).ok ||
                 c.sequence.surj.matrix * f.map->matrix != psi.matrix)
          fail(r, where + ", coflasque first kind: factorization identity fails");
      } else if (shape == 1) {
        const auto& c = resolution(m, ResolutionKind::flasque, 1);
        auto psi = random_equivariant(rng, m, q);
        auto f = versal_factorization(c, psi);
        if (!f.found()) fail(r, where + ", flasque first kind: " + f.obstruction);
        else if (!check_equivariant(f.map->matrix, c.sequence.mid(), q).ok ||
                 f.map->matrix * c.sequence.inj.matrix != psi.matrix)
          fail(r, where + ", flasque first kind: factorization identity fails");
      } else if (shape == 2) {
        const auto& c = resolution(m, ResolutionKind::coflasque, 2);
        auto given = extension_from_class(random_class(rng, q, m));
        auto f = versal_factorization(c, given);
        if (!f.found()) fail(r, where + ", coflasque second kind: " + f.obstruction);
        else if (!check_equivariant(f.map->matrix, given.mid(), c.sequence.mid()).ok ||
                 f.map->matrix * given.inj.matrix != c.sequence.inj.matrix)
          fail(r, where + ", coflasque second kind: factorization identity fails");
      } else {
        const auto& c = resolution(m, ResolutionKind::flasque, 2);
        auto given = extension_from_class(random_class(rng, m, q));
        auto f = versal_factorization(c, given);
        if (!f.found()) fail(r, where + ", flasque second kind: " + f.obstruction);
        else if (!check_equivariant(f.map->matrix, c.sequence.mid(), given.mid()).ok ||
                 given.surj.matrix * f.map->matrix != c.sequence.surj.matrix)
          fail(r, where + ", flasque second kind: factorization identity fails");
      }
    } catch (const std::exception& e) {
      fail(r, where + ": " + e.what());
    }
  }
  return r;
}

LemmaResult baer_lemma(const GroupPtr& g, const NamedLattices& lattices, const LemmaOptions& o) {
  LemmaResult r{"baer"};
  if (g->order() > o.baer_max_group) return r;
  std::vector<LatticePtr> small_lattices;
  for (const auto& [name, m] : lattices)
    if (m->rank() <= o.baer_max_rank && m->rank() > 0) small_lattices.push_back(m);
  if (small_lattices.empty()) return r;
  std::mt19937_64 rng(o.seed ^ 0xbae5);
  for (std::size_t i = 0; i < o.baer_instances; ++i) {
    const auto& a = pick(rng, small_lattices);
    const auto& b = pick(rng, small_lattices);
    ++r.instances;
    const std::string where = "instance " + std::to_string(i);
    try {
      auto c = random_class(rng, a, b);
      auto d = random_class(rng, a, b);
      auto z = zero_class(a, b);
      if (!cohomologous(baer_sum(c, d), baer_sum_diagram(c, d))) fail(r, where + ": cocycle and diagram sums differ");
      if (!cohomologous(baer_sum_diagram(c, z), c)) fail(r, where + ": c + 0 differs from c");
      auto ext = h1(g->whole(), hom_lattice(a, b));
      const auto& orders = ext.structure().torsion;
      for (std::size_t k = 0; k < orders.size(); ++k) {
        if (orders[k] != 2) continue;
        auto x = class_from_compact(a, b, ext.torsion_generators()[k]);
        if (cohomologous(x, z)) fail(r, where + ": a Z/2 generator is a coboundary");
        if (!cohomologous(baer_sum_diagram(x, x), z)) fail(r, where + ": twice a Z/2 generator is nonzero");
      }
    } catch (const std::exception& e) {
      fail(r, where + ": " + e.what());
    }
  }
  return r;
}

LemmaResult crossed_lemma(const NamedLattices& lattices) {
  LemmaResult r{"crossed"};
  for (const auto& [name, m] : lattices) {
    if (m->rank() == 0) continue;
    for (int type : {1, 2}) {
      ++r.instances;
      try {
        if (!crossed_resolution_check(m, type).consistent)
          fail(r, name + ": fingerprints of P1+C2 and P2+C1 differ for type " + std::to_string(type));
      } catch (const std::exception& e) {
        fail(r, name + ", type " + std::to_string(type) + ": " + e.what());
      }
    }
  }
  return r;
}

std::vector<LemmaResult> run_lemma_suite(const GroupPtr& g, const NamedLattices& lattices, const LemmaOptions& o) {
  return {shapiro_lemma(g), duality_lemma(lattices), versality_lemma(g, lattices, o), baer_lemma(g, lattices, o),
          crossed_lemma(lattices)};
}

}  // namespace gammalat::cli

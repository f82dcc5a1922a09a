#include "gammalat/lattices.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <type_traits>

namespace gammalat {

GammaLattice::GammaLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> generator_matrices,
                           std::string name)
    : group_(std::move(group)), rank_(rank), generators_(std::move(generator_matrices)), name_(std::move(name)) {
  const auto& gens = group_->generator_indices();
  if (generators_.size() != gens.size())
    throw InputError("expected " + std::to_string(gens.size()) + " action matrices, got " +
                     std::to_string(generators_.size()));
  permutation_action_ = true;
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    const IntMatrix& a = generators_[j];
    if (a.rows() != rank_ || a.cols() != rank_)
      throw InputError("action matrix " + std::to_string(j) + " is not " + std::to_string(rank_) + "x" +
                       std::to_string(rank_));
    if (!a.is_permutation_matrix()) permutation_action_ = false;
  }

  // ρ(g·s) = ρ(g)ρ(s) for all g and generators s.  This also forces each
  // ρ(s) to be unimodular, since ρ(s⁻¹)ρ(s) = I.
  const std::size_t n = group_->order();
  auto relation_failure = [&](std::size_t j) {
    Integer d = generators_[j].determinant();
    if (d != 1 && d != -1) return InputError("action matrix " + std::to_string(j) + " is not unimodular");
    return InputError("action matrices do not define a homomorphism (relation through generator " +
                      std::to_string(j) + " fails)");
  };
  rho_.assign(n, IntMatrix());
  if (permutation_action_) {
    // Images of the basis under ρ(g), composed along the BFS tree.
    std::vector<std::vector<std::size_t>> perm(n), gen_perm(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t x = 0; x < rank_; ++x) gen_perm[j].push_back(generators_[j].permutation_image(x));
    perm[0].resize(rank_);
    for (std::size_t x = 0; x < rank_; ++x) perm[0][x] = x;
    auto compose = [&](const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
      std::vector<std::size_t> r(rank_);
      for (std::size_t x = 0; x < rank_; ++x) r[x] = p[q[x]];
      return r;
    };
    for (int g : group_->bfs_order()) {
      if (g == 0) continue;
      perm[static_cast<std::size_t>(g)] = compose(perm[static_cast<std::size_t>(group_->tree_parent(g))],
                                                  gen_perm[static_cast<std::size_t>(group_->tree_generator(g))]);
    }
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (perm[static_cast<std::size_t>(group_->multiply(static_cast<int>(g), gens[j]))] !=
            compose(perm[g], gen_perm[j]))
          throw relation_failure(j);
    for (std::size_t g = 0; g < n; ++g) {
      IntMatrix m(rank_, rank_);
      for (std::size_t x = 0; x < rank_; ++x) m(perm[g][x], x) = 1;
      rho_[g] = std::move(m);
    }
    return;
  }
  rho_[0] = IntMatrix::identity(rank_);
  for (int g : group_->bfs_order()) {
    if (g == 0) continue;
    int p = group_->tree_parent(g);
    rho_[static_cast<std::size_t>(g)] =
        rho_[static_cast<std::size_t>(p)] * generators_[static_cast<std::size_t>(group_->tree_generator(g))];
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      int gs = group_->multiply(static_cast<int>(g), gens[j]);
      if (rho_[static_cast<std::size_t>(gs)] != rho_[g] * generators_[j]) throw relation_failure(j);
    }
}

GammaLattice::GammaLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> generator_matrices,
                           std::vector<IntMatrix> rho, std::string name)
    : group_(std::move(group)),
      rank_(rank),
      generators_(std::move(generator_matrices)),
      rho_(std::move(rho)),
      name_(std::move(name)) {
  permutation_action_ =
      std::all_of(generators_.begin(), generators_.end(), [](const IntMatrix& a) { return a.is_permutation_matrix(); });
}

LatticePtr renamed_lattice(const LatticePtr& m, std::string name) {
  std::vector<IntMatrix> rho;
  for (std::size_t g = 0; g < m->group()->order(); ++g) rho.push_back(m->rho(static_cast<int>(g)));
  return std::make_shared<const GammaLattice>(m->group(), m->rank(), m->generator_matrices(), std::move(rho),
                                              std::move(name));
}

LatticePtr make_lattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> generator_matrices,
                        std::string name) {
  return std::make_shared<const GammaLattice>(std::move(group), rank, std::move(generator_matrices),
                                              std::move(name));
}

LatticePtr trivial_lattice(const GroupPtr& g, std::size_t n) {
  std::vector<IntMatrix> mats(g->generator_indices().size(), IntMatrix::identity(n));
  return make_lattice(g, n, std::move(mats), "trivial(" + std::to_string(n) + ")");
}

std::vector<std::vector<int>> left_cosets(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  std::vector<int> owner(g.order(), -1);
  std::vector<std::vector<int>> cosets;
  for (int x = 0; x < static_cast<int>(g.order()); ++x) {
    if (owner[static_cast<std::size_t>(x)] >= 0) continue;
    std::vector<int> c;
    for (int m : h.members()) c.push_back(g.multiply(x, m));
    std::sort(c.begin(), c.end());
    for (int y : c) owner[static_cast<std::size_t>(y)] = static_cast<int>(cosets.size());
    cosets.push_back(std::move(c));
  }
  return cosets;
}

LatticePtr coset_lattice(const Subgroup& h) {
  const GroupPtr& g = h.parent();
  auto cosets = left_cosets(h);
  std::vector<int> owner(g->order());
  for (std::size_t i = 0; i < cosets.size(); ++i)
    for (int y : cosets[i]) owner[static_cast<std::size_t>(y)] = static_cast<int>(i);
  std::vector<IntMatrix> mats;
  for (int s : g->generator_indices()) {
    IntMatrix m(cosets.size(), cosets.size());
    for (std::size_t i = 0; i < cosets.size(); ++i)
      m(static_cast<std::size_t>(owner[static_cast<std::size_t>(g->multiply(s, cosets[i][0]))]), i) = 1;
    mats.push_back(std::move(m));
  }
  return make_lattice(g, cosets.size(), std::move(mats), "cosets(" + h.label() + ")");
}

LatticePtr regular_lattice(const GroupPtr& g) {
  return renamed_lattice(coset_lattice(g->trivial_subgroup()), "regular");
}

LatticePtr matrix_lattice(const GroupPtr& g, const std::vector<IntMatrix>& generator_matrices) {
  std::size_t n = generator_matrices.empty() ? 0 : generator_matrices.front().rows();
  return make_lattice(g, n, generator_matrices, "matrices");
}

LatticePtr dual_lattice(const LatticePtr& m) {
  const auto& g = m->group();
  std::vector<IntMatrix> mats, rho;
  for (int s : g->generator_indices()) mats.push_back(m->rho(g->inverse(s)).transpose());
  for (int x = 0; x < static_cast<int>(g->order()); ++x) rho.push_back(m->rho(g->inverse(x)).transpose());
  return std::make_shared<const GammaLattice>(g, m->rank(), std::move(mats), std::move(rho),
                                              "dual(" + m->name() + ")");
}

LatticePtr build_lattice(const GroupPtr& g, const LatticeSpec& spec, const std::string& name) {
  auto same_group = [&](const LatticePtr& l) {
    if (!l || l->group() != g) throw InputError("referenced lattice belongs to another group");
    return l;
  };
  LatticePtr out = std::visit(
      [&](const auto& sp) -> LatticePtr {
        using S = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<S, TrivialSpec>) {
          return trivial_lattice(g, sp.rank);
        } else if constexpr (std::is_same_v<S, RegularSpec>) {
          return regular_lattice(g);
        } else if constexpr (std::is_same_v<S, CosetsSpec>) {
          if (sp.subgroup.parent() != g) throw InputError("subgroup belongs to another group");
          return coset_lattice(sp.subgroup);
        } else if constexpr (std::is_same_v<S, MatricesSpec>) {
          return make_lattice(g, sp.rank, sp.generator_matrices);
        } else if constexpr (std::is_same_v<S, DualSpec>) {
          return dual_lattice(same_group(sp.of));
        } else if constexpr (std::is_same_v<S, SumSpec>) {
          return direct_sum(same_group(sp.first), same_group(sp.second));
        } else {
          return hom_lattice(same_group(sp.source), same_group(sp.target));
        }
      },
      spec);
  return name.empty() ? out : renamed_lattice(out, name);
}

LatticePtr direct_sum(const LatticePtr& a, const LatticePtr& b) {
  if (a->group() != b->group()) throw InputError("direct sum of lattices over different groups");
  return direct_sum(std::vector<LatticePtr>{a, b}, a->group(), a->name() + "+" + b->name());
}

LatticePtr direct_sum(const std::vector<LatticePtr>& parts, const GroupPtr& g) {
  std::string name;
  for (const auto& p : parts) name += (name.empty() ? "" : "+") + p->name();
  return direct_sum(parts, g, name);
}

LatticePtr direct_sum(const std::vector<LatticePtr>& parts, const GroupPtr& g, const std::string& name) {
  std::size_t rank = 0;
  for (const auto& p : parts) {
    if (p->group() != g) throw InputError("direct sum of lattices over different groups");
    rank += p->rank();
  }
  // Block diagonals of valid actions are valid.
  auto blocks = [&](auto&& matrix_of, std::size_t count) {
    std::vector<IntMatrix> out;
    for (std::size_t j = 0; j < count; ++j) {
      IntMatrix m(rank, rank);
      std::size_t at = 0;
      for (const auto& p : parts) {
        m.set_block(at, at, matrix_of(p, j));
        at += p->rank();
      }
      out.push_back(std::move(m));
    }
    return out;
  };
  auto mats = blocks([](const LatticePtr& p, std::size_t j) -> const IntMatrix& { return p->generator_matrices()[j]; },
                     g->generator_indices().size());
  auto rho = blocks([](const LatticePtr& p, std::size_t x) -> const IntMatrix& { return p->rho(static_cast<int>(x)); },
                    g->order());
  return std::make_shared<const GammaLattice>(g, rank, std::move(mats), std::move(rho), name);
}

LatticePtr hom_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (a->group() != b->group()) throw InputError("Hom of lattices over different groups");
  const auto& g = a->group();
  std::vector<IntMatrix> mats;
  for (int s : g->generator_indices())
    mats.push_back(IntMatrix::kronecker(b->rho(s), a->rho(g->inverse(s)).transpose()));
  return make_lattice(g, a->rank() * b->rank(), std::move(mats), "hom(" + a->name() + "," + b->name() + ")");
}

IntVector vectorize(const IntMatrix& f) {
  IntVector v;
  v.reserve(f.rows() * f.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) v.push_back(f(i, j));
  return v;
}

IntMatrix unvectorize(const IntVector& v, std::size_t rows, std::size_t cols) {
  IntMatrix f(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) f(i, j) = v[i * cols + j];
  return f;
}

IntMatrix fixed_sublattice(const LatticePtr& m, const Subgroup& h) {
  const std::size_t n = m->rank();
  std::vector<IntMatrix> blocks;
  for (int s : h.generators()) blocks.push_back(m->rho(s) - IntMatrix::identity(n));
  if (blocks.empty()) return IntMatrix::identity(n);
  return kernel_basis(IntMatrix::vstack(blocks, n));
}

LatticePtr restrict_action(const LatticePtr& m, const Subgroup& h) {
  const auto& parent = h.parent();
  std::vector<Permutation> perms;
  for (int s : h.generators()) perms.push_back(parent->element(s));
  auto sub = group_from_generators(parent->degree(), perms, parent->limits());
  std::vector<IntMatrix> mats;
  for (int s : h.generators()) mats.push_back(m->rho(s));
  return make_lattice(sub, m->rank(), std::move(mats), "res(" + m->name() + ")");
}

EquivarianceCheck check_equivariant(const IntMatrix& f, const LatticePtr& a, const LatticePtr& b) {
  if (f.rows() != b->rank() || f.cols() != a->rank()) throw InputError("map has wrong dimensions");
  if (a->group() != b->group()) throw InputError("map between lattices over different groups");
  const auto& gens = a->group()->generator_indices();
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (f * a->rho(gens[j]) != b->rho(gens[j]) * f) return {false, static_cast<int>(j)};
  return {true, -1};
}

LatticeMap make_map(const LatticePtr& a, const LatticePtr& b, IntMatrix f) {
  auto chk = check_equivariant(f, a, b);
  if (!chk.ok) throw InputError("map is not equivariant at generator " + std::to_string(chk.violating_generator));
  return {a, b, std::move(f)};
}

LatticeMap sublattice(const LatticePtr& m, const IntMatrix& basis) {
  SublatticeBasis sb(basis);
  const auto& g = m->group();
  std::vector<IntMatrix> mats;
  for (int s : g->generator_indices()) {
    IntMatrix image = m->rho(s) * basis;
    IntMatrix a(basis.cols(), basis.cols());
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      auto y = sb.coordinates(image.column(c));
      if (!y) throw InputError("sublattice is not stable under the action");
      a.set_column(c, *y);
    }
    mats.push_back(std::move(a));
  }
  auto sub = make_lattice(g, basis.cols(), std::move(mats), "sub(" + m->name() + ")");
  return {sub, m, basis};
}

LatticeMap kernel_lattice(const LatticeMap& f) { return sublattice(f.source, kernel_basis(f.matrix)); }

Quotient quotient_lattice(const LatticeMap& i) {
  auto chk = check_equivariant(i.matrix, i.source, i.target);
  if (!chk.ok) throw InputError("inclusion is not equivariant at generator " + std::to_string(chk.violating_generator));
  const std::size_t m = i.target->rank();
  auto coker = cokernel_invariants(i.matrix);
  if (!coker.torsion.empty()) throw InputError("quotient has torsion " + coker.to_string());
  if (coker.free_rank != m - i.source->rank()) throw InputError("map is not injective");

  IntMatrix p = m == 0 ? IntMatrix(0, 0) : hermite_basis(kernel_basis(i.matrix.transpose()).transpose());
  if (p.rows() == 0) p = IntMatrix(0, m);
  const std::size_t q = p.rows();
  // Section: s with p s = I, column by column.
  IntMatrix s(m, q);
  for (std::size_t c = 0; c < q; ++c) {
    IntVector e(q, 0);
    e[c] = 1;
    auto r = solve_integer_system(p, e);
    if (!r.solvable()) throw PropertyViolation("projection onto saturated quotient is not surjective");
    s.set_column(c, *r.solution);
  }
  const auto& g = i.target->group();
  std::vector<IntMatrix> mats;
  for (int gen : g->generator_indices()) mats.push_back(p * i.target->rho(gen) * s);
  auto ql = make_lattice(g, q, std::move(mats), "quot(" + i.target->name() + ")");
  return {ql, {i.target, ql, p}, s};
}

LatticeMap compose(const LatticeMap& g, const LatticeMap& f) {
  if (f.target->rank() != g.source->rank()) throw InputError("maps cannot be composed");
  return {f.source, g.target, g.matrix * f.matrix};
}

LatticeMap identity_map(const LatticePtr& m) { return {m, m, IntMatrix::identity(m->rank())}; }

LatticeMap dual_map(const LatticeMap& f, const LatticePtr& dual_source, const LatticePtr& dual_target) {
  // f: A → B gives f^∨: B^∨ → A^∨.
  return {dual_target, dual_source, f.matrix.transpose()};
}

bool same_action(const GammaLattice& a, const GammaLattice& b) {
  return a.group() == b.group() && a.rank() == b.rank() && a.generator_matrices() == b.generator_matrices();
}

bool CohFingerprint::same_cohomology(const CohFingerprint& o) const {
  if (entries.size() != o.entries.size()) return false;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].h1 != o.entries[i].h1 || entries[i].tate_minus1 != o.entries[i].tate_minus1) return false;
  return true;
}

}  // namespace gammalat

namespace gammalat {

namespace {

// Orbits of basis vectors under a permutation action: for each orbit its
// points (first is the least) and, per point, an element carrying the first
// point to it.
struct BasisOrbit {
  std::vector<std::size_t> points;
  std::vector<int> carriers;
  std::vector<int> stabilizer;
};

std::vector<BasisOrbit> basis_orbits(const LatticePtr& m) {
  const FiniteGroup& g = *m->group();
  std::vector<char> seen(m->rank(), 0);
  std::vector<BasisOrbit> out;
  for (std::size_t x = 0; x < m->rank(); ++x) {
    if (seen[x]) continue;
    BasisOrbit orb;
    std::vector<int> where(m->rank(), -1);
    for (int e = 0; e < static_cast<int>(g.order()); ++e) {
      std::size_t y = m->rho(e).permutation_image(x);
      if (y == x) orb.stabilizer.push_back(e);
      if (where[y] >= 0) continue;
      where[y] = e;
      orb.points.push_back(y);
      orb.carriers.push_back(e);
      seen[y] = 1;
    }
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace

std::vector<IntMatrix> equivariant_maps_reference(const LatticePtr& a, const LatticePtr& b) {
  auto hom = hom_lattice(a, b);
  IntMatrix fixed = fixed_sublattice(hom, a->group()->whole());
  std::vector<IntMatrix> out;
  for (std::size_t c = 0; c < fixed.cols(); ++c) out.push_back(unvectorize(fixed.column(c), b->rank(), a->rank()));
  return out;
}

std::vector<IntMatrix> equivariant_maps(const LatticePtr& a, const LatticePtr& b) {
  if (a->group() != b->group()) throw InputError("maps between lattices over different groups");
  const GroupPtr& g = a->group();
  std::vector<IntMatrix> out;
  if (b->has_permutation_action()) {
    // Row x of φ is φ_{x0} ρ_A(g_x)⁻¹ with φ_{x0} fixed by the stabilizer of x0.
    auto dual = dual_lattice(a);
    for (const auto& orb : basis_orbits(b)) {
      Subgroup stab(g, orb.stabilizer, false);
      IntMatrix fixed = fixed_sublattice(dual, stab);
      for (std::size_t c = 0; c < fixed.cols(); ++c) {
        IntMatrix row0 = fixed.column(c).empty() ? IntMatrix(1, 0) : IntMatrix::column_vector(fixed.column(c)).transpose();
        IntMatrix phi(b->rank(), a->rank());
        for (std::size_t k = 0; k < orb.points.size(); ++k)
          phi.set_block(orb.points[k], 0, row0 * a->rho(g->inverse(orb.carriers[k])));
        out.push_back(std::move(phi));
      }
    }
    return out;
  }
  if (a->has_permutation_action()) {
    // Column x of φ is ρ_B(g_x) v with v fixed by the stabilizer of x0.
    for (const auto& orb : basis_orbits(a)) {
      Subgroup stab(g, orb.stabilizer, false);
      IntMatrix fixed = fixed_sublattice(b, stab);
      for (std::size_t c = 0; c < fixed.cols(); ++c) {
        IntVector v = fixed.column(c);
        IntMatrix phi(b->rank(), a->rank());
        for (std::size_t k = 0; k < orb.points.size(); ++k) phi.set_column(orb.points[k], b->rho(orb.carriers[k]) * v);
        out.push_back(std::move(phi));
      }
    }
    return out;
  }
  return equivariant_maps_reference(a, b);
}

EquivariantSolution solve_equivariant(const std::vector<IntMatrix>& basis, std::size_t rows, std::size_t cols,
                                      const std::vector<MapConstraint>& constraints) {
  std::size_t eqs = 0;
  for (const auto& c : constraints) eqs += c.target.rows() * c.target.cols();
  IntMatrix sys(eqs, basis.size());
  IntVector rhs(eqs);
  std::size_t row = 0;
  for (const auto& c : constraints) {
    IntVector t = vectorize(c.target);
    for (std::size_t i = 0; i < t.size(); ++i) rhs[row + i] = t[i];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      IntVector v = vectorize(c.left * (basis[k] * c.right));
      for (std::size_t i = 0; i < v.size(); ++i) sys(row + i, k) = v[i];
    }
    row += t.size();
  }
  EquivariantSolution out;
  auto r = solve_integer_system(sys, rhs);
  if (!r.solvable()) {
    out.obstruction = r.obstruction;
    return out;
  }
  IntMatrix phi(rows, cols);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (sgn((*r.solution)[k]) != 0) phi += basis[k].scaled((*r.solution)[k]);
  out.map = std::move(phi);
  return out;
}

EquivariantSolution solve_equivariant(const LatticePtr& a, const LatticePtr& b,
                                      const std::vector<MapConstraint>& constraints) {
  return solve_equivariant(equivariant_maps(a, b), b->rank(), a->rank(), constraints);
}

EquivariantSolution solve_into_permutation(const LatticePtr& a, const LatticePtr& b, const MapConstraint& constraint,
                                           std::size_t max_entries) {
  if (!b->has_permutation_action()) throw InputError("target lattice has no permutation action");
  const GroupPtr& g = a->group();
  const auto& left = constraint.left;
  const auto& right = constraint.right;
  auto dual = dual_lattice(a);
  struct Block {
    BasisOrbit orbit;
    IntMatrix fixed;  // columns: row vectors φ_{x0} fixed by the stabilizer
  };
  std::vector<Block> blocks;
  std::size_t unknowns = 0;
  std::map<std::vector<int>, IntMatrix> fixed_by_stabilizer;
  for (auto& orb : basis_orbits(b)) {
    auto it = fixed_by_stabilizer.find(orb.stabilizer);
    if (it == fixed_by_stabilizer.end())
      it = fixed_by_stabilizer.emplace(orb.stabilizer, fixed_sublattice(dual, Subgroup(g, orb.stabilizer, false))).first;
    unknowns += it->second.cols();
    blocks.push_back({std::move(orb), it->second});
  }
  const std::size_t eqs = constraint.target.rows() * constraint.target.cols();
  if (eqs * unknowns > max_entries)
    throw CapExceeded("equivariant system of " + std::to_string(eqs) + " x " + std::to_string(unknowns) +
                      " exceeds the cap of " + std::to_string(max_entries) + " entries");

  IntMatrix sys(eqs, unknowns);
  std::size_t col = 0;
  for (const auto& bl : blocks) {
    // ρ_A(g_x)⁻¹ · right for every point x of the orbit.
    std::vector<IntMatrix> moved;
    for (int carrier : bl.orbit.carriers) moved.push_back(a->rho(g->inverse(carrier)) * right);
    for (std::size_t c = 0; c < bl.fixed.cols(); ++c, ++col) {
      IntMatrix row0 = IntMatrix::column_vector(bl.fixed.column(c)).transpose();
      IntMatrix image(left.rows(), right.cols());
      for (std::size_t k = 0; k < bl.orbit.points.size(); ++k) {
        IntMatrix w = row0 * moved[k];
        const std::size_t x = bl.orbit.points[k];
        for (std::size_t i = 0; i < left.rows(); ++i) {
          if (sgn(left(i, x)) == 0) continue;
          for (std::size_t j = 0; j < w.cols(); ++j) image(i, j) += left(i, x) * w(0, j);
        }
      }
      IntVector v = vectorize(image);
      for (std::size_t i = 0; i < eqs; ++i) sys(i, col) = v[i];
    }
  }
  EquivariantSolution out;
  auto r = solve_integer_system(sys, vectorize(constraint.target));
  if (!r.solvable()) {
    out.obstruction = r.obstruction;
    return out;
  }
  IntMatrix phi(b->rank(), a->rank());
  col = 0;
  for (const auto& bl : blocks) {
    for (std::size_t c = 0; c < bl.fixed.cols(); ++c, ++col) {
      const Integer& t = (*r.solution)[col];
      if (sgn(t) == 0) continue;
      IntMatrix row0 = IntMatrix::column_vector(bl.fixed.column(c)).transpose().scaled(t);
      for (std::size_t k = 0; k < bl.orbit.points.size(); ++k) {
        IntMatrix add = row0 * a->rho(g->inverse(bl.orbit.carriers[k]));
        for (std::size_t j = 0; j < add.cols(); ++j) phi(bl.orbit.points[k], j) += add(0, j);
      }
    }
  }
  out.map = std::move(phi);
  return out;
}

IntMatrix module_generators(const LatticePtr& m) {
  const std::size_t r = m->rank();
  const int order = static_cast<int>(m->group()->order());
  std::vector<IntVector> span;
  std::vector<std::size_t> chosen;
  SublatticeBasis current(IntMatrix(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = 1;
    if (current.contains(e)) continue;
    chosen.push_back(i);
    for (int g = 0; g < order; ++g) span.push_back(m->rho(g).column(i));
    current = SublatticeBasis(hermite_basis(span, r).transpose());
  }
  IntMatrix out(r, chosen.size());
  for (std::size_t k = 0; k < chosen.size(); ++k) out(chosen[k], k) = 1;
  return out;
}

}  // namespace gammalat

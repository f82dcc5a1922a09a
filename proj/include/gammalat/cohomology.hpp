#pragma once

// Cohomology of finite groups with lattice coefficients.
//
// Cocycles are stored in compact coordinates.  A 1-cocycle on H is recorded
// by its values f(s_j) on the generators of H; a normalized 2-cocycle by the
// values c(g, s_j) for g ≠ e.  Both determine the whole cochain through the
// cocycle identity, and because H^i is finite for i ≥ 1 the cocycles are
// exactly the saturation of the coboundaries in these coordinates.  The
// *_reference functions solve the full systems over all pairs or triples of
// elements and exist to check that claim.

#include <cstddef>
#include <optional>
#include <vector>

#include "gammalat/lattices.hpp"

namespace gammalat {

struct CohomologyLimits {
  std::size_t h2_max_order = 16;
};

// Positions in subgroup.members() reached by a breadth-first walk over the
// subgroup generators: members[order[k]] = members[parent[order[k]]] * gens[gen[...]].
struct WordTree {
  std::vector<int> order;
  std::vector<int> parent;
  std::vector<int> gen;
};
WordTree word_tree(const Subgroup& h);

class CohomologyGroup {
 public:
  CohomologyGroup() = default;
  CohomologyGroup(int degree, Subgroup h, LatticePtr m, IntMatrix coboundary_matrix);

  int degree() const { return degree_; }
  const Subgroup& subgroup() const { return h_; }
  const LatticePtr& module() const { return m_; }
  std::size_t ambient() const { return coboundary_.rows(); }
  // Columns span the coboundaries in compact coordinates.
  const IntMatrix& coboundary_matrix() const { return coboundary_; }
  // Columns: basis of the cocycles (saturation of the coboundaries).
  const IntMatrix& cocycle_basis() const { return cocycles_.basis(); }
  const AbelianGroupInvariants& structure() const { return structure_; }
  // Generators of the torsion summands, matching structure().torsion.
  const std::vector<IntVector>& torsion_generators() const { return generators_; }

  bool is_cocycle(const IntVector& compact) const { return cocycles_.contains(compact); }
  // Class of a cocycle in coordinates ⊕ ℤ/d_i, reduced into [0, d_i).
  // Throws InputError if the vector is not a cocycle.
  IntVector class_of(const IntVector& compact) const;
  bool is_coboundary(const IntVector& compact) const;
  // Cocycle representing Σ x_i · generator_i.
  IntVector representative(const IntVector& class_coords) const;

 private:
  int degree_ = 1;
  Subgroup h_;
  LatticePtr m_;
  IntMatrix coboundary_;
  SublatticeBasis cocycles_;
  std::size_t first_torsion_ = 0;
  std::vector<Integer> orders_;
  std::vector<IntVector> generators_;
  AbelianGroupInvariants structure_;
};

CohomologyGroup h1(const Subgroup& h, const LatticePtr& m);
// Throws CapExceeded when |H| exceeds limits.h2_max_order.
CohomologyGroup h2(const Subgroup& h, const LatticePtr& m, const CohomologyLimits& limits = {});

// Full-system solvers over all pairs (degree 1) or triples (degree 2).
AbelianGroupInvariants h1_reference(const Subgroup& h, const LatticePtr& m);
AbelianGroupInvariants h2_reference(const Subgroup& h, const LatticePtr& m);

// f(g) for every member of H, indexed by position in members().
std::vector<IntVector> expand_cocycle1(const Subgroup& h, const LatticePtr& m, const IntVector& compact);
// c(g, k) indexed [pos g][pos k].
std::vector<std::vector<IntVector>> expand_cocycle2(const Subgroup& h, const LatticePtr& m, const IntVector& compact);
// Compact coordinates of the full 1-cocycle f: H → M (indexed by position)
// restricted to K ⊆ H.
IntVector compact_from_full1(const Subgroup& h, const std::vector<IntVector>& f, const Subgroup& k);
IntVector compact_from_full2(const Subgroup& h, const std::vector<std::vector<IntVector>>& c, const Subgroup& k);

// Ĥ⁰(H,M) = M^H / N·M.
AbelianGroupInvariants tate_zero(const Subgroup& h, const LatticePtr& m);
// Ĥ⁻¹(H,M) = ker N / I_H·M.
AbelianGroupInvariants tate_minus1(const Subgroup& h, const LatticePtr& m);
AbelianGroupInvariants tate(int i, const Subgroup& h, const LatticePtr& m);

// H¹(G, Hom(A,B)).
AbelianGroupInvariants ext1(const LatticePtr& a, const LatticePtr& b);

struct RestrictionKernel {
  AbelianGroupInvariants structure;
  // Cocycles (compact coordinates on the whole group) generating the kernel.
  std::vector<IntVector> generators;
  CohomologyGroup ambient;
};
// Classes in H^degree(G, M) that restrict to zero in every listed subgroup.
// Throws InputError if a local subgroup belongs to another group.
RestrictionKernel restriction_kernel(int degree, const LatticePtr& m, const std::vector<Subgroup>& locals,
                                     const CohomologyLimits& limits = {});

}  // namespace gammalat

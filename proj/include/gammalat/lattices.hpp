#pragma once

// Γ-lattices: ℤⁿ with a unimodular action of a finite group, together with
// the standard constructions on them.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gammalat/errors.hpp"
#include "gammalat/groups.hpp"
#include "gammalat/zlinalg.hpp"

namespace gammalat {

class GammaLattice;
using LatticePtr = std::shared_ptr<const GammaLattice>;

class GammaLattice {
 public:
  // generator_matrices[j] is the action of the j-th group generator.  Throws
  // InputError unless every matrix is unimodular and the assignment extends
  // to a homomorphism.
  GammaLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> generator_matrices,
               std::string name = "");
  // Unchecked: rho[g] must already be the homomorphism extending the
  // generator matrices.  For constructions that inherit validity.
  GammaLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> generator_matrices,
               std::vector<IntMatrix> rho, std::string name);

  const GroupPtr& group() const { return group_; }
  std::size_t rank() const { return rank_; }
  const std::string& name() const { return name_; }
  const std::vector<IntMatrix>& generator_matrices() const { return generators_; }
  // ρ(g) for an element index.
  const IntMatrix& rho(int g) const { return rho_[static_cast<std::size_t>(g)]; }
  // Every ρ(g) is a permutation matrix.
  bool has_permutation_action() const { return permutation_action_; }

 private:
  GroupPtr group_;
  std::size_t rank_;
  std::vector<IntMatrix> generators_;
  std::vector<IntMatrix> rho_;
  bool permutation_action_ = false;
  std::string name_;
};

LatticePtr make_lattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> generator_matrices,
                        std::string name = "");
// Same action under a new name, without revalidation.
LatticePtr renamed_lattice(const LatticePtr& m, std::string name);

struct LatticeMap {
  LatticePtr source;
  LatticePtr target;
  IntMatrix matrix;  // target rank x source rank
};

LatticePtr trivial_lattice(const GroupPtr& g, std::size_t n);
LatticePtr regular_lattice(const GroupPtr& g);
// Left cosets xH sorted by their least element index.
std::vector<std::vector<int>> left_cosets(const Subgroup& h);
// ℤ[G/H] with basis the left cosets in left_cosets() order.
LatticePtr coset_lattice(const Subgroup& h);
LatticePtr matrix_lattice(const GroupPtr& g, const std::vector<IntMatrix>& generator_matrices);
// Action g ↦ ρ(g⁻¹)ᵀ.
LatticePtr dual_lattice(const LatticePtr& m);

// Declarative constructions over a fixed group.
struct TrivialSpec {
  std::size_t rank = 0;
};
struct RegularSpec {};
struct CosetsSpec {
  Subgroup subgroup;
};
struct MatricesSpec {
  std::size_t rank = 0;  // needed when the group has no generators
  std::vector<IntMatrix> generator_matrices;
};
struct DualSpec {
  LatticePtr of;
};
struct SumSpec {
  LatticePtr first, second;
};
struct HomSpec {
  LatticePtr source, target;
};
using LatticeSpec = std::variant<TrivialSpec, RegularSpec, CosetsSpec, MatricesSpec, DualSpec, SumSpec, HomSpec>;
// Throws InputError when a referenced subgroup or lattice belongs to another
// group, or when matrices are not unimodular or not a homomorphism.
LatticePtr build_lattice(const GroupPtr& g, const LatticeSpec& spec, const std::string& name = "");
LatticePtr direct_sum(const LatticePtr& a, const LatticePtr& b);
LatticePtr direct_sum(const std::vector<LatticePtr>& parts, const GroupPtr& g);
LatticePtr direct_sum(const std::vector<LatticePtr>& parts, const GroupPtr& g, const std::string& name);
// Maps f: A → B stored as rank(B) x rank(A) matrices vectorized row-major,
// with g·f = ρ_B(g) f ρ_A(g)⁻¹.
LatticePtr hom_lattice(const LatticePtr& a, const LatticePtr& b);
IntVector vectorize(const IntMatrix& f);
IntMatrix unvectorize(const IntVector& v, std::size_t rows, std::size_t cols);

// Basis (columns) of the saturated sublattice M^H.
IntMatrix fixed_sublattice(const LatticePtr& m, const Subgroup& h);
// Same underlying ℤⁿ viewed as a lattice over the group H.
LatticePtr restrict_action(const LatticePtr& m, const Subgroup& h);

struct EquivarianceCheck {
  bool ok = false;
  int violating_generator = -1;  // position in the generator list
};
EquivarianceCheck check_equivariant(const IntMatrix& f, const LatticePtr& a, const LatticePtr& b);
// Throws InputError naming the violating generator.
LatticeMap make_map(const LatticePtr& a, const LatticePtr& b, IntMatrix f);

// Columns of `basis` span a G-stable sublattice; returns it with the induced
// action, plus the inclusion.  Throws InputError if the span is not stable.
LatticeMap sublattice(const LatticePtr& m, const IntMatrix& basis);
// Kernel of an equivariant map, saturated, with its inclusion.
LatticeMap kernel_lattice(const LatticeMap& f);

struct Quotient {
  LatticePtr lattice;
  LatticeMap projection;  // M → Q
  IntMatrix section;      // ℤ-linear (not equivariant) right inverse of the projection
};
// Q = M / i(N).  Throws InputError if the cokernel has torsion (the message
// lists its invariant factors) or if i is not equivariant.
Quotient quotient_lattice(const LatticeMap& i);

LatticeMap compose(const LatticeMap& g, const LatticeMap& f);  // g ∘ f
LatticeMap identity_map(const LatticePtr& m);
// f: A → B gives fᵀ: B^∨ → A^∨, where dual_source = A^∨ and dual_target = B^∨.
LatticeMap dual_map(const LatticeMap& f, const LatticePtr& dual_source, const LatticePtr& dual_target);

// ℤ-basis of Hom_G(A, B), each map as a rank(B) x rank(A) matrix.  When
// either side has a permutation action the basis comes from the orbit
// decomposition (Frobenius reciprocity), otherwise from the fixed points of
// the Hom lattice.
std::vector<IntMatrix> equivariant_maps(const LatticePtr& a, const LatticePtr& b);
// Same space through the Hom-lattice fixed points only; reference route.
std::vector<IntMatrix> equivariant_maps_reference(const LatticePtr& a, const LatticePtr& b);

// left * φ * right = target
struct MapConstraint {
  IntMatrix left;
  IntMatrix right;
  IntMatrix target;
};
struct EquivariantSolution {
  std::optional<IntMatrix> map;
  std::string obstruction;
};
// An equivariant φ: A → B satisfying every constraint, or the reason none exists.
EquivariantSolution solve_equivariant(const LatticePtr& a, const LatticePtr& b,
                                      const std::vector<MapConstraint>& constraints);
EquivariantSolution solve_equivariant(const std::vector<IntMatrix>& basis, std::size_t rows, std::size_t cols,
                                      const std::vector<MapConstraint>& constraints);

// left * φ * right = target for φ ∈ Hom_G(A, B) with B a permutation
// lattice.  The system is assembled orbit by orbit from the Frobenius basis
// without materializing it; throws CapExceeded when equations x unknowns
// exceeds max_entries.
EquivariantSolution solve_into_permutation(const LatticePtr& a, const LatticePtr& b, const MapConstraint& constraint,
                                           std::size_t max_entries);

// Columns generating M as a ℤ[G]-module, chosen greedily among the standard
// basis vectors.  Two equivariant maps out of M agree iff they agree here.
IntMatrix module_generators(const LatticePtr& m);

// Same group, equal generator matrices.
bool same_action(const GammaLattice& a, const GammaLattice& b);

struct FingerprintEntry {
  std::size_t fixed_rank = 0;
  AbelianGroupInvariants h1;
  AbelianGroupInvariants tate_minus1;
  bool operator==(const FingerprintEntry& o) const {
    return fixed_rank == o.fixed_rank && h1 == o.h1 && tate_minus1 == o.tate_minus1;
  }
};

// Keyed by index into group()->subgroup_classes().
struct CohFingerprint {
  std::vector<FingerprintEntry> entries;
  bool operator==(const CohFingerprint& o) const { return entries == o.entries; }
  bool operator!=(const CohFingerprint& o) const { return !(*this == o); }
  // Entries without fixed ranks: these survive adding permutation summands.
  bool same_cohomology(const CohFingerprint& o) const;
};

// Parallel over subgroup classes.
CohFingerprint fingerprint(const LatticePtr& m);
// Serial reference for the same computation.
CohFingerprint fingerprint_serial(const LatticePtr& m);

}  // namespace gammalat

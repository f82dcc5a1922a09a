#pragma once

// Extensions 0 → B → E → A → 0 of lattices and their classes in
// Ext¹(A, B) = H¹(G, Hom(A, B)).

#include <optional>
#include <string>
#include <vector>

#include "gammalat/lattices.hpp"

namespace gammalat {

struct ShortExactSequence {
  LatticeMap inj;   // sub → mid
  LatticeMap surj;  // mid → quot

  const LatticePtr& sub() const { return inj.source; }
  const LatticePtr& mid() const { return inj.target; }
  const LatticePtr& quot() const { return surj.target; }
};

struct ExactnessCheck {
  bool ok = true;
  std::string failure;
};
// Equivariance, injectivity with saturated image, surjectivity,
// surj∘inj = 0, rank additivity and ker(surj) = im(inj).
ExactnessCheck verify_exact(const ShortExactSequence& s);

// Class of 0 → B → E → A → 0; value(g) ∈ Hom(A, B) as a rank(B) x rank(A)
// matrix, one per group element.
struct ExtensionClass {
  LatticePtr quot;  // A
  LatticePtr sub;   // B
  std::vector<IntMatrix> values;

  // c(gh) = c(g) + g·c(h) for all pairs.
  bool is_cocycle() const;
  // Values on the group generators, vectorized and concatenated: compact
  // H¹ coordinates for Hom(A, B).
  IntVector compact() const;
};

ExtensionClass zero_class(const LatticePtr& a, const LatticePtr& b);
// Expands compact H¹ coordinates on Hom(A, B) to all elements.
ExtensionClass class_from_compact(const LatticePtr& a, const LatticePtr& b, const IntVector& compact);
ExtensionClass add_classes(const ExtensionClass& x, const ExtensionClass& y);
ExtensionClass scale_class(const ExtensionClass& x, const Integer& k);
// x − y is a coboundary.
bool cohomologous(const ExtensionClass& x, const ExtensionClass& y);
// Coordinates of the class in the invariant-factor decomposition of Ext¹.
IntVector ext_coordinates(const ExtensionClass& x);

// mid = B ⊕ A with ρ(g) = [[ρ_B(g), c(g)ρ_A(g)], [0, ρ_A(g)]].
// Throws InputError on an invalid cocycle.
ShortExactSequence extension_from_class(const ExtensionClass& c);
// c(g) = inj⁻¹(ρ_mid(g) σ ρ_A(g)⁻¹ − σ) for a ℤ-linear section σ; the
// section defaults to the Hermite-canonical one.
ExtensionClass class_of_extension(const ShortExactSequence& s, const std::optional<IntMatrix>& section = {});
// Some ℤ-linear right inverse of surj.
IntMatrix linear_section(const LatticeMap& surj);

struct SplitResult {
  std::optional<IntMatrix> section;  // equivariant, surj * section = I
  std::string refutation;
  bool split() const { return section.has_value(); }
};
// Default bound on equations x unknowns of a splitting system.
inline constexpr std::size_t default_split_cap = std::size_t{1} << 24;
// Throws CapExceeded when a permutation middle term makes the system larger
// than max_entries.
SplitResult is_split(const ShortExactSequence& s, std::size_t max_entries = default_split_cap);

// Equivalence of extensions with the same ends: a middle map commuting
// with both inclusions and both projections.
struct EquivalenceResult {
  std::optional<IntMatrix> middle;
  bool equivalent() const { return middle.has_value(); }
};
EquivalenceResult extensions_equivalent(const ShortExactSequence& s1, const ShortExactSequence& s2);

// Pointwise cocycle sum.  Throws InputError unless both classes share A and B.
ExtensionClass baer_sum(const ExtensionClass& c1, const ExtensionClass& c2);
// Pull back E1 ⊕ E2 along the diagonal A → A ⊕ A, push out along the sum
// B ⊕ B → B, and read off the class.
ExtensionClass baer_sum_diagram(const ExtensionClass& c1, const ExtensionClass& c2);

// f∘c for f: B → B′.
ExtensionClass pushout_extension(const ExtensionClass& c, const LatticeMap& f);
// c(·)∘g for g: A′ → A.
ExtensionClass pullback_extension(const ExtensionClass& c, const LatticeMap& g);
// (B′ ⊕ E) / {(−f(b), inj b)}.
ShortExactSequence pushout_sequence(const ShortExactSequence& s, const LatticeMap& f);
// E ×_A A′.
ShortExactSequence pullback_sequence(const ShortExactSequence& s, const LatticeMap& g);
struct Pullback {
  ShortExactSequence sequence;  // 0 → B → E ×_A A′ → A′ → 0
  LatticeMap to_mid;            // E ×_A A′ → E
};
Pullback pullback_diagram(const ShortExactSequence& s, const LatticeMap& g);

struct FiberProduct {
  LatticePtr lattice;
  LatticeMap q1;  // F → E1
  LatticeMap q2;  // F → E2
};
// {(x, y) : p1 x = p2 y}.  Throws InputError unless both maps are
// surjective and share a target.
FiberProduct fiber_product(const LatticeMap& p1, const LatticeMap& p2);

bool is_surjective(const IntMatrix& f);
bool is_saturated_injective(const IntMatrix& f);

}  // namespace gammalat

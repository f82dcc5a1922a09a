#pragma once

// Classification predicates and flasque/coflasque resolutions.
//
// The coflasque resolution of the first type is built directly: for each
// subgroup class H, coset lattices ℤ[G/H] are mapped onto Hermite generators
// of M^H until P^K → M^K is onto for every K, which forces H¹(K, ker) = 0.
// The second type glues one ℤ[G/H] onto M per generator of H¹(H, M), so
// every P^H → H¹(H, M) is onto.  Flasque shapes are duals of these.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammalat/cohomology.hpp"
#include "gammalat/extensions.hpp"
#include "gammalat/lattices.hpp"

namespace gammalat {

enum class Verdict { yes, no, unknown };
const char* to_string(Verdict v);

// ---------------------------------------------------------------- predicates

enum class CoflasqueMode {
  all_classes,
  prime_power_classes,  // restriction to Sylow subgroups is injective on H¹
};

struct PredicateVerdict {
  bool holds = true;
  // First failing class in enumeration order, -1 when the predicate holds.
  int failing_class = -1;
  AbelianGroupInvariants witness;  // the nonvanishing group at failing_class
};

// H¹(H, M) = 0 for every checked class.  Parallel over classes.
PredicateVerdict is_coflasque(const LatticePtr& m, CoflasqueMode mode = CoflasqueMode::all_classes);
PredicateVerdict is_coflasque_serial(const LatticePtr& m, CoflasqueMode mode = CoflasqueMode::all_classes);

// is_coflasque(M^∨), cross-checked against Ĥ⁻¹(H, M) = 0 for all H; the
// witness is h1 of the dual.  Throws PropertyViolation if the two disagree.
PredicateVerdict is_flasque(const LatticePtr& m);

struct SearchLimits {
  int norm_bound = 2;             // max-norm of candidate basis vectors
  std::size_t max_rank = 8;       // larger ranks are not searched
  std::size_t max_nodes = 200000; // exact-cover nodes per call
  int multiplicity_bound = 2;     // coset-type multiplicities added to M
  int entry_bound = 4;            // entries of a candidate isomorphism
  std::size_t iso_trials = 20000;
  std::uint64_t seed = 0x5eed;
};

struct PermutationResult {
  Verdict verdict = Verdict::unknown;
  // yes: columns form a ℤ-basis permuted by every ρ(g).
  IntMatrix basis;
  // yes: stabilizer class of each basis orbit, one entry per orbit.
  std::vector<std::size_t> orbit_classes;
  std::string obstruction;  // no
  std::string note;         // unknown: which bound ran out
};

PermutationResult is_permutation(const LatticePtr& m, const SearchLimits& limits = {});
// Columns of `basis` are a ℤ-basis (det ±1) permuted by every generator.
bool is_permuted_basis(const LatticePtr& m, const IntMatrix& basis);
// M rewritten in a permuted basis W: generator matrices W⁻¹ ρ W.
LatticePtr transported(const LatticePtr& m, const IntMatrix& basis);

// Fingerprint entries that rule out every permutation lattice: a nonzero
// h1 or Ĥ⁻¹, or fixed ranks that no combination of coset lattices has.
// Empty when there is none.
std::string permutation_obstruction(const LatticePtr& m);
// Same with fixed ranks ignored: what survives adding permutation summands.
std::string stable_obstruction(const LatticePtr& m);

struct InvertibleVerdict {
  bool holds = false;
  // The coflasque resolution 0 → C → P → M → 0 whose splitting decides.
  // Above rank 8 a nonzero H¹ or Ĥ⁻¹ refutes first and leaves it empty.
  ShortExactSequence resolution;
  std::optional<IntMatrix> section;  // equivariant, surj * section = I
  std::string refutation;
  AbelianGroupInvariants ext_group;  // Ext¹(M, C)
  IntVector class_coordinates;       // of the resolution in ext_group
};
// Throws CapExceeded when the splitting system exceeds max_entries.
InvertibleVerdict is_invertible(const LatticePtr& m, std::size_t max_entries = default_split_cap);

struct StablyPermutationResult {
  Verdict verdict = Verdict::unknown;
  // yes: permutation lattices P₁, P₂ and an equivariant unimodular
  // iso: M ⊕ P₁ → P₂.
  LatticePtr p1;
  LatticePtr p2;
  IntMatrix iso;
  std::string route;
  std::string obstruction;
  std::string note;
};
StablyPermutationResult is_stably_permutation(const LatticePtr& m, const SearchLimits& limits = {});
bool verify_stable_witness(const LatticePtr& m, const StablyPermutationResult& r);

// ---------------------------------------------------------------- resolutions

enum class ResolutionKind { coflasque, flasque };
const char* to_string(ResolutionKind k);

// Order in which subgroup classes contribute generators to the coflasque
// resolution of the first type.  The two pruned orders only add a generator
// of M^H when it is missing from the image of P^H.
enum class GeneratorStrategy { descending, ascending, full };
const char* to_string(GeneratorStrategy s);

struct ResolutionOptions {
  GeneratorStrategy strategy = GeneratorStrategy::descending;
  bool verify = true;
};

struct ResolutionCertificate {
  ShortExactSequence sequence;
  ResolutionKind kind = ResolutionKind::coflasque;
  int type = 1;
  LatticePtr permutation_term;  // P, acting by permutation matrices on its basis
  // Stabilizer class of each basis orbit of P, in basis order.
  std::vector<std::size_t> permutation_summands;
  LatticePtr designated_term;  // C or F
  // h1 of C (coflasque) or of F^∨ (flasque) for every subgroup class.
  std::vector<AbelianGroupInvariants> evidence;
  bool verified = false;
  std::string failure;
};

// 0 → C → P → M → 0 (coflasque, 1), 0 → M → C → P → 0 (coflasque, 2),
// 0 → M → P → F → 0 (flasque, 1), 0 → P → F → M → 0 (flasque, 2).
ResolutionCertificate build_resolution(const LatticePtr& m, ResolutionKind kind, int type,
                                       const ResolutionOptions& options = {});
// Re-derives exactness, the permutation action and the predicate evidence.
bool verify_certificate(ResolutionCertificate& c);

// 0 → A → B → C → 0 becomes 0 → C^∨ → B^∨ → A^∨ → 0.
ShortExactSequence dual_sequence(const ShortExactSequence& s);

struct FlasqueInvariant {
  LatticePtr flasque;
  CohFingerprint fingerprint;
  ResolutionCertificate resolution;
};
FlasqueInvariant flasque_invariant(const LatticePtr& m, const ResolutionOptions& options = {});

// --------------------------------------------------------------- versality

struct Factorization {
  std::optional<LatticeMap> map;
  std::string obstruction;
  bool found() const { return map.has_value(); }
};

// First kind.  Coflasque 0 → C → P -α→ M → 0 and ψ: P′ → M give ψ̃: P′ → P
// with α∘ψ̃ = ψ.  Flasque 0 → M -β→ P → F → 0 and ψ: M → P′ give
// ψ̃: P → P′ with ψ̃∘β = ψ.  With check_hypothesis, throws InputError unless
// P′ is invertible.
Factorization versal_factorization(const ResolutionCertificate& r, const LatticeMap& psi,
                                   bool check_hypothesis = true);

// Second kind.  Coflasque 0 → M -α→ C → P → 0 and 0 → M -γ→ N → Q → 0
// give φ: N → C with φ∘γ = α.  Flasque 0 → P → F -α→ M → 0 and
// 0 → Q → N -γ→ M → 0 give φ: F → N with γ∘φ = α.  The map is read off an
// explicit isomorphism N ≅ Q ⊕_P C.  With check_hypothesis, throws
// InputError unless Q is invertible.
Factorization versal_factorization(const ResolutionCertificate& r, const ShortExactSequence& given,
                                   bool check_hypothesis = true);

// ----------------------------------------------------- crossed resolutions

struct CrossedCheck {
  bool consistent = false;
  ResolutionCertificate first;
  ResolutionCertificate second;
  CohFingerprint left;   // fingerprint(P₁ ⊕ C₂)
  CohFingerprint right;  // fingerprint(P₂ ⊕ C₁)
};
// Two coflasque resolutions of the given type built with different
// strategies; P₁ ⊕ C₂ and P₂ ⊕ C₁ must be isomorphic, so their
// fingerprints must agree.
CrossedCheck crossed_resolution_check(const LatticePtr& m, int type = 1,
                                      GeneratorStrategy a = GeneratorStrategy::descending,
                                      GeneratorStrategy b = GeneratorStrategy::ascending);

}  // namespace gammalat

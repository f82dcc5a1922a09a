#pragma once

// Tori through their character lattices.  Every verdict about T is a
// verdict about T̂ = Hom(T, 𝔾_m) read through the anti-equivalence between
// tori and lattices.

#include <optional>
#include <string>
#include <vector>

#include "gammalat/cohomology.hpp"
#include "gammalat/resolutions.hpp"

namespace gammalat {

struct Torus {
  LatticePtr character_lattice;
  std::string label;
};

struct TorusFlags {
  bool quasi_trivial = false;  // T̂ has a permuted basis (search said yes)
  bool coflasque = false;
  bool flasque = false;
  bool special = false;        // T̂ invertible
};
TorusFlags classify_torus(const Torus& t, const SearchLimits& limits = {});

struct RetractVerdict {
  bool holds = false;
  FlasqueInvariant invariant;  // 0 → T̂ → P → F̂ → 0
  InvertibleVerdict splitting; // of F̂
};
// T is retract rational iff F̂ is invertible.
RetractVerdict retract_rational(const Torus& t);

// T is stably rational iff F̂ is stably permutation; semi-decided.
StablyPermutationResult stably_rational_partial(const Torus& t, const SearchLimits& limits = {});

struct ZheVerdict {
  bool trivial = false;
  bool route_a = false;  // F̂ from the flasque resolution of the first type is invertible
  bool route_b = false;  // Ĉ from the coflasque resolution of the second type is invertible
  std::string evidence_a;
  std::string evidence_b;
};
// Throws PropertyViolation when the routes disagree.
ZheVerdict zhe_trivial(const Torus& t);

enum class LocalsChoice { cyclic, all, listed };

struct ShaResult {
  int degree = 1;
  AbelianGroupInvariants structure;
  std::vector<IntVector> generators;  // compact cocycles on the whole group
  std::vector<std::size_t> locals;    // class index of each local subgroup
  // "ω-kernel (upper bound)" for the cyclic default, "realized" when the
  // caller names the decomposition subgroups.
  std::string label;
};
// Kernel of H^degree(G, T̂) → ∏ H^degree(D, T̂) over the local subgroups.
// `listed` requires explicit subgroups; they must lie in T̂'s group.
ShaResult sha_kernel(const Torus& t, int degree, LocalsChoice choice = LocalsChoice::cyclic,
                     const std::vector<Subgroup>& listed = {}, const CohomologyLimits& limits = {});

enum class FieldModel { number_field, local_nonarchimedean, finite, cohomological_dim_le_1, general };
const char* to_string(FieldModel m);
// Throws InputError on an unknown name.
FieldModel parse_field_model(const std::string& s);

struct TorusReport {
  std::string label;
  FieldModel model = FieldModel::general;
  TorusFlags flags;
  bool retract_rational = false;
  Verdict stably_rational = Verdict::unknown;
  bool zhe_trivial = false;
  // Invariant factors of Ж(k, T); set for the number-field model and the
  // models where it vanishes outright.
  std::optional<AbelianGroupInvariants> zhe_group;
  std::optional<ShaResult> sha1;
  std::optional<ShaResult> sha2;  // empty when the degree-2 cap is exceeded
  std::vector<std::string> provenance;
};

struct TorusOptions {
  SearchLimits search;
  CohomologyLimits cohomology;
  LocalsChoice locals = LocalsChoice::cyclic;
  std::vector<Subgroup> listed;
};
// Throws CapExceeded for the number-field model when degree 2 is over the
// cap; other models record the skip in provenance.
TorusReport zhe_report(const Torus& t, FieldModel model, const TorusOptions& options = {});

}  // namespace gammalat

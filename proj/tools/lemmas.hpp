#pragma once

// The lemma suite behind `verify`: each lemma is checked on instances drawn
// from one workspace, deterministically from a seed.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gammalat/lattices.hpp"

namespace gammalat::cli {

struct LemmaOptions {
  std::uint64_t seed = 20240607;
  std::size_t versality_instances = 24;
  std::size_t baer_instances = 12;
  std::size_t baer_max_group = 8;
  std::size_t baer_max_rank = 3;
  std::size_t versality_max_rank = 6;  // of M
  std::size_t versality_max_invertible_rank = 12;  // of P′ and Q
};

struct LemmaResult {
  std::string lemma;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_notes;  // at most a few
  bool passed() const { return failures == 0; }
};

using NamedLattices = std::map<std::string, LatticePtr>;

// h1(H, ℤ[G/K]) = 0 for all classes H, K.
LemmaResult shapiro_lemma(const GroupPtr& g);
// Ĥ⁻¹(H, M) ≅ H¹(H, M^∨) for every class, and flasque = coflasque of dual.
LemmaResult duality_lemma(const NamedLattices& lattices);
// Factorizations through resolutions of both kinds and both types with
// invertible P′ or Q built from coset lattices and their disguises.
LemmaResult versality_lemma(const GroupPtr& g, const NamedLattices& lattices, const LemmaOptions& o);
// Cocycle and diagram Baer sums agree; c ⊞ 0 = c; order-2 generators double to 0.
LemmaResult baer_lemma(const GroupPtr& g, const NamedLattices& lattices, const LemmaOptions& o);
// P₁ ⊕ C₂ and P₂ ⊕ C₁ share a fingerprint, for both types.
LemmaResult crossed_lemma(const NamedLattices& lattices);

std::vector<LemmaResult> run_lemma_suite(const GroupPtr& g, const NamedLattices& lattices,
                                         const LemmaOptions& o = {});

// Shared with tests and the corpus generator.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps);
LatticePtr conjugate_lattice(const LatticePtr& m, const IntMatrix& u, const std::string& name = "");

}  // namespace gammalat::cli
